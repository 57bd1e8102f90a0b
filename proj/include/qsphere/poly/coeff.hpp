#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "qsphere/errors.hpp"

namespace qsphere::poly {

using Integer = mpz_class;

/// Residues modulo a word-sized prime. Used to cross-check integer results.
template <std::uint64_t P>
class ModP {
    static_assert(P > 1 && P < (std::uint64_t{1} << 32), "modulus must fit in 32 bits");

public:
    static constexpr std::uint64_t modulus = P;

    constexpr ModP() = default;
    constexpr ModP(std::int64_t v)  // NOLINT(google-explicit-constructor)
        : v_(static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(P)) + static_cast<std::int64_t>(P)) %
                                        static_cast<std::int64_t>(P))) {}

    static ModP from_integer(const Integer& z) {
        Integer r = z % static_cast<unsigned long>(P);
        if (r < 0) r += static_cast<unsigned long>(P);
        ModP out;
        out.v_ = r.get_ui();
        return out;
    }

    constexpr std::uint64_t value() const { return v_; }

    friend constexpr ModP operator+(ModP a, ModP b) { return raw((a.v_ + b.v_) % P); }
    friend constexpr ModP operator-(ModP a, ModP b) { return raw((a.v_ + P - b.v_) % P); }
    friend constexpr ModP operator*(ModP a, ModP b) { return raw((a.v_ * b.v_) % P); }
    constexpr ModP operator-() const { return raw((P - v_) % P); }
    ModP& operator+=(ModP b) { return *this = *this + b; }
    ModP& operator-=(ModP b) { return *this = *this - b; }
    ModP& operator*=(ModP b) { return *this = *this * b; }
    friend constexpr bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

    constexpr ModP pow(std::uint64_t e) const {
        ModP base = *this, acc = raw(1 % P);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    constexpr ModP inverse() const { return pow(P - 2); }

    friend std::ostream& operator<<(std::ostream& os, ModP a) { return os << a.v_; }

private:
    static constexpr ModP raw(std::uint64_t v) {
        ModP m;
        m.v_ = v;
        return m;
    }
    std::uint64_t v_ = 0;
};

/// Coefficient-domain hooks used by the polynomial templates.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Integer> {
    static Integer zero() { return 0; }
    static Integer one() { return 1; }
    static bool is_zero(const Integer& c) { return c == 0; }
    static std::optional<Integer> unit_inverse(const Integer& c) {
        if (c == 1 || c == -1) return c;
        return std::nullopt;
    }
    static std::string to_string(const Integer& c) { return c.get_str(); }
    static Integer from_string(const std::string& s) {
        Integer z;
        if (s.empty() || z.set_str(s, 10) != 0) throw InvalidArgument("malformed integer coefficient: '" + s + "'");
        return z;
    }
    static Integer from_integer(const Integer& z) { return z; }
};

template <std::uint64_t P>
struct CoeffTraits<ModP<P>> {
    static ModP<P> zero() { return 0; }
    static ModP<P> one() { return 1; }
    static bool is_zero(const ModP<P>& c) { return c.value() == 0; }
    static std::optional<ModP<P>> unit_inverse(const ModP<P>& c) {
        if (is_zero(c)) return std::nullopt;
        return c.inverse();
    }
    static std::string to_string(const ModP<P>& c) { return std::to_string(c.value()); }
    static ModP<P> from_string(const std::string& s) {
        return ModP<P>::from_integer(CoeffTraits<Integer>::from_string(s));
    }
    static ModP<P> from_integer(const Integer& z) { return ModP<P>::from_integer(z); }
};

}  // namespace qsphere::poly
