#pragma once

#include <string>

#include "qsphere/poly/serialize.hpp"
#include "qsphere/quadric/quadric.hpp"

namespace qsphere::quadric {

/// numerator / (z^a (1+z)^b): a section of an even quadric over D_{z(1+z)}.
///
/// z and 1+z are treated as nonzerodivisors of the quadric ring. Construction cancels
/// a factor of z or 1+z whenever the numerator is literally divisible by it (as a
/// canonical polynomial) and the matching exponent is positive; zero is stored as 0/1.
/// Equality is by cross-multiplication, so it does not depend on how far cancellation got.
class LocalizedElement {
public:
    LocalizedElement() = default;
    explicit LocalizedElement(IntElement numerator, unsigned z_pow = 0, unsigned one_plus_z_pow = 0);

    const IntElement& numerator() const noexcept { return num_; }
    unsigned z_pow() const noexcept { return a_; }
    unsigned one_plus_z_pow() const noexcept { return b_; }
    const RingPtr& ring() const noexcept { return num_.ring(); }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend LocalizedElement operator+(const LocalizedElement& p, const LocalizedElement& q);
    friend LocalizedElement operator-(const LocalizedElement& p, const LocalizedElement& q);
    friend LocalizedElement operator*(const LocalizedElement& p, const LocalizedElement& q);
    LocalizedElement operator-() const;
    LocalizedElement pow(unsigned e) const;

    friend bool operator==(const LocalizedElement& p, const LocalizedElement& q);

    std::string to_string() const;

private:
    void cancel();

    IntElement num_;
    unsigned a_ = 0;
    unsigned b_ = 0;
};

/// (1 + z)^k in the given even quadric ring.
IntElement one_plus_z_power(const RingPtr& ring, unsigned k);

/// Exact quotient by (1+z) in the polynomial ring, if the division is exact.
std::optional<IntPoly> divide_by_one_plus_z(const poly::IntRing& ring, const IntPoly& p);

/// { "num": polynomial, "z_pow": a, "one_plus_z_pow": b }
poly::Json to_json(const LocalizedElement& e);
LocalizedElement localized_from_json(const poly::IntRing& ring, const poly::Json& j);

}  // namespace qsphere::quadric
