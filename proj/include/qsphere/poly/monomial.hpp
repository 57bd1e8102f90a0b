#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "qsphere/errors.hpp"

namespace qsphere::poly {

/// Exponent vector with one slot per ring variable, in the ring's declared variable order.
class Monomial {
public:
    using Exponent = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
        degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1) {
        std::vector<Exponent> e(nvars, 0);
        e.at(index) = power;
        return Monomial(std::move(e));
    }

    std::size_t size() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    std::span<const Exponent> exponents() const noexcept { return exps_; }
    std::uint64_t degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    /// Same monomial with the exponent at `index` replaced.
    Monomial with(std::size_t index, Exponent e) const {
        auto exps = exps_;
        exps.at(index) = e;
        return Monomial(std::move(exps));
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        std::vector<Exponent> e(a.exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps_[i] + b.exps_[i];
        Monomial m;
        m.exps_ = std::move(e);
        m.degree_ = a.degree_ + b.degree_;
        return m;
    }

    /// Exact quotient; `b` must divide `a`.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        std::vector<Exponent> e(a.exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (b.exps_[i] > a.exps_[i]) throw InvalidArgument("monomial division is not exact");
            e[i] = a.exps_[i] - b.exps_[i];
        }
        Monomial m;
        m.exps_ = std::move(e);
        m.degree_ = a.degree_ - b.degree_;
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

private:
    std::vector<Exponent> exps_;
    std::uint64_t degree_ = 0;
};

/// Graded lexicographic order; ties broken by comparing exponents along `precedence`,
/// most significant variable first.
class MonomialOrder {
public:
    MonomialOrder() = default;
    explicit MonomialOrder(std::vector<std::size_t> precedence) : precedence_(std::move(precedence)) {}

    const std::vector<std::size_t>& precedence() const noexcept { return precedence_; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        for (std::size_t v : precedence_)
            if (auto c = a[v] <=> b[v]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    std::vector<std::size_t> precedence_;
};

/// Strict weak "greater-than" under an order; gives descending containers.
struct Descending {
    const MonomialOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) > 0; }
};

}  // namespace qsphere::poly
