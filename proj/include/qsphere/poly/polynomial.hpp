#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qsphere/poly/coeff.hpp"
#include "qsphere/poly/monomial.hpp"

namespace qsphere::poly {

template <class C>
struct Term {
    C coef;
    Monomial mono;

    friend bool operator==(const Term& a, const Term& b) { return a.coef == b.coef && a.mono == b.mono; }
};

/// Sparse polynomial in canonical form: nonzero coefficients, strictly descending
/// monomials in the owning ring's order. Only `Ring` builds non-trivial values, so
/// structural equality is ring equality.
template <class C>
class Polynomial {
public:
    Polynomial() = default;

    const std::vector<Term<C>>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const Term<C>& leading() const { return terms_.front(); }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    /// True when the polynomial is a constant (possibly zero).
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    template <class>
    friend class Ring;

    explicit Polynomial(std::vector<Term<C>> canonical_terms) : terms_(std::move(canonical_terms)) {}

    std::vector<Term<C>> terms_;
};

}  // namespace qsphere::poly
