#include "qsphere/quadric/localized.hpp"

#include <algorithm>
#include <map>

namespace qsphere::quadric {

namespace {

std::size_t z_index(const poly::IntRing& ring) { return ring.require_index("z"); }

std::optional<IntPoly> divide_by_z(const poly::IntRing& ring, const IntPoly& p) {
    const std::size_t zi = z_index(ring);
    std::vector<poly::Term<Integer>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        if (t.mono[zi] == 0) return std::nullopt;
        terms.push_back({t.coef, t.mono.with(zi, t.mono[zi] - 1)});
    }
    return ring.canonical(std::move(terms));
}

void check_ring(const LocalizedElement& p, const LocalizedElement& q) {
    if (!p.ring() || !q.ring() || !p.ring()->compatible(*q.ring()))
        throw ContextMismatch("localized elements live in different rings");
}

IntElement scaled(const IntElement& n, unsigned za, unsigned zb) {
    const auto& R = n.ring();
    IntElement out = n;
    if (za) out = out * R->var(z_index(*R)).pow(za);
    if (zb) out = out * one_plus_z_power(R, zb);
    return out;
}

}  // namespace

IntElement one_plus_z_power(const RingPtr& ring, unsigned k) {
    return (ring->one() + ring->var(z_index(*ring))).pow(k);
}

std::optional<IntPoly> divide_by_one_plus_z(const poly::IntRing& ring, const IntPoly& p) {
    const std::size_t zi = z_index(ring);
    // Group by the z-free part of each monomial; each group is a univariate polynomial in z.
    std::map<std::vector<poly::Monomial::Exponent>, std::map<unsigned, Integer>> groups;
    for (const auto& t : p.terms()) {
        std::vector<poly::Monomial::Exponent> key(t.mono.exponents().begin(), t.mono.exponents().end());
        key[zi] = 0;
        groups[key][t.mono[zi]] += t.coef;
    }
    std::vector<poly::Term<Integer>> terms;
    for (auto& [key, coeffs] : groups) {
        const unsigned top = coeffs.rbegin()->first;
        if (top == 0) return std::nullopt;
        // Synthetic division by (z + 1): q_{k-1} = c_k - q_k, remainder c_0 - q_0.
        Integer carry = 0;
        for (unsigned k = top; k >= 1; --k) {
            Integer ck = coeffs.count(k) ? coeffs[k] : Integer(0);
            Integer qk = ck - carry;
            if (qk != 0) {
                auto exps = key;
                exps[zi] = k - 1;
                terms.push_back({qk, poly::Monomial(std::move(exps))});
            }
            carry = qk;
        }
        Integer c0 = coeffs.count(0) ? coeffs[0] : Integer(0);
        if (c0 - carry != 0) return std::nullopt;
    }
    return ring.canonical(std::move(terms));
}

LocalizedElement::LocalizedElement(IntElement numerator, unsigned z_pow, unsigned one_plus_z_pow)
    : num_(std::move(numerator)), a_(z_pow), b_(one_plus_z_pow) {
    if (!num_.ring()) throw InvalidArgument("localized element needs a ring");
    z_index(*num_.ring());
    cancel();
}

void LocalizedElement::cancel() {
    if (num_.is_zero()) {
        a_ = b_ = 0;
        return;
    }
    const auto& R = *num_.ring();
    IntPoly n = num_.value();
    while (a_ > 0) {
        auto q = divide_by_z(R, n);
        if (!q) break;
        n = std::move(*q);
        --a_;
    }
    while (b_ > 0) {
        auto q = divide_by_one_plus_z(R, n);
        if (!q) break;
        n = std::move(*q);
        --b_;
    }
    // Dividing a normal form by a polynomial in z alone keeps it normal.
    num_ = R.element(n);
}

LocalizedElement operator+(const LocalizedElement& p, const LocalizedElement& q) {
    check_ring(p, q);
    const unsigned a = std::max(p.a_, q.a_), b = std::max(p.b_, q.b_);
    return LocalizedElement(scaled(p.num_, a - p.a_, b - p.b_) + scaled(q.num_, a - q.a_, b - q.b_), a, b);
}

LocalizedElement operator-(const LocalizedElement& p, const LocalizedElement& q) { return p + (-q); }

LocalizedElement operator*(const LocalizedElement& p, const LocalizedElement& q) {
    check_ring(p, q);
    return LocalizedElement(p.num_ * q.num_, p.a_ + q.a_, p.b_ + q.b_);
}

LocalizedElement LocalizedElement::operator-() const {
    LocalizedElement out = *this;
    out.num_ = -num_;
    return out;
}

LocalizedElement LocalizedElement::pow(unsigned e) const {
    LocalizedElement acc(num_.ring()->one()), base = *this;
    while (e) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return acc;
}

bool operator==(const LocalizedElement& p, const LocalizedElement& q) {
    check_ring(p, q);
    if (p.a_ == q.a_ && p.b_ == q.b_) return p.num_ == q.num_;
    return scaled(p.num_, q.a_, q.b_) == scaled(q.num_, p.a_, p.b_);
}

std::string LocalizedElement::to_string() const {
    std::string num = num_.to_string();
    if (a_ == 0 && b_ == 0) return num;
    std::string den;
    if (a_) den += a_ == 1 ? "z" : "z^" + std::to_string(a_);
    if (b_) {
        if (!den.empty()) den += "*";
        den += b_ == 1 ? "(1+z)" : "(1+z)^" + std::to_string(b_);
    }
    bool simple = num_.value().size() == 1 && num_.value().leading().coef > 0;
    return (simple ? num : "(" + num + ")") + "/" + (a_ && b_ ? "(" + den + ")" : den);
}

poly::Json to_json(const LocalizedElement& e) {
    return {{"num", poly::to_json(e.numerator())}, {"z_pow", e.z_pow()}, {"one_plus_z_pow", e.one_plus_z_pow()}};
}

LocalizedElement localized_from_json(const poly::IntRing& ring, const poly::Json& j) {
    try {
        auto num = poly::element_from_json(ring, j.at("num"));
        auto a = j.at("z_pow").get<long long>();
        auto b = j.at("one_plus_z_pow").get<long long>();
        if (a < 0 || b < 0) throw InvalidArgument("denominator exponents must be non-negative");
        return LocalizedElement(num, static_cast<unsigned>(a), static_cast<unsigned>(b));
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed localized element JSON: ") + ex.what());
    }
}

}  // namespace qsphere::quadric
