#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qsphere/errors.hpp"
#include "qsphere/poly/coeff.hpp"
#include "qsphere/poly/monomial.hpp"
#include "qsphere/poly/polynomial.hpp"

namespace qsphere::poly {

template <class C>
class Element;

/// A presented ring: Z[vars] (or F_p[vars]) modulo an optional principal relation.
///
/// Rings are immutable and always held through `Ring::Ptr`. The relation's leading
/// monomial under the ring order is the reduction target; its leading coefficient
/// must be a unit of the coefficient domain so that normal forms exist without
/// fractions. A single generator is a Groebner basis of the ideal it generates, so
/// the normal form is the canonical representative of a residue class.
template <class C>
class Ring : public std::enable_shared_from_this<Ring<C>> {
    struct Private {};

public:
    using Ptr = std::shared_ptr<const Ring>;
    using Traits = CoeffTraits<C>;
    using Poly = Polynomial<C>;
    using TermMap = std::map<Monomial, C, Descending>;

    Ring(Private, std::vector<std::string> names, MonomialOrder order)
        : names_(std::move(names)), order_(std::move(order)) {}

    /// Polynomial ring on `names`. `precedence` lists variable indices from most to
    /// least significant; empty means declared order.
    static Ptr free(std::vector<std::string> names, std::vector<std::size_t> precedence = {}) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names) {
            if (n.empty()) throw InvalidArgument("empty variable name");
            if (!seen.insert(n).second) throw InvalidArgument("duplicate variable name: " + n);
        }
        if (precedence.empty()) {
            precedence.resize(names.size());
            for (std::size_t i = 0; i < names.size(); ++i) precedence[i] = i;
        }
        auto sorted = precedence;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i || sorted.size() != names.size())
                throw InvalidArgument("precedence must be a permutation of the variable indices");
        return std::make_shared<Ring>(Private{}, std::move(names), MonomialOrder(std::move(precedence)));
    }

    /// `base` modulo the principal ideal generated by `relation` (a polynomial of `base`).
    static Ptr quotient(const Ptr& base, const Poly& relation) {
        if (base->relation_) throw InvalidArgument("base ring already carries a relation");
        if (relation.is_zero()) return base;
        const auto& lead = relation.leading();
        auto inv = Traits::unit_inverse(lead.coef);
        if (!inv) throw InvalidArgument("relation's leading coefficient is not a unit");
        if (lead.mono.is_one()) throw InvalidArgument("relation generates the unit ideal");
        auto ring = std::make_shared<Ring>(Private{}, base->names_, base->order_);
        ring->relation_ = relation;
        ring->lead_inverse_ = *inv;
        return ring;
    }

    std::size_t nvars() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const MonomialOrder& order() const noexcept { return order_; }
    const std::optional<Poly>& relation() const noexcept { return relation_; }

    /// Leading monomial of the relation, if any.
    std::optional<Monomial> relation_lead() const {
        if (!relation_) return std::nullopt;
        return relation_->leading().mono;
    }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require_index(std::string_view name) const {
        if (auto i = index_of(name)) return *i;
        throw UnknownVariable(std::string(name));
    }

    /// Same variables and order, no relation.
    Ptr ambient() const {
        if (!relation_) return this->shared_from_this();
        return std::make_shared<Ring>(Private{}, names_, order_);
    }

    bool compatible(const Ring& other) const {
        return this == &other ||
               (names_ == other.names_ && order_ == other.order_ && relation_ == other.relation_);
    }

    // ---- canonical construction (no reduction) ----

    Poly canonical(std::vector<Term<C>> terms) const {
        TermMap m = empty_map();
        for (auto& t : terms) {
            check_arity(t.mono);
            accumulate(m, std::move(t.mono), t.coef);
        }
        return from_map(std::move(m));
    }

    Poly constant_poly(const C& c) const {
        if (Traits::is_zero(c)) return Poly{};
        return Poly({Term<C>{c, Monomial(nvars())}});
    }

    Poly variable_poly(std::size_t index, Monomial::Exponent power = 1) const {
        if (index >= nvars()) throw InvalidArgument("variable index out of range");
        return Poly({Term<C>{Traits::one(), Monomial::variable(nvars(), index, power)}});
    }

    Poly add(const Poly& a, const Poly& b) const { return merge(a, b, false); }
    Poly sub(const Poly& a, const Poly& b) const { return merge(a, b, true); }

    Poly neg(const Poly& a) const {
        auto terms = a.terms();
        for (auto& t : terms) t.coef = -t.coef;
        return Poly(std::move(terms));
    }

    Poly scale(const Poly& a, const C& c) const {
        if (Traits::is_zero(c)) return Poly{};
        std::vector<Term<C>> terms;
        terms.reserve(a.size());
        for (const auto& t : a.terms()) {
            C v = t.coef * c;
            if (!Traits::is_zero(v)) terms.push_back({std::move(v), t.mono});
        }
        return Poly(std::move(terms));
    }

    /// Product in the ambient polynomial ring (not reduced).
    Poly mul_free(const Poly& a, const Poly& b) const {
        TermMap m = product_map(a, b);
        return from_map(std::move(m));
    }

    /// Normal form modulo the relation.
    Poly reduce(const Poly& p) const {
        if (!relation_ || p.is_zero()) return p;
        const Monomial& lead = relation_->leading().mono;
        bool any = false;
        for (const auto& t : p.terms())
            if (lead.divides(t.mono)) {
                any = true;
                break;
            }
        if (!any) return p;
        TermMap m = empty_map();
        for (const auto& t : p.terms()) m.emplace(t.mono, t.coef);
        reduce_map(m);
        return from_map(std::move(m));
    }

    bool is_normal(const Poly& p) const {
        if (!relation_) return true;
        const Monomial& lead = relation_->leading().mono;
        return std::none_of(p.terms().begin(), p.terms().end(),
                            [&](const Term<C>& t) { return lead.divides(t.mono); });
    }

    Poly mul(const Poly& a, const Poly& b) const {
        TermMap m = product_map(a, b);
        reduce_map(m);
        return from_map(std::move(m));
    }

    // ---- elements ----

    Element<C> element(const Poly& p) const;
    Element<C> constant(const C& c) const { return element(constant_poly(c)); }
    Element<C> constant(long c) const { return constant(C(c)); }
    Element<C> zero() const { return constant(Traits::zero()); }
    Element<C> one() const { return constant(Traits::one()); }
    Element<C> var(std::size_t index) const { return element(variable_poly(index)); }
    Element<C> var(std::string_view name) const { return var(require_index(name)); }

    /// Parses sums of products of integers, variable names, `^` powers and parentheses,
    /// e.g. "x1*y1 + x2*y2 - z*(1+z)". The result is in normal form.
    Element<C> parse(std::string_view text) const;

    std::string format(const Poly& p) const {
        if (p.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : p.terms()) {
            std::string c = Traits::to_string(t.coef);
            bool negative = !c.empty() && c[0] == '-';
            if (negative) c.erase(0, 1);
            if (first)
                os << (negative ? "-" : "");
            else
                os << (negative ? " - " : " + ");
            first = false;
            std::string mono = format_monomial(t.mono);
            if (mono.empty())
                os << c;
            else if (c == "1")
                os << mono;
            else
                os << c << '*' << mono;
        }
        return os.str();
    }

    std::string format_monomial(const Monomial& m) const {
        std::string out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!out.empty()) out += '*';
            out += names_[i];
            if (m[i] > 1) out += '^' + std::to_string(m[i]);
        }
        return out;
    }

    /// Evaluate the polynomial after substituting values for a subset of variables.
    Poly substitute_constants(const Poly& p, const std::vector<std::pair<std::size_t, C>>& values) const {
        std::vector<Term<C>> terms;
        for (const auto& t : p.terms()) {
            C coef = t.coef;
            std::vector<Monomial::Exponent> exps(t.mono.exponents().begin(), t.mono.exponents().end());
            for (const auto& [idx, val] : values) {
                if (exps.at(idx) == 0) continue;
                C power = Traits::one();
                for (Monomial::Exponent k = 0; k < exps[idx]; ++k) power = power * val;
                coef = coef * power;
                exps[idx] = 0;
            }
            terms.push_back({std::move(coef), Monomial(std::move(exps))});
        }
        return canonical(std::move(terms));
    }

private:
    TermMap empty_map() const { return TermMap(Descending{&order_}); }

    void check_arity(const Monomial& m) const {
        if (m.size() != nvars())
            throw UnknownVariable("monomial has " + std::to_string(m.size()) + " slots, ring has " +
                                  std::to_string(nvars()) + " variables");
    }

    static void accumulate(TermMap& m, Monomial mono, const C& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = m.try_emplace(std::move(mono), c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) m.erase(it);
        }
    }

    Poly from_map(TermMap&& m) const {
        std::vector<Term<C>> terms;
        terms.reserve(m.size());
        for (auto& [mono, coef] : m)
            if (!Traits::is_zero(coef)) terms.push_back({coef, mono});
        return Poly(std::move(terms));
    }

    TermMap product_map(const Poly& a, const Poly& b) const {
        TermMap m = empty_map();
        for (const auto& s : a.terms())
            for (const auto& t : b.terms()) accumulate(m, s.mono * t.mono, C(s.coef * t.coef));
        return m;
    }

    // Walks terms from largest to smallest; every rewrite only introduces smaller
    // monomials, so a single descending sweep reaches the normal form.
    void reduce_map(TermMap& m) const {
        if (!relation_) return;
        const auto& rel = relation_->terms();
        const Monomial& lead = rel.front().mono;
        auto it = m.begin();
        while (it != m.end()) {
            if (!lead.divides(it->first)) {
                ++it;
                continue;
            }
            Monomial key = it->first;
            Monomial q = key / lead;
            C factor = it->second * lead_inverse_;
            m.erase(it);
            for (std::size_t k = 1; k < rel.size(); ++k) accumulate(m, q * rel[k].mono, C(-(factor * rel[k].coef)));
            it = m.upper_bound(key);
        }
    }

    Poly merge(const Poly& a, const Poly& b, bool subtract) const {
        std::vector<Term<C>> out;
        out.reserve(a.size() + b.size());
        auto i = a.terms().begin(), ie = a.terms().end();
        auto j = b.terms().begin(), je = b.terms().end();
        while (i != ie || j != je) {
            int cmp;
            if (i == ie)
                cmp = -1;
            else if (j == je)
                cmp = 1;
            else {
                auto o = order_.compare(i->mono, j->mono);
                cmp = o > 0 ? 1 : (o < 0 ? -1 : 0);
            }
            if (cmp > 0) {
                out.push_back(*i++);
            } else if (cmp < 0) {
                out.push_back(subtract ? Term<C>{C(-j->coef), j->mono} : *j);
                ++j;
            } else {
                C c = subtract ? C(i->coef - j->coef) : C(i->coef + j->coef);
                if (!Traits::is_zero(c)) out.push_back({std::move(c), i->mono});
                ++i;
                ++j;
            }
        }
        return Poly(std::move(out));
    }

    std::vector<std::string> names_;
    MonomialOrder order_;
    std::optional<Poly> relation_;
    C lead_inverse_ = Traits::one();
};

/// A residue class of a ring, stored as its normal form.
template <class C>
class Element {
public:
    using RingPtr = typename Ring<C>::Ptr;
    using Poly = Polynomial<C>;

    Element() = default;

    const RingPtr& ring() const noexcept { return ring_; }
    const Poly& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.is_zero(); }
    std::string to_string() const { return ring_ ? ring_->format(value_) : "0"; }

    friend Element operator+(const Element& a, const Element& b) {
        a.check(b);
        return Element(a.ring_, a.ring_->add(a.value_, b.value_));
    }
    friend Element operator-(const Element& a, const Element& b) {
        a.check(b);
        return Element(a.ring_, a.ring_->sub(a.value_, b.value_));
    }
    friend Element operator*(const Element& a, const Element& b) {
        a.check(b);
        return Element(a.ring_, a.ring_->mul(a.value_, b.value_));
    }
    Element operator-() const { return Element(ring_, ring_->neg(value_)); }
    Element& operator+=(const Element& b) { return *this = *this + b; }
    Element& operator-=(const Element& b) { return *this = *this - b; }
    Element& operator*=(const Element& b) { return *this = *this * b; }

    Element pow(unsigned e) const {
        Element acc = ring_->one(), base = *this;
        while (e) {
            if (e & 1u) acc *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return acc;
    }

    /// Structural equality of normal forms; throws on incompatible rings.
    friend bool operator==(const Element& a, const Element& b) {
        a.check(b);
        return a.value_ == b.value_;
    }

    bool same_ring(const Ring<C>& r) const { return ring_ && ring_->compatible(r); }

private:
    friend class Ring<C>;

    Element(RingPtr ring, Poly reduced) : ring_(std::move(ring)), value_(std::move(reduced)) {}

    void check(const Element& b) const {
        if (!ring_ || !b.ring_ || !ring_->compatible(*b.ring_))
            throw ContextMismatch("operands live in different rings");
    }

    RingPtr ring_;
    Poly value_;
};

template <class C>
Element<C> Ring<C>::element(const Poly& p) const {
    for (const auto& t : p.terms()) check_arity(t.mono);
    return Element<C>(this->shared_from_this(), reduce(p));
}

namespace detail {

template <class C>
class ExprParser {
public:
    ExprParser(const Ring<C>& ring, std::string_view s) : ring_(ring), s_(s) {}

    Element<C> run() {
        Element<C> v = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Element<C> expr() {
        Element<C> acc = eat('-') ? -term() : (eat('+'), term());
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Element<C> term() {
        Element<C> acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    Element<C> factor() {
        if (eat('-')) return -factor();
        Element<C> base = primary();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            unsigned long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                e = e * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
            if (start == pos_) throw ParseError("expected exponent", pos_);
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Element<C> primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Element<C> v = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return ring_.constant(CoeffTraits<C>::from_string(std::string(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return ring_.var(s_.substr(start, pos_ - start));
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    const Ring<C>& ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <class C>
Element<C> Ring<C>::parse(std::string_view text) const {
    return detail::ExprParser<C>(*this, text).run();
}

using IntRing = Ring<Integer>;
using IntPoly = Polynomial<Integer>;
using IntElement = Element<Integer>;
using RingPtr = IntRing::Ptr;

}  // namespace qsphere::poly
