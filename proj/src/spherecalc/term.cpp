#include "qsphere/spherecalc/term.hpp"

#include <cctype>
#include <charconv>

#include "qsphere/errors.hpp"

namespace qsphere::spherecalc {

struct Term::Node {
    Kind kind;
    std::vector<Term> kids;
    Index index;
    std::string name;
};

namespace {

const Term& shared_point() {
    static const Term t = Term::point();
    return t;
}

}  // namespace

Term::Term() : Term(shared_point()) {}

Term Term::point() { return Term(std::make_shared<const Node>(Node{Kind::point, {}, {}, {}})); }
Term Term::s0() { return Term(std::make_shared<const Node>(Node{Kind::s0, {}, {}, {}})); }
Term Term::s1() { return Term(std::make_shared<const Node>(Node{Kind::s1, {}, {}, {}})); }
Term Term::gm() { return Term(std::make_shared<const Node>(Node{Kind::gm, {}, {}, {}})); }
Term Term::p1() { return Term(std::make_shared<const Node>(Node{Kind::p1, {}, {}, {}})); }
Term Term::smash(Term a, Term b) {
    return Term(std::make_shared<const Node>(Node{Kind::smash, {std::move(a), std::move(b)}, {}, {}}));
}
Term Term::plus(Term t) { return Term(std::make_shared<const Node>(Node{Kind::plus, {std::move(t)}, {}, {}})); }
Term Term::susp(Term t) { return Term(std::make_shared<const Node>(Node{Kind::susp, {std::move(t)}, {}, {}})); }
Term Term::quad_odd(Index m) { return Term(std::make_shared<const Node>(Node{Kind::quad_odd, {}, std::move(m), {}})); }
Term Term::quad_even(Index m) { return Term(std::make_shared<const Node>(Node{Kind::quad_even, {}, std::move(m), {}})); }
Term Term::x_even(Index m) { return Term(std::make_shared<const Node>(Node{Kind::x_even, {}, std::move(m), {}})); }
Term Term::cofiber(Term a, Term b) {
    return Term(std::make_shared<const Node>(Node{Kind::cofiber, {std::move(a), std::move(b)}, {}, {}}));
}
Term Term::meta(std::string name) { return Term(std::make_shared<const Node>(Node{Kind::meta, {}, {}, std::move(name)})); }
Term Term::power(Term t, Index k) {
    return Term(std::make_shared<const Node>(Node{Kind::power, {std::move(t)}, std::move(k), {}}));
}

Term Term::smash_power(const Term& t, long k) {
    if (k < 0) throw InvalidArgument("negative smash power");
    if (k == 0) return s0();
    Term acc = t;
    for (long i = 1; i < k; ++i) acc = smash(acc, t);
    return acc;
}

Kind Term::kind() const { return node_->kind; }
const std::vector<Term>& Term::children() const { return node_->kids; }
const Index& Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }

bool Term::is_atom() const {
    switch (kind()) {
        case Kind::point:
        case Kind::s0:
        case Kind::s1:
        case Kind::gm:
        case Kind::p1: return true;
        case Kind::quad_odd:
        case Kind::quad_even:
        case Kind::x_even: return index().concrete();
        default: return false;
    }
}

const Term& Term::at(const Path& p) const {
    const Term* t = this;
    for (std::size_t k : p) {
        if (k >= t->children().size()) throw InvalidArgument("term position out of range");
        t = &t->children()[k];
    }
    return *t;
}

Term Term::replace(const Path& p, Term sub) const {
    auto go = [&](auto& self, const Term& t, std::size_t depth) -> Term {
        if (depth == p.size()) return sub;
        if (p[depth] >= t.children().size()) throw InvalidArgument("term position out of range");
        Node node = *t.node_;
        node.kids[p[depth]] = self(self, t.children()[p[depth]], depth + 1);
        return Term(std::make_shared<const Node>(std::move(node)));
    };
    return go(go, *this, 0);
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || !(a.index() == b.index()) || a.name() != b.name()) return false;
    if (a.children().size() != b.children().size()) return false;
    for (std::size_t k = 0; k < a.children().size(); ++k)
        if (!(a.children()[k] == b.children()[k])) return false;
    return true;
}

// ---- printing ----

namespace {

std::string index_string(const Index& i) {
    if (i.concrete()) return std::to_string(i.offset);
    if (i.offset == 0) return i.var;
    return i.var + (i.offset > 0 ? "+" : "-") + std::to_string(i.offset > 0 ? i.offset : -i.offset);
}

// Base and exponent when t is a left-nested chain b /\ b /\ ... /\ b of a non-smash b.
std::optional<std::pair<Term, long>> power_chain(const Term& t) {
    if (t.kind() != Kind::smash) return std::nullopt;
    long k = 1;
    const Term* cur = &t;
    const Term& base = t.children()[1];
    if (base.kind() == Kind::smash) return std::nullopt;
    while (cur->kind() == Kind::smash) {
        if (!(cur->children()[1] == base)) return std::nullopt;
        ++k;
        cur = &cur->children()[0];
    }
    if (!(*cur == base)) return std::nullopt;
    return std::make_pair(base, k);
}

std::string print(const Term& t);

std::string print_factor(const Term& t) {
    // A power chain prints as base^k; ^ binds tighter than /\, so no parentheses.
    if (auto pc = power_chain(t)) return print(pc->first) + "^" + std::to_string(pc->second);
    return print(t);
}

std::string print(const Term& t) {
    switch (t.kind()) {
        case Kind::point: return "pt";
        case Kind::s0: return "S0";
        case Kind::s1: return "S1";
        case Kind::gm: return "Gm";
        case Kind::p1: return "P1";
        case Kind::quad_odd: return "Qodd(" + index_string(t.index()) + ")";
        case Kind::quad_even: return "Qeven(" + index_string(t.index()) + ")";
        case Kind::x_even: return "X(" + index_string(t.index()) + ")";
        case Kind::plus: return "Plus(" + print(t.children()[0]) + ")";
        case Kind::susp: return "Susp(" + print(t.children()[0]) + ")";
        case Kind::cofiber: return "Cofib(" + print(t.children()[0]) + ", " + print(t.children()[1]) + ")";
        case Kind::meta: return t.name();
        case Kind::power: {
            const Term& b = t.children()[0];
            std::string base = b.kind() == Kind::smash ? "(" + print(b) + ")" : print(b);
            return base + "^" + index_string(t.index());
        }
        case Kind::smash: {
            if (auto pc = power_chain(t)) return print_factor(t);
            const Term& l = t.children()[0];
            const Term& r = t.children()[1];
            std::string right = print_factor(r);
            if (r.kind() == Kind::smash && !power_chain(r)) right = "(" + right + ")";
            return print_factor(l) + " /\\ " + right;
        }
    }
    return "?";
}

}  // namespace

std::string Term::to_string() const { return print(*this); }

// ---- parsing ----

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Term run() {
        Term t = term();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
    }

    long integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a non-negative integer");
        long v = 0;
        auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc{} || v > 100000) {
            pos_ = start;
            fail("integer out of range");
        }
        return v;
    }

    Term term() {
        Term acc = power();
        while (eat("/\\")) acc = Term::smash(acc, power());
        return acc;
    }

    Term power() {
        Term base = primary();
        if (eat("^")) return Term::smash_power(base, integer());
        return base;
    }

    Term indexed(Term (*make)(long), long min) {
        expect("(");
        const std::size_t at = pos_;
        long v = integer();
        if (v < min) {
            pos_ = at;
            fail("index must be >= " + std::to_string(min));
        }
        expect(")");
        return make(v);
    }

    Term primary() {
        skip();
        if (eat("(")) {
            Term t = term();
            expect(")");
            return t;
        }
        // Longer keywords first so that "S0"/"S1" do not shadow "Susp".
        if (eat("Qodd")) return indexed([](long m) { return Term::quad_odd(m); }, 1);
        if (eat("Qeven")) return indexed([](long m) { return Term::quad_even(m); }, 0);
        if (eat("Plus")) return unary(Term::plus);
        if (eat("Susp")) return unary(Term::susp);
        if (eat("Cofib")) {
            expect("(");
            Term a = term();
            expect(",");
            Term b = term();
            expect(")");
            return Term::cofiber(a, b);
        }
        if (eat("pt")) return Term::point();
        if (eat("S0")) return Term::s0();
        if (eat("S1")) return Term::s1();
        if (eat("Gm")) return Term::gm();
        if (eat("P1")) return Term::p1();
        if (eat("X")) return indexed([](long m) { return Term::x_even(m); }, 1);
        fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
    }

    Term unary(Term (*make)(Term)) {
        expect("(");
        Term t = term();
        expect(")");
        return make(t);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view s) { return Parser(s).run(); }

// ---- bidegree ----

std::string Bidegree::to_string() const {
    if (contractible) return "contractible";
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Bidegree bidegree(const Term& t) {
    auto concrete = [&](const Term& u) {
        if (!u.index().concrete()) throw NonSphereTerm("symbolic index in " + u.to_string());
        return static_cast<int>(u.index().offset);
    };
    switch (t.kind()) {
        case Kind::point: return {0, 0, true};
        case Kind::s0: return {0, 0, false};
        case Kind::s1: return {1, 0, false};
        case Kind::gm: return {0, 1, false};
        case Kind::p1: return {1, 1, false};
        case Kind::quad_odd: {
            int m = concrete(t);
            return {m - 1, m, false};
        }
        case Kind::quad_even: {
            int m = concrete(t);
            return {m, m, false};
        }
        case Kind::x_even: concrete(t); return {0, 0, true};
        case Kind::smash: {
            Bidegree a = bidegree(t.children()[0]), b = bidegree(t.children()[1]);
            if (a.contractible || b.contractible) return {0, 0, true};
            return {a.i + b.i, a.j + b.j, false};
        }
        case Kind::susp: {
            Bidegree a = bidegree(t.children()[0]);
            if (a.contractible) return a;
            return {a.i + 1, a.j, false};
        }
        case Kind::plus: throw NonSphereTerm("Plus(...) has no bidegree: " + t.to_string());
        case Kind::cofiber: throw NonSphereTerm("Cofib(...) has no bidegree: " + t.to_string());
        case Kind::meta:
        case Kind::power: throw NonSphereTerm("pattern term has no bidegree: " + t.to_string());
    }
    throw NonSphereTerm("unknown term");
}

Term normal_sphere(const Term& t) {
    Bidegree b = bidegree(t);
    if (b.contractible) return Term::point();
    if (b.i == 0 && b.j == 0) return Term::s0();
    if (b.j == 0) return Term::smash_power(Term::s1(), b.i);
    if (b.i == 0) return Term::smash_power(Term::gm(), b.j);
    return Term::smash(Term::smash_power(Term::s1(), b.i), Term::smash_power(Term::gm(), b.j));
}

bool equivalent(const Term& a, const Term& b) { return bidegree(a) == bidegree(b); }

}  // namespace qsphere::spherecalc
