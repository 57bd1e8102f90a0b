#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsphere::spherecalc {

enum class Kind {
    point,      // "pt", contractible
    s0,         // S^0, the unit for smash
    s1,         // simplicial circle
    gm,         // punctured line
    p1,         // projective line
    smash,      // binary
    plus,       // disjoint base point added; pattern-only
    susp,       // S1 /\ t
    quad_odd,   // Qodd(m) = Q_{2m-1}
    quad_even,  // Qeven(m) = Q_{2m}
    x_even,     // X(m) = X_{2m}, contractible
    cofiber,    // Cofib(a, b): cofiber of a map a -> b
    meta,       // rule metavariable
    power,      // t^k with a symbolic exponent; rule conclusions only
};

/// An integer index, optionally symbolic: `var + offset`. Concrete when `var` is empty.
struct Index {
    std::string var;
    long offset = 0;

    bool concrete() const { return var.empty(); }
    friend bool operator==(const Index&, const Index&) = default;
};

class Term;
using Path = std::vector<std::size_t>;

class Term {
public:
    Term();  // pt

    static Term point();
    static Term s0();
    static Term s1();
    static Term gm();
    static Term p1();
    static Term smash(Term a, Term b);
    static Term plus(Term t);
    static Term susp(Term t);
    static Term quad_odd(Index m);
    static Term quad_even(Index m);
    static Term x_even(Index m);
    static Term cofiber(Term a, Term b);
    static Term meta(std::string name);
    static Term power(Term t, Index k);

    static Term quad_odd(long m) { return quad_odd(Index{"", m}); }
    static Term quad_even(long m) { return quad_even(Index{"", m}); }
    static Term x_even(long m) { return x_even(Index{"", m}); }

    /// Left-nested t /\ t /\ ... /\ t (k copies); S0 for k = 0.
    static Term smash_power(const Term& t, long k);

    Kind kind() const;
    const std::vector<Term>& children() const;
    const Index& index() const;
    const std::string& name() const;  // metavariable name

    bool is_atom() const;  // no children and no symbolic parts

    const Term& at(const Path& p) const;
    Term replace(const Path& p, Term sub) const;

    /// Pretty form accepted by parse().
    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar:
///   term    := power ("/\" power)*                  left-associative
///   power   := primary ("^" int)?                   left-nested smash power
///   primary := "pt" | "S0" | "S1" | "Gm" | "P1"
///            | "Qodd(" int ")" | "Qeven(" int ")" | "X(" int ")"
///            | "Plus(" term ")" | "Susp(" term ")" | "Cofib(" term "," term ")"
///            | "(" term ")"
/// Throws ParseError with the byte offset of the problem.
Term parse_term(std::string_view s);

/// (i, j) for S^i_s /\ Gm^j; contractible terms have no (i, j).
struct Bidegree {
    int i = 0;
    int j = 0;
    bool contractible = false;

    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    std::string to_string() const;
};

/// Throws NonSphereTerm for Plus, Cofib and pattern nodes.
Bidegree bidegree(const Term& t);

/// Canonical representative S1^i /\ Gm^j (S0 for (0,0), pt when contractible).
Term normal_sphere(const Term& t);

/// Two sphere terms are identified iff their bidegrees agree.
bool equivalent(const Term& a, const Term& b);

}  // namespace qsphere::spherecalc
