#include "doctest.h"

#include "qsphere/errors.hpp"
#include "qsphere/spherecalc/rules.hpp"

using namespace qsphere;
using namespace qsphere::spherecalc;

namespace {

// Independent bidegree oracle: count S1/Gm letters after spelling every atom out.
std::pair<int, int> count_letters(const std::string& spelled) {
    int s = 0, g = 0;
    for (std::size_t k = 0; k + 1 < spelled.size(); ++k) {
        if (spelled.compare(k, 2, "S1") == 0) ++s;
        if (spelled.compare(k, 2, "Gm") == 0) ++g;
    }
    return {s, g};
}

std::string spell_qodd(int n) {
    // Qodd(n) ~ A^n - 0 ~ S1^(n-1) /\ Gm^n, written out letter by letter.
    std::string out;
    for (int k = 0; k < n - 1; ++k) out += "S1 ";
    for (int k = 0; k < n; ++k) out += "Gm ";
    return out;
}

}  // namespace

TEST_CASE("parse examples") {
    Term t = parse_term("S1 /\\ Gm^2");
    CHECK(t == Term::smash(Term::s1(), Term::smash(Term::gm(), Term::gm())));
    CHECK(bidegree(t) == Bidegree{1, 2, false});
    CHECK(parse_term("Qeven(3)") == Term::quad_even(3));
    CHECK(bidegree(parse_term("Gm")) == Bidegree{0, 1, false});
    CHECK(bidegree(parse_term("Qeven(2)")) == Bidegree{2, 2, false});

    // P1^4 has bidegree 4 * (1,1) by additivity, same as Qeven(4).
    Term p = parse_term("P1^4");
    CHECK(bidegree(p) == Bidegree{4, 4, false});
    CHECK(equivalent(p, parse_term("Qeven(4)")));
    CHECK(p == Term::smash_power(Term::p1(), 4));
}

TEST_CASE("printing is a parse fixed point") {
    for (const char* s : {"S1 /\\ Gm^2", "P1^4", "Qeven(3) /\\ Qodd(2)", "(S1 /\\ Gm) /\\ (P1 /\\ S1)", "pt",
                          "Gm^2 /\\ Gm^2", "Cofib(P1, P1 /\\ Plus(Qeven(2)))", "Susp(Qodd(3))", "S1^0",
                          "P1 /\\ P1 /\\ Gm", "Gm /\\ (S1 /\\ P1^2)", "X(3) /\\ S0"}) {
        CAPTURE(s);
        Term t = parse_term(s);
        std::string once = t.to_string();
        CHECK(parse_term(once) == t);
        CHECK(parse_term(once).to_string() == once);
    }
    CHECK(parse_term("P1^4").to_string() == "P1^4");
    CHECK(parse_term("S1 /\\ Gm^2").to_string() == "S1 /\\ Gm^2");
}

TEST_CASE("parse errors carry a position") {
    auto pos = [](const char* s) -> long {
        try {
            parse_term(s);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(pos("S1 /\\") == 5);
    CHECK(pos("Qeven(x)") == 6);
    CHECK(pos("S1 Gm") == 3);
    CHECK(pos("Qodd(0)") == 5);
    CHECK(pos("") == 0);
    CHECK(pos("(S1") == 3);
}

TEST_CASE("bidegree") {
    CHECK(bidegree(Term::point()).contractible);
    CHECK(bidegree(Term::smash(Term::p1(), Term::point())).contractible);
    CHECK_THROWS_AS(bidegree(parse_term("Plus(P1)")), NonSphereTerm);
    CHECK_THROWS_AS(bidegree(parse_term("Cofib(P1, P1)")), NonSphereTerm);
    for (int n = 1; n <= 12; ++n) {
        auto [s, g] = count_letters(spell_qodd(n));
        Bidegree susp = bidegree(Term::susp(Term::quad_odd(n)));
        CHECK(susp == Bidegree{s + 1, g, false});
        CHECK(susp == bidegree(Term::quad_even(n)));
        CHECK(normal_sphere(Term::quad_even(n)) ==
              Term::smash(Term::smash_power(Term::s1(), n), Term::smash_power(Term::gm(), n)));
    }
    CHECK_FALSE(equivalent(parse_term("S1"), parse_term("Gm")));
}

TEST_CASE("derive_even") {
    auto t1 = derive_even(1);
    REQUIRE(t1.steps.size() == 1);
    CHECK(t1.steps[0].rule == "q2-is-p1");

    auto t2 = derive_even(2);
    CHECK(t2.lhs == Term::quad_even(2));
    CHECK(t2.rhs == parse_term("P1 /\\ P1"));

    for (unsigned n = 1; n <= 10; ++n) {
        CAPTURE(n);
        auto t = derive_even(n);
        CHECK_NOTHROW(replay(t));
        CHECK(bidegree(t.rhs) == Bidegree{static_cast<int>(n), static_cast<int>(n), false});
        CHECK(bidegree(t.lhs) == bidegree(t.rhs));
        long inductive = 0;
        for (const auto& s : t.steps) inductive += s.rule == "cofiber-sequence";
        CHECK(inductive == static_cast<long>(n) - 1);
    }
}

TEST_CASE("derive_contractible") {
    auto t1 = derive_contractible(1);
    REQUIRE(t1.steps.size() == 1);
    CHECK(t1.steps[0].rule == "x2-contractible");
    for (unsigned n = 1; n <= 6; ++n) {
        auto t = derive_contractible(n);
        CHECK_NOTHROW(replay(t));
        CHECK(t.rhs == Term::point());
    }
}

TEST_CASE("trace corruption is detected") {
    auto t = derive_even(4);
    auto json = to_json(t);
    auto back = trace_from_json(Json::parse(json.dump()));
    CHECK_NOTHROW(replay(back));
    CHECK(to_json(back) == json);

    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        auto bad = t;
        bad.steps[k].after = Term::smash(bad.steps[k].after, Term::gm());
        CHECK_THROWS_AS(replay(bad), VerificationFailure);

        auto renamed = t;
        renamed.steps[k].rule = "no-such-rule";
        CHECK_THROWS_AS(replay(renamed), VerificationFailure);

        auto moved = t;
        moved.steps[k].pos.push_back(1);
        CHECK_THROWS_AS(replay(moved), VerificationFailure);
    }
    auto dropped = t;
    dropped.steps.pop_back();
    CHECK_THROWS_AS(replay(dropped), VerificationFailure);
    auto wrong_goal = t;
    wrong_goal.rhs = Term::smash_power(Term::p1(), 5);
    CHECK_THROWS_AS(replay(wrong_goal), VerificationFailure);
}

TEST_CASE("rule registration rejects unsound rules") {
    RuleTable t;
    CHECK_THROWS_AS(t.add({"bad-odd", Term::quad_odd(Index{"m", 1}), Term::power(Term::p1(), Index{"m", 1}), ""}),
                    InvalidArgument);
    CHECK_THROWS_AS(t.add({"bad-drop", Term::smash(Term::meta("A"), Term::gm()), Term::meta("A"), ""}),
                    InvalidArgument);
    CHECK_THROWS_AS(t.add({"unbound", Term::p1(), Term::meta("A"), ""}), InvalidArgument);
    CHECK_NOTHROW(t.add({"commute", Term::smash(Term::meta("A"), Term::meta("B")),
                         Term::smash(Term::meta("B"), Term::meta("A")), ""}));
    CHECK(RuleTable::standard().rules().size() >= 10);

    // Registered rules are stable under bidegree on sphere instances.
    const Rule& odd = RuleTable::standard().at("odd-quadric-sphere");
    for (long m = 1; m <= 8; ++m) {
        auto out = apply_rule(odd, Term::quad_odd(m), {});
        REQUIRE(out);
        CHECK(bidegree(*out) == bidegree(Term::quad_odd(m)));
    }
}

TEST_CASE("classifier table") {
    for (unsigned i = 0; i <= 20; ++i)
        for (unsigned j = 0; j <= 20; ++j) {
            Verdict v = classify_smooth_model(i, j);
            if (i > j) {
                CHECK(v.kind == Verdict::Kind::not_smooth);
            } else if (i + 1 >= j) {
                REQUIRE(v.kind == Verdict::Kind::smooth_model);
                CHECK(bidegree(*v.witness) == Bidegree{static_cast<int>(i), static_cast<int>(j), false});
            } else {
                CHECK(v.kind == Verdict::Kind::open_case);
                CHECK_FALSE(v.witness);
            }
        }
    CHECK(classify_smooth_model(2, 1).to_string() == "NotSmooth (i > j)");
    CHECK(classify_smooth_model(3, 3).to_string() == "SmoothModel(Qeven(3))");
    CHECK(classify_smooth_model(0, 2).kind == Verdict::Kind::open_case);
    CHECK(*classify_smooth_model(0, 0).witness == Term::quad_even(0));
}
