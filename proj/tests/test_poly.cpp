#include "doctest.h"

#include "oracles.hpp"
#include "qsphere/errors.hpp"
#include "qsphere/poly/serialize.hpp"
#include "qsphere/quadric/quadric.hpp"
#include "qsphere/suslin/suslin.hpp"

using namespace qsphere;
using namespace qsphere::poly;
using quadric::QuadricRing;

namespace {

RingPtr eight_vars() { return IntRing::free({"a", "b", "c", "d", "e", "f", "g", "h"}); }

}  // namespace

TEST_CASE("ring_arith examples") {
    auto Q1 = QuadricRing::odd(1).ring();
    CHECK(Q1->var("x1") * Q1->var("y1") == Q1->one());

    auto Q2 = QuadricRing::even(1).ring();
    CHECK((Q2->var("x1") * Q2->var("y1")).to_string() == "z^2 + z");

    auto F = IntRing::free({"a", "b"});
    auto a = F->var("a"), b = F->var("b");
    CHECK((a + b) * (a - b) == a * a - b * b);
    CHECK(((a + b) * (a - b)).to_string() == "a^2 - b^2");
}

TEST_CASE("context mismatch is rejected") {
    auto F = IntRing::free({"a", "b"});
    auto G = IntRing::free({"a", "c"});
    CHECK_THROWS_AS(F->var("a") + G->var("a"), ContextMismatch);
    CHECK_THROWS_AS(F->var("q"), UnknownVariable);
    CHECK_THROWS_AS(F->parse("a + w"), UnknownVariable);
}

TEST_CASE("normal_form examples") {
    for (unsigned m = 1; m <= 4; ++m) {
        QuadricRing q = QuadricRing::odd(m);
        CHECK(q.ring()->element(q.relation()).is_zero());
    }
    QuadricRing q2 = QuadricRing::even(1);
    const auto& R = *q2.ring();
    IntPoly x1y1 = R.mul_free(R.variable_poly(q2.x(1)), R.variable_poly(q2.y(1)));
    CHECK(R.format(R.reduce(x1y1)) == "z^2 + z");

    // (x1 y1)^2: reduce the square directly, and square the reduced form.
    IntPoly sq = R.reduce(R.mul_free(x1y1, x1y1));
    IntPoly r = R.reduce(x1y1);
    CHECK(sq == R.reduce(R.mul_free(r, r)));
    CHECK(R.format(sq) == "z^4 + 2*z^3 + z^2");
}

TEST_CASE("normal form has no monomial divisible by the leading monomial") {
    Rng rng = seeded_rng(1, "nf-lead");
    for (unsigned m = 1; m <= 3; ++m)
        for (auto q : {QuadricRing::odd(m), QuadricRing::even(m)}) {
            const auto lead = *q.ring()->relation_lead();
            CHECK(lead == Monomial(q.ring()->nvars()).with(q.x(m), 1).with(q.y(m), 1));
            for (int s = 0; s < 30; ++s) {
                IntPoly p = q.ring()->reduce(random_poly(*q.ring(), rng));
                for (const auto& t : p.terms()) CHECK_FALSE(lead.divides(t.mono));
            }
        }
}

TEST_CASE("ring axioms on random polynomials: 200 samples, 8 variables, degree <= 4") {
    auto R = eight_vars();
    Rng rng = seeded_rng(7, "ring-axioms");
    for (int s = 0; s < 200; ++s) {
        auto a = random_element(R, rng), b = random_element(R, rng), c = random_element(R, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == R->zero());
        CHECK(a * R->one() == a);
        // Oracle: evaluation at an integer point is a ring map Z[a..h] -> Z.
        auto pt = oracle::random_point(8, rng);
        CHECK(oracle::eval((a * b + c).value(), pt) ==
              oracle::eval(a.value(), pt) * oracle::eval(b.value(), pt) + oracle::eval(c.value(), pt));
    }
}

TEST_CASE("normal form idempotence and homomorphism law on quadric rings") {
    Rng rng = seeded_rng(7, "nf-hom");
    for (unsigned m = 1; m <= 3; ++m)
        for (auto q : {QuadricRing::odd(m), QuadricRing::even(m)}) {
            const auto& R = *q.ring();
            for (int s = 0; s < 200 / 6 + 1; ++s) {
                IntPoly p = random_poly(R, rng), r = random_poly(R, rng);
                IntPoly np = R.reduce(p);
                CHECK(R.reduce(np) == np);
                CHECK(R.is_normal(np));
                CHECK(R.reduce(R.mul_free(p, r)) == (R.element(p) * R.element(r)).value());
                // Oracle: p and its normal form agree at every integer point of the quadric.
                auto pt = oracle::quadric_point(q, rng);
                CHECK(oracle::eval(p, pt) == oracle::eval(np, pt));
            }
        }
}

TEST_CASE("prime-field reduction agrees with integer reduction taken mod p") {
    using F = ModP<10007>;
    Rng rng = seeded_rng(3, "modp");
    for (unsigned m = 1; m <= 3; ++m) {
        QuadricRing q = QuadricRing::even(m);
        const auto& RZ = *q.ring();
        auto Fbase = Ring<F>::free(RZ.names(), RZ.order().precedence());
        std::vector<Term<F>> rel;
        for (const auto& t : q.relation().terms()) rel.push_back({F::from_integer(t.coef), t.mono});
        auto Fq = Ring<F>::quotient(Fbase, Fbase->canonical(rel));

        auto to_f = [&](const IntPoly& p) {
            std::vector<Term<F>> ts;
            for (const auto& t : p.terms()) ts.push_back({F::from_integer(t.coef), t.mono});
            return Fq->canonical(ts);
        };
        for (int s = 0; s < 30; ++s) {
            IntPoly p = random_poly(RZ, rng, {4, 6, 50000});
            CHECK(Fq->reduce(to_f(p)) == to_f(RZ.reduce(p)));
        }
    }
}

TEST_CASE("det and adjugate examples") {
    auto F = IntRing::free({"a", "b"});
    CHECK(det(IntMatrix::identity(F, 3)) == F->one());
    CHECK(adjugate(IntMatrix::identity(F, 2)) == IntMatrix::identity(F, 2));

    auto R = suslin::free_ring(2);
    auto M = IntMatrix::from_elements(R, 2, 2, {R->var("x1"), R->var("x2"), -R->var("y2"), R->var("y1")});
    CHECK(det(M) == R->parse("x1*y1 + x2*y2"));
    auto expected =
        IntMatrix::from_elements(R, 2, 2, {R->var("y1"), -R->var("x2"), R->var("y2"), R->var("x1")});
    CHECK(adjugate(M) == expected);

    CHECK_THROWS_AS(det(IntMatrix(F, 2, 3)), NotSquare);
    CHECK_THROWS_AS(adjugate(IntMatrix(F, 3, 2)), NotSquare);
    CHECK_THROWS_AS(det(IntMatrix::identity(F, 9)), DimensionOverBound);
}

TEST_CASE("det alpha_3 equals the square of the pairing") {
    auto R = suslin::free_ring(3);
    auto v = [&](const char* s) { return R->var(s); };
    auto O = R->zero();
    // alpha_3 written out by hand.
    auto A = IntMatrix::from_elements(R, 4, 4,
                                      {v("x1"), O, v("x2"), v("x3"),     //
                                       O, v("x1"), -v("y3"), v("y2"),    //
                                       -v("y2"), v("x3"), v("y1"), O,    //
                                       -v("y3"), -v("x2"), O, v("y1")});
    auto s = R->parse("x1*y1 + x2*y2 + x3*y3");
    CHECK(det(A) == s * s);
    // Oracle: Leibniz expansion of the integer matrix at random points.
    Rng rng = seeded_rng(1, "alpha3-det");
    for (int k = 0; k < 10; ++k) {
        auto pt = oracle::random_point(6, rng);
        Integer m[4][4];
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m[r][c] = oracle::eval(A.poly(r, c), pt);
        Integer d = 0;
        int perm[4] = {0, 1, 2, 3};
        do {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) inv += perm[i] > perm[j];
            Integer t = inv % 2 ? -1 : 1;
            for (int i = 0; i < 4; ++i) t *= m[i][perm[i]];
            d += t;
        } while (std::next_permutation(perm, perm + 4));
        CHECK(d == oracle::eval(det(A).value(), pt));
    }
}

TEST_CASE("adjugate identity on 20 random 3x3 matrices with degree <= 2 entries") {
    Rng rng = seeded_rng(11, "adj");
    for (auto R : {eight_vars(), QuadricRing::even(2).ring()}) {
        for (int s = 0; s < 20; ++s) {
            auto M = random_matrix(R, rng, 3, 3, {2, 3, 5});
            auto lhs = M * adjugate(M);
            CHECK(lhs == det(M) * IntMatrix::identity(R, 3));
            CHECK(adjugate(M) * M == det(M) * IntMatrix::identity(R, 3));
        }
    }
}

TEST_CASE("det is multiplicative up to 4x4") {
    Rng rng = seeded_rng(5, "det-mult");
    for (auto R : {eight_vars(), QuadricRing::odd(2).ring()})
        for (std::size_t n = 1; n <= 4; ++n)
            for (int s = 0; s < 4; ++s) {
                auto A = random_matrix(R, rng, n, n, {1, 2, 3});
                auto B = random_matrix(R, rng, n, n, {1, 2, 3});
                CHECK(det(A * B) == det(A) * det(B));
            }
}

TEST_CASE("polynomial and matrix JSON round trip") {
    auto q = QuadricRing::even(2);
    Rng rng = seeded_rng(2, "json");
    for (int s = 0; s < 20; ++s) {
        auto e = random_element(q.ring(), rng);
        CHECK(element_from_json(*q.ring(), to_json(e)) == e);
    }
    auto M = random_matrix(q.ring(), rng, 2, 3);
    auto j = to_json(M);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    CHECK(matrix_from_json<Integer>(q.ring(), j) == M);

    Json bad = to_json(q.ring()->var("x1"));
    bad["vars"][0] = "w";
    CHECK_THROWS_AS(element_from_json(*q.ring(), bad), UnknownVariable);
    Json coef = to_json(q.ring()->var("x1"));
    coef["terms"][0]["coef"] = "1.5";
    CHECK_THROWS_AS(element_from_json(*q.ring(), coef), InvalidArgument);
}

TEST_CASE("expression parser") {
    auto R = IntRing::free({"x", "y"});
    CHECK(R->parse("(x+y)^2") == R->parse("x^2 + 2*x*y + y^2"));
    CHECK(R->parse("-x - -y") == R->var("y") - R->var("x"));
    CHECK(R->parse("123456789012345678901234567890*x").value().leading().coef ==
          Integer("123456789012345678901234567890"));
    CHECK_THROWS_AS(R->parse("x +"), ParseError);
    CHECK_THROWS_AS(R->parse("(x"), ParseError);
}
