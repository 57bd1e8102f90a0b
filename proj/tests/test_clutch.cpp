#include "doctest.h"

#include "oracles.hpp"
#include "qsphere/clutch/cocycle.hpp"
#include "qsphere/errors.hpp"
#include "qsphere/suslin/suslin.hpp"

using namespace qsphere;
using namespace qsphere::clutch;

namespace {

LocalizedElement frac(const QuadricRing& q, const char* num, unsigned a, unsigned b) {
    return LocalizedElement(q.ring()->parse(num), a, b);
}

}  // namespace

TEST_CASE("rank-1 cocycles on Q2") {
    auto q2 = QuadricRing::even(1);
    auto cx = clutch_cocycle(line_map(1), 1, "x1");
    CHECK(cx.rank == 1);
    CHECK(cx.at(0, 0) == frac(q2, "x1", 1, 0));
    CHECK(cx.at(0, 0).to_string() == "x1/z");

    auto cy = clutch_cocycle(line_map(-1), 1, "y1");
    CHECK(cy.at(0, 0) == frac(q2, "y1", 0, 1));
    // Oracle: x1*y1 = z(1+z) in Q2, so (x1/z)(y1/(1+z)) = 1 by cross-multiplication.
    CHECK((cx * cy).at(0, 0) == LocalizedElement(q2.ring()->one()));

    auto dx = verify_cocycle(cx).decomposition;
    CHECK(dx == UnitDecomposition{1, -1, 0, 1});
    auto dy = verify_cocycle(cy).decomposition;
    // y1/(1+z) = x1^{-1} z
    CHECK(dy == UnitDecomposition{1, 1, 0, -1});
}

TEST_CASE("beta_2 cocycle") {
    auto b2 = suslin::suslin_beta(2);
    auto c = clutch_cocycle(b2.beta, 2);
    auto q4 = c.quadric;
    CHECK(c.at(0, 0) == frac(q4, "x1", 1, 0));
    CHECK(c.at(0, 1) == frac(q4, "x2", 1, 0));
    CHECK(c.at(1, 0) == frac(q4, "-y2", 0, 1));
    CHECK(c.at(1, 1) == frac(q4, "y1", 0, 1));
    auto cert = verify_cocycle(c);
    CHECK(cert.decomposition == UnitDecomposition{});
    // Oracle: the det numerator x1*y1 + x2*y2 minus z(1+z) is the Q4 relation.
    const auto& A = *q4.ambient();
    CHECK(q4.ring()->element(A.sub(A.parse("x1*y1 + x2*y2").value(), A.parse("z + z^2").value())).is_zero());
    CHECK(cert.det == LocalizedElement(q4.ring()->one()));
}

TEST_CASE("generator bundles") {
    auto g1 = generator_bundle(1);
    CHECK(g1.at(0, 0).to_string() == "x1/z");
    CHECK(g1.provenance == "Suslin beta_1");

    auto g2 = generator_bundle(2);
    CHECK(verify_cocycle(g2).decomposition == UnitDecomposition{});

    auto g3 = generator_bundle(3);
    CHECK(g3.rank == 3);
    auto d3 = verify_cocycle(g3).decomposition;
    CHECK(d3.x1_pow == 0);
    CHECK((d3.sign == 1 || d3.sign == -1));
}

TEST_CASE("identity cocycle and negative controls") {
    for (unsigned n = 1; n <= 3; ++n)
        for (std::size_t r = 1; r <= 3; ++r) {
            auto c = clutch_cocycle(IntMatrix::identity(QuadricRing::odd(n).ring(), r), n, "identity");
            CHECK(verify_cocycle(c).decomposition == UnitDecomposition{});
        }

    auto g2 = generator_bundle(2);
    auto bad = g2;
    bad.at(0, 0) = -bad.at(0, 0);
    try {
        verify_cocycle(bad);
        FAIL("corrupted cocycle accepted");
    } catch (const InvalidCocycle& e) {
        CHECK(e.check() == "determinant-unit");
    }

    auto short_entries = g2;
    short_entries.g.pop_back();
    CHECK_THROWS_AS(verify_cocycle(short_entries), InvalidCocycle);
}

TEST_CASE("intake rejects non-units and non-square maps") {
    auto q3 = QuadricRing::odd(2);
    auto R = q3.ring();
    auto two = IntMatrix::from_elements(R, 1, 1, {R->constant(2)});
    CHECK_THROWS_AS(clutch_cocycle(two, 2), NonUnitDeterminant);
    auto x1 = IntMatrix::from_elements(R, 1, 1, {R->var("x1")});
    CHECK_THROWS_AS(clutch_cocycle(x1, 2), NonUnitDeterminant);
    CHECK_THROWS_AS(clutch_cocycle(IntMatrix(R, 1, 2), 2), NotSquare);
}

TEST_CASE("decompose_unit") {
    auto q4 = QuadricRing::even(2);
    auto R = q4.ring();
    auto z = q4.z_elem(), one = R->one();
    CHECK(decompose_unit(LocalizedElement(-(z.pow(2) * (one + z)), 1, 3), q4) == UnitDecomposition{-1, 1, -2, 0});
    CHECK_FALSE(decompose_unit(LocalizedElement(z + one + one, 0, 0), q4));
    CHECK_FALSE(decompose_unit(LocalizedElement(q4.x_elem(1), 1, 0), q4));
    CHECK_FALSE(decompose_unit(LocalizedElement(R->zero()), q4));
    CHECK_FALSE(decompose_unit(LocalizedElement(R->constant(2)), q4));
}

TEST_CASE("functoriality over random elementary products on O(Q_{2n-1})") {
    poly::Rng rng = poly::seeded_rng(5, "functoriality");
    for (unsigned n = 1; n <= 2; ++n) {
        auto q = QuadricRing::odd(n);
        auto R = q.ring();
        for (std::size_t rank : {2u, 3u}) {
            auto elementary = [&] {
                IntMatrix e = IntMatrix::identity(R, rank);
                std::uniform_int_distribution<std::size_t> idx(0, rank - 1);
                std::size_t i = idx(rng), j = idx(rng);
                if (i == j) j = (i + 1) % rank;
                e.set(i, j, poly::random_element(R, rng, {2, 2, 3}));
                return e;
            };
            for (int s = 0; s < 5; ++s) {
                IntMatrix f1 = elementary() * elementary(), f2 = elementary() * elementary();
                auto lhs = clutch_cocycle(f1 * f2, n);
                auto rhs = clutch_cocycle(f1, n) * clutch_cocycle(f2, n);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("rank-1 group law for line cocycles") {
    for (int d1 = -3; d1 <= 3; ++d1)
        for (int d2 = -3; d2 <= 3; ++d2) {
            auto f = line_map(d1) * line_map(d2);
            auto lhs = clutch_cocycle(f, 1);
            auto rhs = clutch_cocycle(line_map(d1), 1) * clutch_cocycle(line_map(d2), 1);
            CHECK(lhs == rhs);
            CHECK(lhs == clutch_cocycle(line_map(d1 + d2), 1));
            CHECK(verify_cocycle(lhs).decomposition.x1_pow == d1 + d2);
        }
}

TEST_CASE("cocycle JSON round trip") {
    for (unsigned n = 1; n <= 3; ++n) {
        auto c = generator_bundle(n);
        auto j = to_json(c);
        CHECK(j["det_unit"]["sign"].is_number());
        auto back = cocycle_from_json(poly::Json::parse(j.dump()));
        CHECK(back == c);
        CHECK_NOTHROW(verify_cocycle(back));
    }
    auto j = to_json(generator_bundle(2));
    j["entries"][0]["num"]["terms"][0]["coef"] = "-1";
    CHECK_THROWS_AS(verify_cocycle(cocycle_from_json(j)), InvalidCocycle);
}
