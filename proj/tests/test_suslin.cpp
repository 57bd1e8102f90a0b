#include "doctest.h"

#include "oracles.hpp"
#include "qsphere/errors.hpp"
#include "qsphere/suslin/suslin.hpp"

using namespace qsphere;
using namespace qsphere::suslin;
using poly::Json;

namespace {

IntMatrix from_strings(const RingPtr& R, std::size_t n, const std::vector<const char*>& s) {
    std::vector<IntElement> e;
    for (const char* t : s) e.push_back(R->parse(t));
    return IntMatrix::from_elements(R, n, n, e);
}

}  // namespace

TEST_CASE("alpha for small n") {
    CHECK(alpha(1) == from_strings(free_ring(1), 1, {"x1"}));
    CHECK(alpha(2) == from_strings(free_ring(2), 2, {"x1", "x2", "-y2", "y1"}));
    CHECK(alpha(3) == from_strings(free_ring(3), 4,
                                   {"x1", "0", "x2", "x3",    //
                                    "0", "x1", "-y3", "y2",   //
                                    "-y2", "x3", "y1", "0",   //
                                    "-y3", "-x2", "0", "y1"}));
    for (unsigned n = 1; n <= 5; ++n) CHECK(alpha(n).rows() == (1u << (n - 1)));
    CHECK_THROWS_AS(alpha(0u), InvalidArgument);
    CHECK_THROWS_AS(alpha(6u), InvalidArgument);
}

TEST_CASE("alpha_3 identity by direct multiplication of the hand-written matrix") {
    auto R = free_ring(3);
    auto A = from_strings(R, 4, {"x1", "0", "x2", "x3", "0", "x1", "-y3", "y2", "-y2", "x3", "y1", "0", "-y3", "-x2", "0", "y1"});
    auto B = from_strings(R, 4, {"y1", "0", "y2", "y3", "0", "y1", "-x3", "x2", "-x2", "y3", "x1", "0", "-x3", "-y2", "0", "x1"});
    auto s = R->parse("x1*y1 + x2*y2 + x3*y3");
    CHECK(A * B.transpose() == s * IntMatrix::identity(R, 4));
    CHECK(alpha_swapped(3) == B);
}

TEST_CASE("verify_suslin for n <= 5") {
    for (unsigned n = 1; n <= 5; ++n) {
        auto c = verify_suslin(n);
        CHECK(c.identity_holds);
        CHECK(c.det.has_value() == (n >= 2 && n <= 4));
        if (c.det_holds) CHECK(*c.det_holds);
    }
    auto c2 = verify_suslin(2);
    CHECK(*c2.det == free_ring(2)->parse("x1*y1 + x2*y2"));
}

TEST_CASE("alpha identity at integer points") {
    // Oracle: evaluate alpha(x,y) and alpha(y,x) at integer points and multiply in Z.
    poly::Rng rng = poly::seeded_rng(3, "alpha-points");
    for (unsigned n = 1; n <= 4; ++n) {
        auto A = alpha(n), B = alpha_swapped(n);
        const std::size_t N = A.rows();
        for (int s = 0; s < 5; ++s) {
            auto pt = oracle::random_point(2 * n, rng);
            Integer pairing = 0;
            for (unsigned i = 0; i < n; ++i) pairing += pt[i] * pt[n + i];
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c) {
                    Integer acc = 0;
                    for (std::size_t k = 0; k < N; ++k)
                        acc += oracle::eval(A.poly(r, k), pt) * oracle::eval(B.poly(c, k), pt);
                    CHECK(acc == (r == c ? pairing : Integer(0)));
                }
        }
    }
}

TEST_CASE("beta_1 and beta_2") {
    auto b1 = suslin_beta(1);
    CHECK(b1.certificate.steps.empty());
    CHECK(b1.beta.to_string() == alpha(1).in_ring(b1.quadric.ring()).to_string());

    auto b2 = suslin_beta(2);
    CHECK(b2.certificate.steps.empty());
    auto R = b2.quadric.ring();
    CHECK(b2.beta == from_strings(R, 2, {"x1", "x2", "-y2", "y1"}));
    CHECK(b2.det_beta == R->one());
}

TEST_CASE("beta_3 certificate replays") {
    auto b3 = suslin_beta(3);
    CHECK(b3.beta.rows() == 3);
    CHECK(b3.certificate.replay(b3.alpha) == with_identity_block(b3.beta, 1));
    auto R = b3.quadric.ring();
    CHECK((b3.det_beta == R->one() || b3.det_beta == -R->one()));
    CHECK_NOTHROW(verify_beta(b3));

    // Oracle: the integer determinant of beta_3 at random points of Q_5 is +-1, and
    // equals the symbolic value there.
    poly::Rng rng = poly::seeded_rng(2, "beta3-points");
    for (int s = 0; s < 20; ++s) {
        auto pt = oracle::quadric_point(b3.quadric, rng);
        Integer m[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m[r][c] = oracle::eval(b3.beta.poly(r, c), pt);
        Integer d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        CHECK(d == oracle::eval(b3.det_beta.value(), pt));
        CHECK(abs(d) == 1);
    }
}

TEST_CASE("a corrupted certificate is detected") {
    auto b3 = suslin_beta(3);
    REQUIRE_FALSE(b3.certificate.steps.empty());
    auto bad = b3;
    for (auto& s : bad.certificate.steps)
        if (s.kind == ElementaryStep::Kind::add_multiple) {
            s.scalar = s.scalar + bad.quadric.ring()->one();
            break;
        }
    CHECK_THROWS_AS(verify_beta(bad), VerificationFailure);
}

TEST_CASE("beta JSON round trip") {
    for (unsigned n = 1; n <= 3; ++n) {
        auto b = suslin_beta(n);
        Json j = to_json(b);
        CHECK(j["n"] == n);
        CHECK(j["rows"] == n);
        auto back = beta_from_json(Json::parse(j.dump()));
        CHECK(back.beta == b.beta);
        CHECK(back.certificate.steps.size() == b.certificate.steps.size());
    }
    auto j = to_json(suslin_beta(3));
    j["entries"][0]["terms"][0]["coef"] = "7";
    CHECK_THROWS_AS(beta_from_json(j), VerificationFailure);
}

TEST_CASE("elementary steps") {
    auto R = free_ring(2);
    auto M = alpha(2);
    ElementaryStep swap{ElementaryStep::Side::row, ElementaryStep::Kind::swap_with_sign, 0, 1, R->one()};
    IntMatrix s = M;
    apply_step(s, swap);
    CHECK(s == from_strings(R, 2, {"y2", "-y1", "x1", "x2"}));
    CHECK(det(s) == det(M));
    ElementaryStep bad{ElementaryStep::Side::col, ElementaryStep::Kind::add_multiple, 0, 0, R->one()};
    CHECK_THROWS_AS(apply_step(s, bad), InvalidArgument);
}

TEST_CASE("Hopf map nu") {
    auto h = hopf_nu_check();
    CHECK(h.ok());
    CHECK(h.residue.is_zero());

    // M1 = I, M2 = 0
    auto v = hopf_nu({1, 0, 0, 1}, {0, 0, 0, 0});
    for (const auto& c : v) CHECK(c == 0);
    // M1 = diag(2,1), M2 = I
    auto w = hopf_nu({2, 0, 0, 1}, {1, 0, 0, 1});
    CHECK(w[4] == 1);
    CHECK(w[0] * w[2] + w[1] * w[3] == 2);
    CHECK(w[0] * w[2] + w[1] * w[3] == w[4] * (1 + w[4]));
    CHECK_THROWS_AS(hopf_nu({1, 0, 0, 1}, {1, 0, 0, 1}), InvalidArgument);

    // Oracle: the image of random integer pairs with det M1 - det M2 = 1 lies on Q4.
    poly::Rng rng = poly::seeded_rng(1, "hopf");
    std::uniform_int_distribution<long> d(-9, 9);
    for (int s = 0; s < 50; ++s) {
        std::array<Integer, 4> m2{d(rng), d(rng), d(rng), d(rng)};
        Integer t = m2[0] * m2[3] - m2[1] * m2[2] + 1;
        std::array<Integer, 4> m1{1, Integer(d(rng)), 0, 1};
        m1[3] = t;  // det m1 = t when the lower-left entry is 0 and a = 1
        auto img = hopf_nu(m1, m2);
        CHECK(img[0] * img[2] + img[1] * img[3] == img[4] * (1 + img[4]));
    }
}

TEST_CASE("beta_4 by the default search, beta_5 declared out of reach") {
    auto b4 = suslin_beta(4);
    CHECK(b4.beta.rows() == 4);
    CHECK(b4.certificate.replay(b4.alpha) == with_identity_block(b4.beta, 4));
    auto R = b4.quadric.ring();
    CHECK((b4.det_beta == R->one() || b4.det_beta == -R->one()));
    CHECK_THROWS_AS(suslin_beta(5), ReductionNotFound);

    BetaOptions tight;
    tight.branching = 1;
    CHECK_THROWS_AS(suslin_beta(4, tight), ReductionNotFound);
}
