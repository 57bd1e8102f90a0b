#include "qsphere/suite.hpp"

#include <chrono>
#include <functional>
#include <future>

#include "qsphere/clutch/cocycle.hpp"
#include "qsphere/errors.hpp"
#include "qsphere/poly/random.hpp"
#include "qsphere/quadric/charts.hpp"
#include "qsphere/spherecalc/rules.hpp"
#include "qsphere/suslin/suslin.hpp"

namespace qsphere {

namespace {

using poly::Integer;
using poly::IntPoly;
using poly::Rng;
using quadric::QuadricRing;

// Thrown by a check that should be reported as skipped.
struct Skip {
    std::string why;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw VerificationFailure(what);
}

Integer eval(const IntPoly& p, const std::vector<Integer>& pt) {
    Integer total = 0;
    for (const auto& t : p.terms()) {
        Integer v = t.coef, f;
        for (std::size_t i = 0; i < pt.size(); ++i) {
            mpz_pow_ui(f.get_mpz_t(), pt[i].get_mpz_t(), t.mono[i]);
            v *= f;
        }
        total += v;
    }
    return total;
}

// x1 = 1 and the relation solved for y1.
std::vector<Integer> quadric_point(const QuadricRing& q, Rng& rng) {
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Integer> pt(q.ring()->nvars(), 0);
    Integer rhs = 1;
    if (q.parity() == quadric::Parity::even) {
        Integer z = d(rng);
        pt[q.z()] = z;
        rhs = z + z * z;
    }
    if (q.m() == 0) return pt;
    pt[q.x(1)] = 1;
    for (unsigned i = 2; i <= q.m(); ++i) {
        pt[q.x(i)] = d(rng);
        pt[q.y(i)] = d(rng);
        rhs -= pt[q.x(i)] * pt[q.y(i)];
    }
    pt[q.y(1)] = rhs;
    return pt;
}

// ---- poly ----

std::string ring_axioms(Rng& rng) {
    std::vector<std::string> names;
    for (char c = 'a'; c <= 'h'; ++c) names.emplace_back(1, c);
    auto R = poly::IntRing::free(names);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int s = 0; s < 200; ++s) {
        auto a = poly::random_element(R, rng), b = poly::random_element(R, rng), c = poly::random_element(R, rng);
        const std::string at = " (sample " + std::to_string(s) + ")";
        require((a + b) + c == a + (b + c), "additive associativity" + at);
        require((a * b) * c == a * (b * c), "multiplicative associativity" + at);
        require(a + b == b + a && a * b == b * a, "commutativity" + at);
        require(a * (b + c) == a * b + a * c, "distributivity" + at);
        require(a - a == R->zero() && a * R->one() == a, "identities" + at);
        std::vector<Integer> pt;
        for (int k = 0; k < 8; ++k) pt.push_back(d(rng));
        require(eval((a * b + c).value(), pt) == eval(a.value(), pt) * eval(b.value(), pt) + eval(c.value(), pt),
                "evaluation is not a ring map" + at);
    }
    return "200 samples over Z[a..h], degree <= 4";
}

std::string normal_form(Rng& rng) {
    int samples = 0;
    for (unsigned m = 1; m <= 3; ++m)
        for (auto q : {QuadricRing::odd(m), QuadricRing::even(m)}) {
            const auto& R = *q.ring();
            for (int s = 0; s < 34; ++s, ++samples) {
                IntPoly p = poly::random_poly(R, rng), r = poly::random_poly(R, rng);
                IntPoly np = R.reduce(p);
                require(R.reduce(np) == np && R.is_normal(np), "normal form not idempotent on " + q.name());
                require(R.reduce(R.mul_free(p, r)) == (R.element(p) * R.element(r)).value(),
                        "reduction is not multiplicative on " + q.name());
                auto pt = quadric_point(q, rng);
                require(eval(p, pt) == eval(np, pt), "normal form changes values on " + q.name());
            }
        }
    return std::to_string(samples) + " samples on Q1..Q6";
}

std::string hom_law(Rng& rng) {
    int samples = 0;
    for (unsigned n = 1; n <= 3; ++n) {
        auto p = quadric::psi(n);
        auto R = p.source.ring();
        for (int s = 0; s < 67; ++s, ++samples) {
            auto a = poly::random_element(R, rng, {3, 4, 5}), b = poly::random_element(R, rng, {3, 4, 5});
            require(quadric::apply_hom(p.hom, a + b) == quadric::apply_hom(p.hom, a) + quadric::apply_hom(p.hom, b),
                    "psi_" + std::to_string(n) + " not additive");
            require(quadric::apply_hom(p.hom, a * b) == quadric::apply_hom(p.hom, a) * quadric::apply_hom(p.hom, b),
                    "psi_" + std::to_string(n) + " not multiplicative");
        }
    }
    return std::to_string(samples) + " samples, psi_1..psi_3";
}

std::string det_multiplicative(Rng& rng) {
    auto R = QuadricRing::odd(2).ring();
    for (std::size_t k = 1; k <= 4; ++k)
        for (int s = 0; s < 3; ++s) {
            auto a = poly::random_matrix(R, rng, k, k, {2, 3, 4}), b = poly::random_matrix(R, rng, k, k, {2, 3, 4});
            require(poly::det(a * b) == poly::det(a) * poly::det(b), "det(AB) != det A det B at size " + std::to_string(k));
        }
    return "sizes 1..4 over O(Q3)";
}

// ---- suslin ----

std::string psi_identity(Rng&) {
    for (unsigned n = 1; n <= 6; ++n)
        require(quadric::psi(n).well_defined(), "psi_" + std::to_string(n) + " does not kill the relation");
    return "n = 1..6";
}

std::string suslin_identities(Rng&) {
    for (unsigned n = 1; n <= suslin::kMaxAlpha; ++n) suslin::verify_suslin(n);
    return "identity n = 1..5, determinant n = 2..4";
}

std::string beta(unsigned n) {
    auto b = suslin::suslin_beta(n);
    suslin::verify_beta(b);
    return std::to_string(b.certificate.steps.size()) + " elementary steps, det " + b.det_beta.to_string();
}

std::string beta2_ground_truth(Rng&) {
    auto b = suslin::suslin_beta(2);
    auto R = b.quadric.ring();
    auto expect = poly::IntMatrix::from_elements(R, 2, 2, {R->var("x1"), R->var("x2"), -R->var("y2"), R->var("y1")});
    require(b.beta == expect, "beta_2 is " + b.beta.to_string());
    require(b.det_beta == R->one(), "det beta_2 is " + b.det_beta.to_string());
    return "[[x1, x2], [-y2, y1]]";
}

std::string hopf(Rng& rng) {
    require(suslin::hopf_nu_check().ok(), "Q4 relation does not vanish on the image of nu");
    std::uniform_int_distribution<long> d(-4, 4);
    int hits = 0;
    for (int s = 0; s < 20; ++s) {
        std::array<Integer, 4> m2;
        for (auto& v : m2) v = d(rng);
        // m1 = [[a, b], [c, 1]] with a - bc = det m2 + 1.
        const Integer b = d(rng), c = d(rng);
        const std::array<Integer, 4> m1{m2[0] * m2[3] - m2[1] * m2[2] + 1 + b * c, b, c, 1};
        auto img = suslin::hopf_nu(m1, m2);
        require(img[0] * img[2] + img[1] * img[3] == img[4] + img[4] * img[4], "nu leaves Q4 at an integer point");
        ++hits;
    }
    return "symbolic and " + std::to_string(hits) + " integer points";
}

// ---- clutch ----

std::string generator_two(Rng&) {
    auto c = clutch::generator_bundle(2);
    auto d = clutch::verify_cocycle(c).decomposition;
    require(d == clutch::UnitDecomposition{}, "det decomposition " + d.to_string());
    auto bad = c;
    bad.at(0, 0) = -bad.at(0, 0);
    try {
        clutch::verify_cocycle(bad);
    } catch (const InvalidCocycle&) {
        return "det (+1, 0, 0); sign-flipped control rejected";
    }
    throw VerificationFailure("sign-flipped cocycle accepted");
}

std::string generator_bundles(Rng&) {
    for (unsigned n = 1; n <= 3; ++n) clutch::verify_cocycle(clutch::generator_bundle(n));
    return "n = 1..3";
}

std::string line_group_law(Rng&) {
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
            auto lhs = clutch::clutch_cocycle(clutch::line_map(a) * clutch::line_map(b), 1);
            require(lhs == clutch::clutch_cocycle(clutch::line_map(a), 1) * clutch::clutch_cocycle(clutch::line_map(b), 1),
                    "clutching is not multiplicative for degrees " + std::to_string(a) + ", " + std::to_string(b));
            require(clutch::verify_cocycle(lhs).decomposition.x1_pow == a + b, "x1 exponent is not additive");
        }
    return "degrees -3..3";
}

std::string functoriality(Rng& rng) {
    int samples = 0;
    for (unsigned n = 1; n <= 2; ++n) {
        auto R = QuadricRing::odd(n).ring();
        for (std::size_t rank : {2u, 3u}) {
            auto elementary = [&] {
                auto e = poly::IntMatrix::identity(R, rank);
                std::uniform_int_distribution<std::size_t> idx(0, rank - 1);
                std::size_t i = idx(rng), j = idx(rng);
                if (i == j) j = (i + 1) % rank;
                e.set(i, j, poly::random_element(R, rng, {2, 2, 3}));
                return e;
            };
            for (int s = 0; s < 4; ++s, ++samples) {
                auto f1 = elementary() * elementary(), f2 = elementary() * elementary();
                require(clutch::clutch_cocycle(f1 * f2, n) == clutch::clutch_cocycle(f1, n) * clutch::clutch_cocycle(f2, n),
                        "g(f1 f2) != g(f1) g(f2)");
            }
        }
    }
    return std::to_string(samples) + " products of elementary matrices";
}

// ---- sphere ----

std::string derive_even(Rng&) {
    using namespace spherecalc;
    for (unsigned n = 1; n <= 10; ++n) {
        auto t = spherecalc::derive_even(n);
        replay(t);
        replay(trace_from_json(to_json(t)));
        require(bidegree(t.lhs) == Bidegree{int(n), int(n), false}, "bidegree of Qeven(" + std::to_string(n) + ")");
        require(bidegree(Term::susp(Term::quad_odd(long(n)))) == Bidegree{int(n), int(n), false},
                "bidegree of Susp(Qodd(" + std::to_string(n) + "))");
    }
    return "n = 1..10 replayed";
}

std::string derive_contractible(Rng&) {
    for (unsigned n = 1; n <= 6; ++n) spherecalc::replay(spherecalc::derive_contractible(n));
    return "n = 1..6 replayed";
}

std::string classifier(Rng&) {
    using namespace spherecalc;
    for (unsigned i = 0; i <= 20; ++i)
        for (unsigned j = 0; j <= 20; ++j) {
            auto v = classify_smooth_model(i, j);
            const std::string at = " at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
            if (i > j)
                require(v.kind == Verdict::Kind::not_smooth, "expected NotSmooth" + at);
            else if (i + 1 >= j)
                require(v.kind == Verdict::Kind::smooth_model && bidegree(*v.witness) == Bidegree{int(i), int(j), false},
                        "expected a witness of matching bidegree" + at);
            else
                require(v.kind == Verdict::Kind::open_case && !v.witness, "expected OpenCase" + at);
        }
    return "0 <= i, j <= 20";
}

std::string parse_round_trip(Rng& rng) {
    using namespace spherecalc;
    std::uniform_int_distribution<int> pick(0, 6), idx(1, 5);
    auto gen = [&](auto& self, int depth) -> Term {
        int k = depth > 3 ? pick(rng) % 5 : pick(rng);
        switch (k) {
            case 0: return Term::s1();
            case 1: return Term::gm();
            case 2: return Term::p1();
            case 3: return Term::quad_odd(idx(rng));
            case 4: return Term::quad_even(idx(rng));
            default: return Term::smash(self(self, depth + 1), self(self, depth + 1));
        }
    };
    for (int s = 0; s < 200; ++s) {
        Term t = gen(gen, 0);
        const std::string once = t.to_string();
        require(parse_term(once) == t, "parse(print(t)) != t for " + once);
        require(normal_sphere(t) == normal_sphere(parse_term(once)), "normal form changed for " + once);
    }
    return "200 random terms";
}

struct Check {
    const char* suite;
    const char* name;
    std::function<std::string(Rng&)> run;
};

const std::vector<Check>& checks() {
    static const std::vector<Check> all = {
        {"poly", "poly.ring-axioms", ring_axioms},
        {"poly", "poly.normal-form", normal_form},
        {"poly", "poly.hom-law", hom_law},
        {"poly", "poly.det-multiplicative", det_multiplicative},
        {"suslin", "suslin.psi-identity", psi_identity},
        {"suslin", "suslin.identities", suslin_identities},
        {"suslin", "suslin.beta2", beta2_ground_truth},
        {"suslin", "suslin.beta3", [](Rng&) { return beta(3); }},
        {"suslin", "suslin.beta4", [](Rng&) { return beta(4); }},
        {"suslin", "suslin.beta5",
         [](Rng&) -> std::string {
             try {
                 suslin::suslin_beta(5);
             } catch (const ReductionNotFound& e) {
                 throw Skip{e.what()};
             }
             return "found";
         }},
        {"suslin", "suslin.hopf", hopf},
        {"clutch", "clutch.generator-2", generator_two},
        {"clutch", "clutch.generator-bundles", generator_bundles},
        {"clutch", "clutch.line-group-law", line_group_law},
        {"clutch", "clutch.functoriality", functoriality},
        {"sphere", "sphere.parse-round-trip", parse_round_trip},
        {"sphere", "sphere.derive-even", derive_even},
        {"sphere", "sphere.derive-contractible", derive_contractible},
        {"sphere", "sphere.classifier", classifier},
    };
    return all;
}

CheckRecord run_one(const Check& c, std::uint64_t seed) {
    Rng rng = poly::seeded_rng(seed, c.name);
    const auto t0 = std::chrono::steady_clock::now();
    CheckRecord r{c.name, CheckRecord::Status::pass, 0, {}};
    try {
        r.detail = c.run(rng);
    } catch (const Skip& s) {
        r.status = CheckRecord::Status::skipped;
        r.detail = s.why;
    } catch (const std::exception& e) {
        r.status = CheckRecord::Status::fail;
        r.detail = e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

std::vector<std::string> suite_names() { return {"all", "poly", "suslin", "clutch", "sphere"}; }

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw InvalidArgument("unknown suite " + suite);

    std::vector<std::future<CheckRecord>> pending;
    for (const auto& c : checks())
        if (suite == "all" || suite == c.suite)
            pending.push_back(std::async(std::launch::async, run_one, std::cref(c), seed));
    SuiteReport r{suite, seed, {}};
    for (auto& f : pending) r.checks.push_back(f.get());
    return r;
}

std::size_t SuiteReport::count(CheckRecord::Status s) const {
    std::size_t k = 0;
    for (const auto& c : checks) k += c.status == s;
    return k;
}

const char* to_string(CheckRecord::Status s) {
    switch (s) {
        case CheckRecord::Status::pass: return "pass";
        case CheckRecord::Status::fail: return "fail";
        case CheckRecord::Status::skipped: return "skipped";
    }
    return "?";
}

poly::Json to_json(const SuiteReport& r, bool timing) {
    poly::Json checks = poly::Json::array();
    for (const auto& c : r.checks) {
        poly::Json j{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
        if (timing) j["elapsed_ms"] = c.elapsed_ms;
        checks.push_back(std::move(j));
    }
    using S = CheckRecord::Status;
    return {{"suite", r.suite},
            {"seed", r.seed},
            {"checks", std::move(checks)},
            {"summary", {{"pass", r.count(S::pass)}, {"fail", r.count(S::fail)}, {"skipped", r.count(S::skipped)}}}};
}

std::string to_text(const SuiteReport& r) {
    std::string out;
    for (const auto& c : r.checks) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%9.1f ms", c.elapsed_ms);
        std::string status = to_string(c.status);
        status.resize(8, ' ');
        out += status + ms + "  " + c.name + "  " + c.detail + "\n";
    }
    using S = CheckRecord::Status;
    out += std::to_string(r.count(S::pass)) + " passed, " + std::to_string(r.count(S::fail)) + " failed, " +
           std::to_string(r.count(S::skipped)) + " skipped (suite " + r.suite + ", seed " + std::to_string(r.seed) +
           ")\n";
    return out;
}

}  // namespace qsphere
