// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qsphere/clutch/cocycle.hpp"
#include "qsphere/errors.hpp"
#include "qsphere/quadric/charts.hpp"
#include "qsphere/spherecalc/rules.hpp"
#include "qsphere/suite.hpp"
#include "qsphere/suslin/suslin.hpp"

using namespace qsphere;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Fail {
    std::string why;
};

void need(bool ok, const std::string& why) {
    if (!ok) throw Fail{why};
}

int failures = 0;

void criterion(int id, const char* name, const std::function<std::string()>& body) {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const Fail& f) {
        ok = false;
        detail = f.why;
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    failures += !ok;
    std::printf("%s %d %s (%.0f ms): %s\n", ok ? "PASS" : "FAIL", id, name, ms_since(t0), detail.c_str());
    std::fflush(stdout);
}

std::string psi_identity() {
    double worst = 0;
    for (unsigned n = 1; n <= 6; ++n) {
        const auto t0 = Clock::now();
        auto p = quadric::psi(n);
        const double ms = ms_since(t0);
        need(p.relation_image.is_zero(), "relation image nonzero for n = " + std::to_string(n));
        need(ms < 1000, "n = " + std::to_string(n) + " took " + std::to_string(ms) + " ms");
        worst = std::max(worst, ms);
    }
    return "n = 1..6 exactly zero, slowest " + std::to_string(static_cast<int>(worst)) + " ms";
}

std::string suslin_identities() {
    const auto t0 = Clock::now();
    for (unsigned n = 1; n <= 5; ++n) {
        auto c = suslin::verify_suslin(n);
        need(c.identity_holds, "alpha identity fails for n = " + std::to_string(n));
        if (n >= 2 && n <= 4) need(c.det_holds && *c.det_holds, "det law fails for n = " + std::to_string(n));
    }
    need(ms_since(t0) < 30000, "over 30 s");
    return "identity n = 1..5, det n = 2..4";
}

std::string beta2() {
    auto b = suslin::suslin_beta(2);
    auto R = b.quadric.ring();
    auto expect = poly::IntMatrix::from_elements(R, 2, 2, {R->parse("x1"), R->parse("x2"), R->parse("-y2"), R->parse("y1")});
    need(b.beta == expect, "beta_2 = " + b.beta.to_string());
    // det over the free ring minus 1 must be a multiple of the relation: here it is the relation itself.
    const auto& A = *b.quadric.ambient();
    auto det_free = A.parse("x1*y1 - x2*(-y2)");
    need(A.sub(A.sub(det_free.value(), A.constant_poly(1)), b.quadric.relation()).is_zero(),
         "det beta_2 - 1 is not the relation");
    need(b.det_beta == R->one(), "reduced det is " + b.det_beta.to_string());
    return "[[x1, x2], [-y2, y1]], det = 1 + (x1 y1 + x2 y2 - 1)";
}

std::string beta3() {
    auto b = suslin::suslin_beta(3);
    need(b.certificate.replay(b.alpha) == suslin::with_identity_block(b.beta, 1), "replay differs from beta_3 (+) I_1");
    auto R = b.quadric.ring();
    need(b.det_beta == R->one() || b.det_beta == -R->one(), "det beta_3 = " + b.det_beta.to_string());
    return std::to_string(b.certificate.steps.size()) + " steps replay exactly, det " + b.det_beta.to_string();
}

std::string generator() {
    auto c = clutch::generator_bundle(2);
    auto q = c.quadric;
    auto frac = [&](const char* num, unsigned a, unsigned b) { return quadric::LocalizedElement(q.ring()->parse(num), a, b); };
    need(c.rank == 2, "rank " + std::to_string(c.rank));
    need(c.at(0, 0) == frac("x1", 1, 0) && c.at(0, 1) == frac("x2", 1, 0) && c.at(1, 0) == frac("-y2", 0, 1) &&
             c.at(1, 1) == frac("y1", 0, 1),
         "entries differ from [[x1/z, x2/z], [-y2/(1+z), y1/(1+z)]]");
    auto d = clutch::verify_cocycle(c).decomposition;
    need(d == clutch::UnitDecomposition{1, 0, 0, 0}, "det decomposition " + d.to_string());
    auto bad = c;
    bad.at(0, 0) = -bad.at(0, 0);
    try {
        clutch::verify_cocycle(bad);
    } catch (const InvalidCocycle& e) {
        return "entries match, det (+1, 0, 0), control rejected by " + e.check();
    }
    throw Fail{"sign-flipped control accepted"};
}

std::string hopf() {
    const auto t0 = Clock::now();
    auto h = suslin::hopf_nu_check();
    need(h.ok(), "residue " + h.residue.to_string());
    need(ms_since(t0) < 5000, "over 5 s");
    return "Q4 relation reduces to 0 modulo the Q7 ideal";
}

std::string spheres() {
    using namespace spherecalc;
    for (unsigned n = 1; n <= 10; ++n) {
        auto t = derive_even(n);
        replay(t);
        replay(trace_from_json(poly::Json::parse(to_json(t).dump())));
        const Bidegree nn{int(n), int(n), false};
        need(bidegree(Term::quad_even(long(n))) == nn, "bidegree Qeven(" + std::to_string(n) + ")");
        need(bidegree(Term::susp(Term::quad_odd(long(n)))) == nn, "bidegree Susp(Qodd(" + std::to_string(n) + "))");
        need(t.rhs == Term::smash_power(Term::p1(), n), "goal of derive_even(" + std::to_string(n) + ")");
    }
    for (unsigned n = 1; n <= 6; ++n) {
        auto t = derive_contractible(n);
        replay(t);
        need(t.rhs == Term::point(), "goal of derive_contractible(" + std::to_string(n) + ")");
    }
    return "derive_even 1..10 and derive_contractible 1..6 replayed; bidegrees (n, n)";
}

std::string classifier() {
    using namespace spherecalc;
    int smooth = 0, not_smooth = 0, open = 0;
    for (unsigned i = 0; i <= 20; ++i)
        for (unsigned j = 0; j <= 20; ++j) {
            auto v = classify_smooth_model(i, j);
            const std::string at = "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
            if (i > j) {
                need(v.kind == Verdict::Kind::not_smooth, at + " should be NotSmooth");
                ++not_smooth;
            } else if (i == j || i + 1 == j) {
                need(v.kind == Verdict::Kind::smooth_model && v.witness, at + " should have a witness");
                const Kind k = v.witness->kind();
                need(k == (i == j ? Kind::quad_even : Kind::quad_odd), at + " witness is not the expected quadric");
                need(bidegree(*v.witness) == Bidegree{int(i), int(j), false}, at + " witness bidegree");
                ++smooth;
            } else {
                need(v.kind == Verdict::Kind::open_case && !v.witness, at + " should be OpenCase");
                ++open;
            }
        }
    return std::to_string(smooth) + " smooth, " + std::to_string(not_smooth) + " not smooth, " + std::to_string(open) +
           " open";
}

std::string suites() {
    const auto t0 = Clock::now();
    auto r = run_suite("all", 7);
    const double ms = ms_since(t0);
    for (const char* name : {"poly.ring-axioms", "poly.normal-form", "poly.hom-law"}) {
        bool seen = false;
        for (const auto& c : r.checks)
            if (c.name == name) {
                seen = true;
                need(c.status == CheckRecord::Status::pass, std::string(name) + ": " + c.detail);
            }
        need(seen, std::string(name) + " missing from the suite");
    }
    for (const auto& c : r.checks) need(c.status != CheckRecord::Status::fail, c.name + ": " + c.detail);
    need(ms < 180000, "suite took over 3 minutes");
    return std::to_string(r.count(CheckRecord::Status::pass)) + " pass, " +
           std::to_string(r.count(CheckRecord::Status::skipped)) + " skipped, seed 7, " +
           std::to_string(static_cast<int>(ms)) + " ms";
}

}  // namespace

int main() {
    criterion(1, "psi-identity", psi_identity);
    criterion(2, "suslin-identities", suslin_identities);
    criterion(3, "beta2-ground-truth", beta2);
    criterion(4, "beta3-certificate", beta3);
    criterion(5, "generator-cocycle", generator);
    criterion(6, "hopf-nu", hopf);
    criterion(7, "sphere-derivations", spheres);
    criterion(8, "classifier-table", classifier);
    criterion(9, "algebra-suites", suites);
    return failures ? 1 : 0;
}
