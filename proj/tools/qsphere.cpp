// qsphere: command-line front end.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsphere/clutch/cocycle.hpp"
#include "qsphere/errors.hpp"
#include "qsphere/spherecalc/rules.hpp"
#include "qsphere/suite.hpp"
#include "qsphere/suslin/suslin.hpp"

using namespace qsphere;
using poly::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Usage : Error {
    using Error::Error;
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
    std::string format = "text";
    std::uint64_t seed = 0;

    bool json() const { return format == "json"; }
};

int cmd_suslin(const Options& o, unsigned n, bool beta) {
    if (beta) {
        auto r = suslin::suslin_beta(n);
        if (o.json())
            emit(suslin::to_json(r));
        else
            std::cout << "beta_" << n << " =\n"
                      << r.beta.to_string() << "\ndet = " << r.det_beta.to_string() << "\n"
                      << r.certificate.steps.size() << " elementary steps reduce alpha_" << n << " to beta_" << n
                      << " (+) I\n";
        return kOk;
    }
    auto cert = suslin::verify_suslin(n);
    auto a = suslin::alpha(n);
    if (o.json()) {
        Json j = poly::to_json(a);
        j["n"] = n;
        j["ring"] = {{"vars", a.ring()->names()}};
        j["identity_holds"] = cert.identity_holds;
        if (cert.det) j["det"] = poly::to_json(*cert.det);
        if (cert.det_holds) j["det_holds"] = *cert.det_holds;
        emit(j);
    } else {
        std::cout << "alpha_" << n << " =\n" << a.to_string() << "\nalpha(x,y) alpha(y,x)^T = ("
                  << cert.pairing.to_string() << ") I: ok\n";
        if (cert.det) std::cout << "det = " << cert.det->to_string() << ": ok\n";
    }
    return kOk;
}

clutch::Cocycle build_cocycle(unsigned n, const std::string& map, const std::string& file) {
    if (map == "beta") return clutch::generator_bundle(n);
    if (map.rfind("line:", 0) == 0) {
        if (n != 1) throw Usage("--map line:d needs --n 1");
        int d = 0;
        try {
            std::size_t used = 0;
            d = std::stoi(map.substr(5), &used);
            if (used != map.size() - 5) throw std::invalid_argument(map);
        } catch (const std::logic_error&) {
            throw Usage("bad degree in --map " + map);
        }
        return clutch::clutch_cocycle(clutch::line_map(d), 1, "line " + std::to_string(d));
    }
    if (map == "file") {
        if (file.empty()) throw Usage("--map file needs a PATH");
        auto q = quadric::QuadricRing::odd(n);
        return clutch::clutch_cocycle(poly::matrix_from_json<poly::Integer>(q.ring(), read_json(file)), n, file);
    }
    throw Usage("--map must be beta, line:d or file");
}

int cmd_cocycle(const Options& o, unsigned n, const std::string& map, const std::string& file) {
    auto c = build_cocycle(n, map, file);
    if (o.json()) {
        emit(clutch::to_json(c));
        return kOk;
    }
    auto cert = clutch::verify_cocycle(c);
    std::cout << "cocycle on " << c.quadric.name() << ", rank " << c.rank << " (" << c.provenance << ")\n";
    for (std::size_t i = 0; i < c.rank; ++i) {
        for (std::size_t j = 0; j < c.rank; ++j) std::cout << (j ? "  " : "  [") << c.at(i, j).to_string();
        std::cout << "]\n";
    }
    std::cout << "det = " << cert.det.to_string() << " = " << cert.decomposition.to_string() << "\n";
    return kOk;
}

int cmd_verify(const Options& o, const std::string& cocycle, const std::string& trace, const std::string& beta) {
    const int given = !cocycle.empty() + !trace.empty() + !beta.empty();
    if (given != 1) throw Usage("verify needs exactly one of --cocycle, --trace, --suslin");
    std::string what, detail;
    try {
        if (!cocycle.empty()) {
            what = "cocycle";
            auto cert = clutch::verify_cocycle(clutch::cocycle_from_json(read_json(cocycle)));
            detail = "det unit " + cert.decomposition.to_string();
        } else if (!trace.empty()) {
            what = "trace";
            auto t = spherecalc::trace_from_json(read_json(trace));
            spherecalc::replay(t);
            detail = std::to_string(t.steps.size()) + " steps, " + t.lhs.to_string() + " ~ " + t.rhs.to_string();
        } else {
            what = "suslin";
            auto r = suslin::beta_from_json(read_json(beta));
            detail = "beta_" + std::to_string(r.n) + " certificate replays";
        }
    } catch (const Usage&) {
        throw;
    } catch (const Error& e) {
        if (o.json())
            emit({{"artifact", what}, {"ok", false}, {"error", e.what()}});
        else
            std::cout << "FAIL " << what << ": " << e.what() << "\n";
        return kFailed;
    }
    if (o.json())
        emit({{"artifact", what}, {"ok", true}, {"detail", detail}});
    else
        std::cout << "ok " << what << ": " << detail << "\n";
    return kOk;
}

int cmd_derive(const Options& o, const std::string& target, unsigned n, bool trace) {
    auto t = target == "qeven" ? spherecalc::derive_even(n) : spherecalc::derive_contractible(n);
    if (o.json()) {
        if (trace)
            emit(spherecalc::to_json(t));
        else
            emit({{"goal", {t.lhs.to_string(), t.rhs.to_string()}}, {"steps", t.steps.size()}, {"replayed", true}});
    } else if (trace) {
        std::cout << spherecalc::to_text(t);
    } else {
        std::cout << t.lhs.to_string() << "  ~  " << t.rhs.to_string() << "  (" << t.steps.size()
                  << " steps, replayed)\n";
    }
    return kOk;
}

int cmd_classify(const Options& o, unsigned i, unsigned j) {
    auto v = spherecalc::classify_smooth_model(i, j);
    if (o.json())
        emit(spherecalc::to_json(v, i, j));
    else
        std::cout << v.to_string() << "\n";
    return kOk;
}

int cmd_check(const Options& o, const std::string& suite, bool timing) {
    auto r = run_suite(suite, o.seed);
    if (o.json())
        emit(to_json(r, timing));
    else
        std::cout << to_text(r);
    return r.ok() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsphere: quadrics, Suslin matrices, clutching cocycles and sphere derivations"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "output encoding")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", o.seed, "seed for randomized checks");
    app.fallthrough();

    unsigned n = 1;
    bool beta = false;
    auto* suslin_cmd = app.add_subcommand("suslin", "alpha_n and its identities, or beta_n with --beta");
    suslin_cmd->add_option("--n", n, "1..5 (beta: 1..4)")->required()->check(CLI::Range(1u, suslin::kMaxAlpha));
    suslin_cmd->add_flag("--beta", beta, "reduce alpha_n to beta_n (+) I");

    std::string map = "beta", map_file;
    auto* cocycle_cmd = app.add_subcommand("cocycle", "clutching cocycle on Q_{2n}");
    cocycle_cmd->add_option("--n", n, "n >= 1")->required()->check(CLI::Range(1u, 4u));
    cocycle_cmd->add_option("--map", map, "beta | line:d | file");
    cocycle_cmd->add_option("path", map_file, "matrix JSON for --map file");

    std::string v_cocycle, v_trace, v_suslin;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a JSON artifact");
    verify_cmd->add_option("--cocycle", v_cocycle, "cocycle JSON");
    verify_cmd->add_option("--trace", v_trace, "derivation trace JSON");
    verify_cmd->add_option("--suslin", v_suslin, "beta JSON from `suslin --beta`");

    std::string target = "qeven";
    bool trace = false;
    auto* derive_cmd = app.add_subcommand("derive", "derive Qeven(n) ~ P1^n or X(n) ~ pt");
    derive_cmd->add_option("--target", target)->check(CLI::IsMember({"qeven", "x"}));
    derive_cmd->add_option("--n", n)->required()->check(CLI::Range(1u, 1000u));
    derive_cmd->add_flag("--trace", trace, "print every step");

    unsigned i = 0, j = 0;
    auto* classify_cmd = app.add_subcommand("classify", "smooth model for S1^i /\\ Gm^j");
    classify_cmd->add_option("--i", i)->required();
    classify_cmd->add_option("--j", j)->required();

    std::string suite = "all";
    bool timing = false;
    auto* check_cmd = app.add_subcommand("check", "run the verification suites");
    check_cmd->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    check_cmd->add_flag("--timing", timing, "include elapsed_ms in JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*suslin_cmd) return cmd_suslin(o, n, beta);
        if (*cocycle_cmd) return cmd_cocycle(o, n, map, map_file);
        if (*verify_cmd) return cmd_verify(o, v_cocycle, v_trace, v_suslin);
        if (*derive_cmd) return cmd_derive(o, target, n, trace);
        if (*classify_cmd) return cmd_classify(o, i, j);
        if (*check_cmd) return cmd_check(o, suite, timing);
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kFailed;
    } catch (const InvalidCocycle& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kFailed;
    } catch (const ReductionNotFound& e) {
        std::cerr << "reduction not found: " << e.what() << "\n";
        return kFailed;
    } catch (const NonUnitDeterminant& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
