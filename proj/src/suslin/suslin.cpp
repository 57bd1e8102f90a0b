#include "qsphere/suslin/suslin.hpp"

#include <algorithm>
#include <tuple>

#include "qsphere/errors.hpp"

namespace qsphere::suslin {

using poly::Json;

RingPtr free_ring(unsigned n) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    return quadric::QuadricRing::odd(n).ambient();
}

IntMatrix alpha(const std::vector<IntElement>& x, const std::vector<IntElement>& y) {
    if (x.empty() || x.size() != y.size()) throw InvalidArgument("alpha needs two nonempty vectors of equal length");
    const RingPtr ring = x.front().ring();
    if (x.size() == 1) return IntMatrix::from_elements(ring, 1, 1, {x[0]});

    const std::vector<IntElement> xt(x.begin() + 1, x.end()), yt(y.begin() + 1, y.end());
    const IntMatrix top_right = alpha(xt, yt);
    const IntMatrix bottom_left = alpha(yt, xt).transpose();
    const std::size_t h = top_right.rows();

    IntMatrix out(ring, 2 * h, 2 * h);
    for (std::size_t r = 0; r < h; ++r) {
        out.set(r, r, x[0]);
        out.set(h + r, h + r, y[0]);
        for (std::size_t c = 0; c < h; ++c) {
            out.set(r, h + c, top_right(r, c));
            out.set(h + r, c, -bottom_left(r, c));
        }
    }
    return out;
}

namespace {

void check_alpha_range(unsigned n) {
    if (n < 1 || n > kMaxAlpha)
        throw InvalidArgument("alpha_n is supported for 1 <= n <= " + std::to_string(kMaxAlpha));
}

std::pair<std::vector<IntElement>, std::vector<IntElement>> generic_pair(unsigned n) {
    const RingPtr R = free_ring(n);
    std::vector<IntElement> x, y;
    for (unsigned i = 1; i <= n; ++i) {
        x.push_back(R->var("x" + std::to_string(i)));
        y.push_back(R->var("y" + std::to_string(i)));
    }
    return {x, y};
}

IntElement pairing(unsigned n) {
    auto [x, y] = generic_pair(n);
    IntElement s = x[0].ring()->zero();
    for (unsigned i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

IntMatrix alpha(unsigned n) {
    check_alpha_range(n);
    auto [x, y] = generic_pair(n);
    return alpha(x, y);
}

IntMatrix alpha_swapped(unsigned n) {
    check_alpha_range(n);
    auto [x, y] = generic_pair(n);
    return alpha(y, x);
}

SuslinCertificate verify_suslin(unsigned n) {
    check_alpha_range(n);
    const IntMatrix a = alpha(n);
    const IntMatrix product = a * alpha_swapped(n).transpose();
    const IntElement s = pairing(n);

    for (std::size_t r = 0; r < product.rows(); ++r)
        for (std::size_t c = 0; c < product.cols(); ++c) {
            const IntElement expected = r == c ? s : s.ring()->zero();
            if (!(product(r, c) == expected))
                throw VerificationFailure("alpha_" + std::to_string(n) + " identity fails at entry (" +
                                          std::to_string(r) + "," + std::to_string(c) + "): got " +
                                          product(r, c).to_string() + ", expected " + expected.to_string());
        }

    SuslinCertificate cert{n, s, true, std::nullopt, std::nullopt};
    if (n >= 2 && n <= 4) {
        IntElement d = poly::det(a);
        IntElement expected = s.pow(1u << (n - 2));
        if (!(d == expected))
            throw VerificationFailure("det alpha_" + std::to_string(n) + " = " + d.to_string() +
                                      ", expected (sum xi*yi)^" + std::to_string(1u << (n - 2)));
        cert.det = d;
        cert.det_holds = true;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Elementary operations
// ---------------------------------------------------------------------------

namespace {

// Row-major working copy; cheaper to mutate than IntMatrix.
struct Grid {
    std::size_t n;
    std::vector<IntElement> a;

    IntElement& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const IntElement& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    static Grid from(const IntMatrix& m) {
        Grid g{m.rows(), {}};
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) g.a.push_back(m(r, c));
        return g;
    }

    IntMatrix to_matrix(const RingPtr& ring) const { return IntMatrix::from_elements(ring, n, n, a); }

    std::size_t max_terms() const {
        std::size_t best = 0;
        for (const auto& e : a) best = std::max(best, e.value().size());
        return best;
    }

    void row_add(std::size_t i, std::size_t j, const IntElement& s) {
        for (std::size_t c = 0; c < n; ++c)
            if (!(*this)(j, c).is_zero()) (*this)(i, c) += s * (*this)(j, c);
    }
    void col_add(std::size_t i, std::size_t j, const IntElement& s) {
        for (std::size_t r = 0; r < n; ++r)
            if (!(*this)(r, j).is_zero()) (*this)(r, i) += s * (*this)(r, j);
    }
    void row_swap(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) {
            IntElement old_i = (*this)(i, c);
            (*this)(i, c) = -(*this)(j, c);
            (*this)(j, c) = std::move(old_i);
        }
    }
    void col_swap(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) {
            IntElement old_i = (*this)(r, i);
            (*this)(r, i) = -(*this)(r, j);
            (*this)(r, j) = std::move(old_i);
        }
    }
};

void check_step(std::size_t rows, std::size_t cols, const ElementaryStep& s) {
    const std::size_t bound = s.side == ElementaryStep::Side::row ? rows : cols;
    if (s.i >= bound || s.j >= bound || s.i == s.j) throw InvalidArgument("elementary step has invalid indices");
}

}  // namespace

void apply_step(IntMatrix& m, const ElementaryStep& step) {
    check_step(m.rows(), m.cols(), step);
    using Side = ElementaryStep::Side;
    using Kind = ElementaryStep::Kind;
    const std::size_t i = step.i, j = step.j;
    if (step.kind == Kind::add_multiple) {
        if (step.side == Side::row)
            for (std::size_t c = 0; c < m.cols(); ++c) m.set(i, c, m(i, c) + step.scalar * m(j, c));
        else
            for (std::size_t r = 0; r < m.rows(); ++r) m.set(r, i, m(r, i) + step.scalar * m(r, j));
    } else {
        if (step.side == Side::row)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                IntElement old_i = m(i, c);
                m.set(i, c, -m(j, c));
                m.set(j, c, old_i);
            }
        else
            for (std::size_t r = 0; r < m.rows(); ++r) {
                IntElement old_i = m(r, i);
                m.set(r, i, -m(r, j));
                m.set(r, j, old_i);
            }
    }
}

IntMatrix ElementaryCertificate::replay(const IntMatrix& start) const {
    IntMatrix m = start;
    for (const auto& s : steps) apply_step(m, s);
    return m;
}

IntMatrix with_identity_block(const IntMatrix& beta, std::size_t k) {
    const std::size_t n = beta.rows();
    IntMatrix out = IntMatrix::identity(beta.ring(), n + k);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.set(r, c, beta(r, c));
    return out;
}

// ---------------------------------------------------------------------------
// beta extraction
// ---------------------------------------------------------------------------

namespace {

using Side = ElementaryStep::Side;
using Kind = ElementaryStep::Kind;

// Current matrix M, its inverse B, and the steps taken so far. M always has the shape
// [[active block, 0], [0, I]].
struct ReductionState {
    Grid m;
    Grid b;
    std::size_t active;
    std::vector<ElementaryStep> steps;

    void row_add(std::size_t i, std::size_t j, const IntElement& s) {
        m.row_add(i, j, s);
        b.col_add(j, i, -s);  // B <- B E^{-1}: column j -= s * column i
        steps.push_back({Side::row, Kind::add_multiple, i, j, s});
    }
    void col_add(std::size_t i, std::size_t j, const IntElement& s) {
        m.col_add(i, j, s);
        b.row_add(j, i, -s);  // B <- E^{-1} B: row j -= s * row i
        steps.push_back({Side::col, Kind::add_multiple, i, j, s});
    }
    void row_swap(std::size_t i, std::size_t j) {
        m.row_swap(i, j);
        b.col_swap(i, j);
        steps.push_back({Side::row, Kind::swap_with_sign, i, j, m(0, 0).ring()->one()});
    }
    void col_swap(std::size_t i, std::size_t j) {
        m.col_swap(i, j);
        b.row_swap(i, j);
        steps.push_back({Side::col, Kind::swap_with_sign, i, j, m(0, 0).ring()->one()});
    }
};

// Optional preparatory move on M: line `target` += scalar * line `source`.
struct Prep {
    Side side;
    std::size_t target, source;
    IntElement scalar;
};

struct Pivot {
    std::size_t row, col;
    int rank;  // 0: zero entry, 1: zero inverse entry, 2: unit inverse entry, 3: needs a prep move
    std::size_t cost;
    std::optional<Prep> prep = std::nullopt;
};

// num / den when den is a single term with coefficient +-1 dividing every term of num.
std::optional<IntElement> monomial_quotient(const IntElement& num, const IntElement& den) {
    if (den.value().size() != 1 || num.is_zero()) return std::nullopt;
    const auto& d = den.value().leading();
    if (d.coef != 1 && d.coef != -1) return std::nullopt;
    std::vector<poly::Term<Integer>> out;
    for (const auto& t : num.value().terms()) {
        if (!d.mono.divides(t.mono)) return std::nullopt;
        out.push_back({t.coef * d.coef, t.mono / d.mono});
    }
    const auto& R = num.ring();
    return R->element(R->canonical(std::move(out)));
}

bool is_sign(const IntElement& e) { return e.value().is_constant() && (e == e.ring()->one() || e == -e.ring()->one()); }

// Row c of B times column c of M is 1 (B M = I). Adding t * B(c, j) * row j to row i for
// every j != i turns M(i, c) into M(i, c) + t * (1 - B(c, i) M(i, c)); that is a unit when
// M(i, c) = 0 (t = 1), when B(c, i) = 0 (t = 1 - M(i, c)), or when B(c, i) = u = +-1 (t = u).
std::vector<Pivot> pivot_candidates(const ReductionState& s) {
    std::vector<Pivot> out;
    auto line_cost = [&](std::size_t i, std::size_t c) {
        std::size_t cost = 0;
        for (std::size_t k = 0; k < s.active; ++k) cost += s.m(i, k).value().size() + s.m(k, c).value().size();
        return cost;
    };
    for (std::size_t c = 0; c < s.active; ++c)
        for (std::size_t i = 0; i < s.active; ++i) {
            const IntElement& mic = s.m(i, c);
            const IntElement& bci = s.b(c, i);
            if (mic.is_zero())
                out.push_back({i, c, 0, line_cost(i, c)});
            else if (bci.is_zero())
                out.push_back({i, c, 1, line_cost(i, c)});
            else if (is_sign(bci))
                out.push_back({i, c, 2, line_cost(i, c)});
        }

    // Entries that a single elementary move turns into a ready pivot: clear M(i, c) or
    // B(c, i) by subtracting a monomial multiple of another line.
    const std::size_t ready = out.size();
    for (std::size_t c = 0; c < s.active; ++c)
        for (std::size_t i = 0; i < s.active; ++i) {
            const IntElement& mic = s.m(i, c);
            const IntElement& bci = s.b(c, i);
            if (mic.is_zero() || bci.is_zero() || is_sign(bci)) continue;
            const std::size_t base = mic.value().size();
            for (std::size_t j = 0; j < s.active; ++j) {
                if (j != i)
                    if (auto q = monomial_quotient(mic, s.m(j, c)))
                        out.push_back({i, c, 3, base + q->value().size(), Prep{Side::row, i, j, -*q}});
                if (j != c)
                    if (auto q = monomial_quotient(mic, s.m(i, j)))
                        out.push_back({i, c, 3, base + q->value().size(), Prep{Side::col, c, j, -*q}});
                // B row c -= q * B row j  <=>  M col j += q * col c
                if (j != c)
                    if (auto q = monomial_quotient(bci, s.b(j, i)))
                        out.push_back({i, c, 3, base + q->value().size(), Prep{Side::col, j, c, *q}});
                // B col i -= q * B col j  <=>  M row j += q * row i
                if (j != i)
                    if (auto q = monomial_quotient(bci, s.b(c, j)))
                        out.push_back({i, c, 3, base + q->value().size(), Prep{Side::row, j, i, *q}});
            }
        }
    auto by_rank_cost = [](const Pivot& p, const Pivot& q) { return std::tie(p.rank, p.cost) < std::tie(q.rank, q.cost); };
    std::stable_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(ready), by_rank_cost);
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(ready), out.end(), by_rank_cost);
    return out;
}

// Creates a unit at (row, col), clears its row and column, and moves it to the last
// active position as +1. Returns false if no unit could be produced there.
bool eliminate(ReductionState& s, const Pivot& p) {
    const std::size_t i = p.row, c = p.col, last = s.active - 1;
    const auto& R = s.m(0, 0).ring();
    if (p.prep) {
        if (p.prep->side == Side::row)
            s.row_add(p.prep->target, p.prep->source, p.prep->scalar);
        else
            s.col_add(p.prep->target, p.prep->source, p.prep->scalar);
    }

    IntElement t = R->one(), u = R->one();
    if (s.m(i, c).is_zero()) {
    } else if (s.b(c, i).is_zero()) {
        t = R->one() - s.m(i, c);
    } else if (is_sign(s.b(c, i))) {
        t = u = s.b(c, i);
    } else {
        return false;
    }

    std::vector<std::pair<std::size_t, IntElement>> mult;
    for (std::size_t j = 0; j < s.active; ++j) {
        if (j == i) continue;
        IntElement f = t * s.b(c, j);
        if (!f.is_zero()) mult.emplace_back(j, std::move(f));
    }
    for (const auto& [j, f] : mult) s.row_add(i, j, f);
    if (!(s.m(i, c) == u)) return false;

    // u^{-1} = u
    for (std::size_t r = 0; r < s.active; ++r)
        if (r != i && !s.m(r, c).is_zero()) s.row_add(r, i, -(s.m(r, c) * u));
    for (std::size_t l = 0; l < s.active; ++l)
        if (l != c && !s.m(i, l).is_zero()) s.col_add(l, c, -(s.m(i, l) * u));

    if (i != last) s.row_swap(i, last);
    if (c != last) s.col_swap(c, last);
    if (!(s.m(last, last) == R->one())) {
        // Two signed swaps negate both lines, turning -1 into +1.
        s.row_swap(last, 0);
        s.row_swap(last, 0);
    }
    --s.active;
    return true;
}

struct Search {
    const BetaOptions& opt;
    std::size_t target;
    std::size_t nodes = 0;

    bool run(ReductionState& s) {
        if (s.active == target) return true;
        std::size_t tried = 0;
        for (const auto& p : pivot_candidates(s)) {
            if (tried >= opt.branching || nodes >= opt.node_budget) break;
            ++nodes;
            ReductionState next = s;
            if (!eliminate(next, p)) continue;
            ++tried;
            if (next.m.max_terms() > opt.term_budget) continue;
            if (run(next)) {
                s = std::move(next);
                return true;
            }
        }
        return false;
    }
};

}  // namespace

BetaResult suslin_beta(unsigned n, const BetaOptions& options) {
    check_alpha_range(n);
    if (n > kMaxBeta)
        throw ReductionNotFound("beta_" + std::to_string(n) + " is not searched: the pivot search on the " +
                                std::to_string(1u << (n - 1)) + "x" + std::to_string(1u << (n - 1)) +
                                " matrix does not finish in practical time");
    quadric::QuadricRing q = quadric::QuadricRing::odd(n);
    const IntMatrix a = alpha(n).in_ring(q.ring());
    const std::size_t size = a.rows();

    ReductionState state{Grid::from(a), Grid::from(alpha_swapped(n).transpose().in_ring(q.ring())), size, {}};
    Search search{options, n};
    if (!search.run(state))
        throw ReductionNotFound("pivot search for beta_" + std::to_string(n) + " exhausted (branching " +
                                std::to_string(options.branching) + ", term budget " +
                                std::to_string(options.term_budget) + ", " + std::to_string(search.nodes) + " nodes tried)");

    IntMatrix beta(q.ring(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) beta.set(r, c, state.m(r, c));

    BetaResult result{n, q, a, beta, ElementaryCertificate{std::move(state.steps)}, poly::det(beta)};
    verify_beta(result);
    return result;
}

void verify_beta(const BetaResult& r) {
    const std::size_t size = std::size_t{1} << (r.n - 1);
    if (r.beta.rows() != r.n || r.beta.cols() != r.n)
        throw VerificationFailure("beta has the wrong shape");
    const IntMatrix replayed = r.certificate.replay(r.alpha);
    const IntMatrix expected = with_identity_block(r.beta, size - r.n);
    if (!(replayed == expected))
        throw VerificationFailure("certificate replay does not reproduce beta (+) I");
    const IntElement d = poly::det(r.beta);
    const auto& R = r.beta.ring();
    // alpha_1 = (x1) has determinant x1, a unit of O(Q1) but not +-1; the +-1 law
    // comes from det alpha_n = (sum xi*yi)^(2^(n-2)) and needs n >= 2.
    if (r.n == 1) {
        if (!(d * R->var("y1") == R->one()))
            throw VerificationFailure("det beta_1 = " + d.to_string() + " is not a unit");
        return;
    }
    if (!(d == R->one()) && !(d == -R->one()))
        throw VerificationFailure("det beta_" + std::to_string(r.n) + " = " + d.to_string() + " is not +-1");
}

// ---------------------------------------------------------------------------
// Hopf map
// ---------------------------------------------------------------------------

HopfCertificate hopf_nu_check() {
    const RingPtr base = poly::IntRing::free({"a", "b", "c", "d", "e", "f", "g", "h"});
    const IntElement rel = base->parse("a*d - b*c - (e*h - f*g) - 1");
    const RingPtr R = poly::IntRing::quotient(base, rel.value());

    auto v = [&](const char* name) { return R->var(name); };
    const IntElement a = v("a"), b = v("b"), c = v("c"), d = v("d");
    const IntElement e = v("e"), f = v("f"), g = v("g"), h = v("h");
    // [[p, q], [r, s]] = M1 * M2
    const IntElement p = a * e + b * g, q = a * f + b * h;
    const IntElement r = c * e + d * g, s = c * f + d * h;
    const IntElement z = e * h - f * g;

    const IntElement x1 = p, x2 = q, y1 = s, y2 = -r;
    const IntElement residue = x1 * y1 + x2 * y2 - z * (R->one() + z);
    return HopfCertificate{R, {x1, x2, y1, y2, z}, residue};
}

std::array<Integer, 5> hopf_nu(const std::array<Integer, 4>& m1, const std::array<Integer, 4>& m2) {
    const Integer det1 = m1[0] * m1[3] - m1[1] * m1[2];
    const Integer det2 = m2[0] * m2[3] - m2[1] * m2[2];
    if (det1 - det2 != 1) throw InvalidArgument("hopf_nu needs det M1 - det M2 = 1");
    const Integer p = m1[0] * m2[0] + m1[1] * m2[2];
    const Integer q = m1[0] * m2[1] + m1[1] * m2[3];
    const Integer r = m1[2] * m2[0] + m1[3] * m2[2];
    const Integer s = m1[2] * m2[1] + m1[3] * m2[3];
    return {p, q, s, Integer(-r), det2};
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

Json to_json(const ElementaryCertificate& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back({{"side", s.side == Side::row ? "row" : "col"},
                         {"kind", s.kind == Kind::add_multiple ? "add-multiple" : "swap-with-sign"},
                         {"i", s.i},
                         {"j", s.j},
                         {"scalar", poly::to_json(s.scalar)}});
    return {{"steps", std::move(steps)}};
}

ElementaryCertificate certificate_from_json(const poly::IntRing& ring, const Json& j) {
    try {
        ElementaryCertificate c;
        for (const auto& s : j.at("steps")) {
            const auto side = s.at("side").get<std::string>();
            const auto kind = s.at("kind").get<std::string>();
            if (side != "row" && side != "col") throw InvalidArgument("step side must be row or col");
            if (kind != "add-multiple" && kind != "swap-with-sign")
                throw InvalidArgument("step kind must be add-multiple or swap-with-sign");
            c.steps.push_back({side == "row" ? Side::row : Side::col,
                               kind == "add-multiple" ? Kind::add_multiple : Kind::swap_with_sign,
                               s.at("i").get<std::size_t>(), s.at("j").get<std::size_t>(),
                               poly::element_from_json(ring, s.at("scalar"))});
        }
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed certificate JSON: ") + ex.what());
    }
}

Json to_json(const BetaResult& r) {
    Json j = poly::to_json(r.beta);
    j["n"] = r.n;
    j["ring"] = {{"vars", r.quadric.ring()->names()},
                 {"relation", poly::to_json(*r.quadric.ambient(), r.quadric.relation())}};
    j["det"] = poly::to_json(r.det_beta);
    j["certificate"] = to_json(r.certificate);
    return j;
}

BetaResult beta_from_json(const Json& j) {
    unsigned n = 0;
    try {
        n = j.at("n").get<unsigned>();
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed beta JSON: ") + ex.what());
    }
    check_alpha_range(n);
    quadric::QuadricRing q = quadric::QuadricRing::odd(n);
    IntMatrix beta = poly::matrix_from_json<Integer>(q.ring(), j);
    ElementaryCertificate cert = certificate_from_json(*q.ring(), j.at("certificate"));
    IntMatrix a = alpha(n).in_ring(q.ring());
    if (beta.rows() != n || !beta.is_square()) throw VerificationFailure("beta has the wrong shape");
    BetaResult r{n, q, a, beta, std::move(cert), poly::det(beta)};
    verify_beta(r);
    return r;
}

}  // namespace qsphere::suslin
