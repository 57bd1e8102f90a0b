#include "qsphere/clutch/cocycle.hpp"

#include <map>

#include "qsphere/errors.hpp"
#include "qsphere/poly/linalg.hpp"
#include "qsphere/suslin/suslin.hpp"

namespace qsphere::clutch {

std::string UnitDecomposition::to_string() const {
    std::string s = "(" + std::string(sign > 0 ? "+1" : "-1") + ", " + std::to_string(z_pow) + ", " +
                    std::to_string(one_plus_z_pow);
    if (x1_pow) s += ", x1^" + std::to_string(x1_pow);
    return s + ")";
}

std::optional<UnitDecomposition> decompose_unit(const LocalizedElement& e, const QuadricRing& q) {
    if (!e.ring() || !e.ring()->compatible(*q.ring()) || e.is_zero()) return std::nullopt;
    const std::size_t zi = q.z();

    // Every term must share one z-free monomial; the rest is a polynomial in z.
    std::optional<poly::Monomial> key;
    std::map<unsigned, Integer> coeffs;
    for (const auto& t : e.numerator().value().terms()) {
        poly::Monomial k = t.mono.with(zi, 0);
        if (!key)
            key = k;
        else if (!(k == *key))
            return std::nullopt;
        coeffs[t.mono[zi]] += t.coef;
    }
    int ex = 0, ey = 0;
    for (std::size_t v = 0; v < key->size(); ++v) {
        const unsigned k = (*key)[v];
        if (v == zi || k == 0) continue;
        if (q.m() == 1 && v == q.x(1))
            ex = static_cast<int>(k);
        else if (q.m() == 1 && v == q.y(1))
            ey = static_cast<int>(k);
        else
            return std::nullopt;
    }

    const unsigned lo = coeffs.begin()->first;
    std::vector<Integer> p(coeffs.rbegin()->first - lo + 1, 0);  // p[k] = coefficient of z^k
    for (const auto& [k, c] : coeffs) p[k - lo] = c;

    int beta = 0;
    while (p.size() > 1) {
        // Synthetic division by z + 1.
        std::vector<Integer> quot(p.size() - 1);
        Integer carry = 0;
        for (std::size_t k = p.size() - 1; k >= 1; --k) {
            quot[k - 1] = p[k] - carry;
            carry = quot[k - 1];
        }
        if (p[0] - carry != 0) break;
        p = std::move(quot);
        ++beta;
    }
    if (p.size() != 1 || (p[0] != 1 && p[0] != -1)) return std::nullopt;

    // y1 = z (1+z) / x1 on Q2.
    UnitDecomposition d;
    d.sign = p[0] > 0 ? 1 : -1;
    d.z_pow = static_cast<int>(lo) - static_cast<int>(e.z_pow()) + ey;
    d.one_plus_z_pow = beta - static_cast<int>(e.one_plus_z_pow()) + ey;
    d.x1_pow = ex - ey;
    return d;
}

namespace {

LocalizedElement loc_zero(const QuadricRing& q) { return LocalizedElement(q.ring()->zero()); }
LocalizedElement loc_one(const QuadricRing& q) { return LocalizedElement(q.ring()->one()); }

// det f is +-1, or on Q1 a signed power of x1 or y1.
bool is_source_unit(const poly::IntElement& d, unsigned n) {
    const auto& R = d.ring();
    if (d == R->one() || d == -R->one()) return true;
    if (n != 1 || d.value().size() != 1) return false;
    const auto& t = d.value().leading();
    return (t.coef == 1 || t.coef == -1) && (t.mono[0] == 0 || t.mono[1] == 0);
}

void check_shape(const Cocycle& c) {
    if (c.rank == 0 || c.g.size() != c.rank * c.rank)
        throw InvalidCocycle("shape", "expected " + std::to_string(c.rank) + "x" + std::to_string(c.rank) +
                                          " entries, got " + std::to_string(c.g.size()));
    if (c.rank > poly::kMaxCofactorDim)
        throw InvalidCocycle("shape", "rank " + std::to_string(c.rank) + " exceeds the determinant bound");
}

}  // namespace

LocalizedElement det(const Cocycle& c) {
    check_shape(c);
    return poly::cofactor_determinant<LocalizedElement>(
        c.rank, [&](std::size_t r, std::size_t k) { return c.at(r, k); }, loc_zero(c.quadric), loc_one(c.quadric));
}

std::vector<LocalizedElement> adjugate(const Cocycle& c) {
    check_shape(c);
    return poly::cofactor_adjugate<LocalizedElement>(
        c.rank, [&](std::size_t r, std::size_t k) { return c.at(r, k); }, loc_zero(c.quadric), loc_one(c.quadric));
}

CocycleCertificate verify_cocycle(const Cocycle& c) {
    check_shape(c);
    if (c.quadric.parity() != quadric::Parity::even || c.quadric.m() != c.n)
        throw InvalidCocycle("context", "cocycle must live on Q" + std::to_string(2 * c.n));
    for (const auto& e : c.g)
        if (!e.ring() || !e.ring()->compatible(*c.quadric.ring()))
            throw InvalidCocycle("context", "entry outside the ring of " + c.quadric.name());

    LocalizedElement d = det(c);
    auto unit = decompose_unit(d, c.quadric);
    if (!unit)
        throw InvalidCocycle("determinant-unit", "det g = " + d.to_string() + " is not of the form +-z^a (1+z)^b");

    const auto adj = adjugate(c);
    const LocalizedElement zero = loc_zero(c.quadric);
    for (std::size_t i = 0; i < c.rank; ++i)
        for (std::size_t j = 0; j < c.rank; ++j) {
            LocalizedElement left = zero, right = zero;
            for (std::size_t k = 0; k < c.rank; ++k) {
                left = left + c.at(i, k) * adj[k * c.rank + j];
                right = right + adj[i * c.rank + k] * c.at(k, j);
            }
            const LocalizedElement expected = i == j ? d : zero;
            if (!(left == expected) || !(right == expected))
                throw InvalidCocycle("adjugate-inverse", "g * adj(g) differs from det(g) * I at (" + std::to_string(i) +
                                                             "," + std::to_string(j) + ")");
        }
    return CocycleCertificate{d, *unit, true};
}

Cocycle clutch_cocycle(const IntMatrix& f_in, unsigned n, std::string provenance) {
    if (!f_in.is_square()) throw NotSquare("clutching map must be a square matrix");
    const quadric::PsiMap psi = quadric::psi(n);
    const IntMatrix f = f_in.in_ring(psi.source.ring());

    const poly::IntElement d = poly::det(f);
    if (!is_source_unit(d, n))
        throw NonUnitDeterminant("det f = " + d.to_string() + " is not a unit of O(" + psi.source.name() + ")");

    const auto values = quadric::evaluate(f, quadric::standard_base_point(psi.source));
    const std::size_t r = f.rows();
    const Integer base_det = poly::cofactor_determinant<Integer>(
        r, [&](std::size_t i, std::size_t j) { return values[i * r + j]; }, Integer(0), Integer(1));
    if (base_det != 1 && base_det != -1)
        throw NonUnitDeterminant("f at the standard base point has determinant " + base_det.get_str() +
                                 ", not invertible over Z");

    Cocycle c{n, r, psi.hom.target, {}, std::move(provenance)};
    c.g.reserve(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) c.g.push_back(quadric::apply_hom(psi.hom, f(i, j)));
    verify_cocycle(c);
    return c;
}

Cocycle generator_bundle(unsigned n) {
    const suslin::BetaResult b = suslin::suslin_beta(n);
    Cocycle c = clutch_cocycle(b.beta, n, "Suslin beta_" + std::to_string(n));
    if (n == 2) {
        // Structure group reduces to SL_2: det must be exactly 1.
        const auto cert = verify_cocycle(c);
        if (!(cert.decomposition == UnitDecomposition{}))
            throw VerificationFailure("det of the n=2 generator cocycle is " + cert.decomposition.to_string() +
                                      ", expected (+1, 0, 0)");
    }
    return c;
}

IntMatrix line_map(int d) {
    const QuadricRing q = QuadricRing::odd(1);
    const auto e = d >= 0 ? q.x_elem(1).pow(static_cast<unsigned>(d)) : q.y_elem(1).pow(static_cast<unsigned>(-d));
    return IntMatrix::from_elements(q.ring(), 1, 1, {e});
}

Cocycle operator*(const Cocycle& a, const Cocycle& b) {
    if (a.n != b.n || a.rank != b.rank) throw InvalidArgument("cocycles of different shape");
    Cocycle out{a.n, a.rank, a.quadric, {}, a.provenance + " * " + b.provenance};
    const LocalizedElement zero = loc_zero(a.quadric);
    for (std::size_t i = 0; i < a.rank; ++i)
        for (std::size_t j = 0; j < a.rank; ++j) {
            LocalizedElement acc = zero;
            for (std::size_t k = 0; k < a.rank; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            out.g.push_back(acc);
        }
    return out;
}

bool operator==(const Cocycle& a, const Cocycle& b) {
    if (a.n != b.n || a.rank != b.rank || a.g.size() != b.g.size()) return false;
    for (std::size_t k = 0; k < a.g.size(); ++k)
        if (!(a.g[k] == b.g[k])) return false;
    return true;
}

Json to_json(const UnitDecomposition& d) {
    return {{"sign", d.sign}, {"z_pow", d.z_pow}, {"one_plus_z_pow", d.one_plus_z_pow}, {"x1_pow", d.x1_pow}};
}

Json to_json(const Cocycle& c) {
    const auto cert = verify_cocycle(c);
    Json entries = Json::array();
    for (const auto& e : c.g) entries.push_back(quadric::to_json(e));
    return {{"n", c.n},
            {"rank", c.rank},
            {"ring", {{"vars", c.quadric.ring()->names()},
                      {"relation", poly::to_json(*c.quadric.ambient(), c.quadric.relation())}}},
            {"provenance", c.provenance},
            {"entries", std::move(entries)},
            {"det", quadric::to_json(cert.det)},
            {"det_unit", to_json(cert.decomposition)}};
}

Cocycle cocycle_from_json(const Json& j) {
    try {
        const auto n = j.at("n").get<unsigned>();
        const auto rank = j.at("rank").get<std::size_t>();
        if (n < 1) throw InvalidArgument("cocycle n must be >= 1");
        QuadricRing q = QuadricRing::even(n);
        if (j.contains("ring") && j["ring"].contains("vars") &&
            j["ring"]["vars"].get<std::vector<std::string>>() != q.ring()->names())
            throw InvalidArgument("cocycle ring variables do not match " + q.name());
        Cocycle c{n, rank, q, {}, j.value("provenance", std::string("json"))};
        for (const auto& e : j.at("entries")) c.g.push_back(quadric::localized_from_json(*q.ring(), e));
        if (c.g.size() != rank * rank) throw InvalidArgument("cocycle entry count does not match rank");
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed cocycle JSON: ") + ex.what());
    }
}

}  // namespace qsphere::clutch
