#pragma once

// Independent checks used by the unit tests. Nothing here calls the reduction code:
// values are computed by integer evaluation or by hand-written formulas.

#include <map>
#include <random>
#include <vector>

#include "qsphere/poly/random.hpp"
#include "qsphere/quadric/quadric.hpp"

namespace oracle {

using qsphere::poly::Integer;
using qsphere::poly::IntPoly;

inline Integer eval(const IntPoly& p, const std::vector<Integer>& pt) {
    Integer total = 0;
    for (const auto& t : p.terms()) {
        Integer v = t.coef;
        for (std::size_t i = 0; i < pt.size(); ++i) {
            Integer f;
            mpz_pow_ui(f.get_mpz_t(), pt[i].get_mpz_t(), t.mono[i]);
            v *= f;
        }
        total += v;
    }
    return total;
}

/// A random integer point on the odd or even quadric with the given variable layout
/// x1..xm, y1..ym[, z]. Solves the relation for y1 after fixing x1 = 1.
inline std::vector<Integer> quadric_point(const qsphere::quadric::QuadricRing& q, qsphere::poly::Rng& rng) {
    const unsigned m = q.m();
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Integer> pt(q.ring()->nvars(), 0);
    Integer rhs = q.parity() == qsphere::quadric::Parity::odd ? Integer(1) : Integer(0);
    if (q.parity() == qsphere::quadric::Parity::even) {
        Integer z = d(rng);
        pt[q.z()] = z;
        rhs = z + z * z;
    }
    if (m == 0) return pt;
    pt[q.x(1)] = 1;
    for (unsigned i = 2; i <= m; ++i) {
        pt[q.x(i)] = d(rng);
        pt[q.y(i)] = d(rng);
        rhs -= pt[q.x(i)] * pt[q.y(i)];
    }
    pt[q.y(1)] = rhs;
    return pt;
}

inline std::vector<Integer> random_point(std::size_t n, qsphere::poly::Rng& rng) {
    std::uniform_int_distribution<long> d(-6, 6);
    std::vector<Integer> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(d(rng));
    return pt;
}

}  // namespace oracle
