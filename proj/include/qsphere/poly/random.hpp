#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qsphere/poly/matrix.hpp"
#include "qsphere/poly/ring.hpp"

namespace qsphere::poly {

using Rng = std::mt19937_64;

// Stable per-name stream so that a check sees the same samples regardless of which
// other checks run or in which order.
inline Rng seeded_rng(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return Rng(seq);
}

struct SampleShape {
    unsigned max_degree = 4;
    unsigned max_terms = 6;
    long coef_bound = 9;  // coefficients drawn from [-coef_bound, coef_bound] \ {0}
};

/// Random polynomial in the ambient (free) ring of `ring`, not reduced.
inline IntPoly random_poly(const IntRing& ring, Rng& rng, const SampleShape& shape = {}) {
    std::uniform_int_distribution<unsigned> nterms(0, shape.max_terms);
    std::uniform_int_distribution<unsigned> deg(0, shape.max_degree);
    std::uniform_int_distribution<std::size_t> var(0, ring.nvars() - 1);
    std::uniform_int_distribution<long> coef(1, shape.coef_bound);
    std::bernoulli_distribution neg(0.5);

    std::vector<Term<Integer>> terms;
    const unsigned count = nterms(rng);
    for (unsigned k = 0; k < count; ++k) {
        std::vector<Monomial::Exponent> e(ring.nvars(), 0);
        const unsigned d = deg(rng);
        for (unsigned s = 0; s < d; ++s) ++e[var(rng)];
        long c = coef(rng);
        terms.push_back({Integer(neg(rng) ? -c : c), Monomial(std::move(e))});
    }
    return ring.canonical(std::move(terms));
}

inline IntElement random_element(const RingPtr& ring, Rng& rng, const SampleShape& shape = {}) {
    return ring->element(random_poly(*ring, rng, shape));
}

inline IntMatrix random_matrix(const RingPtr& ring, Rng& rng, std::size_t rows, std::size_t cols,
                               const SampleShape& shape = {}) {
    std::vector<IntElement> e;
    for (std::size_t k = 0; k < rows * cols; ++k) e.push_back(random_element(ring, rng, shape));
    return IntMatrix::from_elements(ring, rows, cols, e);
}

}  // namespace qsphere::poly
