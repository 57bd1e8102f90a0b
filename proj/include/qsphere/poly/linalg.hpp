#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsphere/errors.hpp"

namespace qsphere::poly {

/// Largest dimension accepted by the cofactor routines.
inline constexpr std::size_t kMaxCofactorDim = 8;

namespace detail {

inline void check_cofactor_dim(std::size_t n) {
    if (n > kMaxCofactorDim)
        throw DimensionOverBound("cofactor expansion is capped at " + std::to_string(kMaxCofactorDim) + "x" +
                                 std::to_string(kMaxCofactorDim) + ", got " + std::to_string(n));
}

}  // namespace detail

/// Laplace expansion along rows with minors memoized by their column set.
///
/// `at(r, c)` returns the entry; `T` needs `+`, `-`, `*` and `==`. Division-free, so it
/// works over any commutative ring, including quotient and localized rings.
template <class T, class At>
T cofactor_determinant(std::size_t n, At&& at, const T& zero, const T& one) {
    detail::check_cofactor_dim(n);
    if (n == 0) return one;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::optional<T>> memo(std::size_t{1} << n);

    auto solve = [&](auto& self, std::uint32_t mask) -> T {
        if (mask == 0) return one;
        if (memo[mask]) return *memo[mask];
        const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
        T acc = zero;
        bool positive = true;
        for (std::size_t c = 0; c < n; ++c) {
            const std::uint32_t bit = std::uint32_t{1} << c;
            if (!(mask & bit)) continue;
            const T entry = at(row, c);
            if (!(entry == zero)) {
                T term = entry * self(self, mask ^ bit);
                if (positive)
                    acc = acc + term;
                else
                    acc = acc - term;
            }
            positive = !positive;
        }
        memo[mask] = acc;
        return acc;
    };
    return solve(solve, full);
}

/// Adjugate (transposed cofactor matrix) as a row-major vector.
template <class T, class At>
std::vector<T> cofactor_adjugate(std::size_t n, At&& at, const T& zero, const T& one) {
    detail::check_cofactor_dim(n);
    std::vector<T> adj(n * n, zero);
    if (n == 1) {
        adj[0] = one;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // adj(i, j) = (-1)^(i+j) * minor obtained by deleting row j and column i.
            auto minor_at = [&](std::size_t r, std::size_t c) -> T {
                return at(r < j ? r : r + 1, c < i ? c : c + 1);
            };
            T m = cofactor_determinant<T>(n - 1, minor_at, zero, one);
            if ((i + j) % 2 == 0)
                adj[i * n + j] = m;
            else
                adj[i * n + j] = zero - m;
        }
    }
    return adj;
}

}  // namespace qsphere::poly
