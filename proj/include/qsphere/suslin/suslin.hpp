#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qsphere/poly/matrix.hpp"
#include "qsphere/poly/serialize.hpp"
#include "qsphere/quadric/quadric.hpp"

namespace qsphere::suslin {

using poly::Integer;
using poly::IntElement;
using poly::IntMatrix;
using poly::RingPtr;

inline constexpr unsigned kMaxAlpha = 5;
inline constexpr unsigned kMaxBeta = 4;

/// Z[x1..xn, y1..yn] with the same variable names and order as the odd quadric Q_{2n-1}.
RingPtr free_ring(unsigned n);

/// Suslin's matrix for an arbitrary pair of vectors of equal length k >= 1:
///   alpha_1 = (x1)
///   alpha_{k+1}((x1,x'),(y1,y')) = [[x1*I, alpha_k(x',y')], [-alpha_k(y',x')^T, y1*I]]
/// of size 2^{k-1}.
IntMatrix alpha(const std::vector<IntElement>& x, const std::vector<IntElement>& y);

/// alpha_n over free_ring(n); 1 <= n <= 5.
IntMatrix alpha(unsigned n);

/// alpha_n(y, x) over free_ring(n).
IntMatrix alpha_swapped(unsigned n);

struct SuslinCertificate {
    unsigned n;
    IntElement pairing;                  // sum xi*yi
    bool identity_holds;                 // alpha(x,y) * alpha(y,x)^T == pairing * I
    std::optional<IntElement> det;       // computed for 2 <= n <= 4
    std::optional<bool> det_holds;       // det == pairing^(2^(n-2))
};

/// Checks the defining identities; throws VerificationFailure naming the offending
/// entry if either fails.
SuslinCertificate verify_suslin(unsigned n);

/// One elementary operation. For `add_multiple`: row i += scalar * row j (or the same on
/// columns). For `swap_with_sign`: (line i, line j) <- (-line j, line i), which has
/// determinant 1; the scalar is unused.
struct ElementaryStep {
    enum class Side { row, col };
    enum class Kind { add_multiple, swap_with_sign };

    Side side;
    Kind kind;
    std::size_t i;
    std::size_t j;
    IntElement scalar;
};

struct ElementaryCertificate {
    std::vector<ElementaryStep> steps;

    /// Applies the steps in order. Deterministic and side-effect free.
    IntMatrix replay(const IntMatrix& start) const;
};

void apply_step(IntMatrix& m, const ElementaryStep& step);

/// beta_n and the certificate that reduces alpha_n (over O(Q_{2n-1})) to beta_n (+) I.
struct BetaResult {
    unsigned n;
    quadric::QuadricRing quadric;   // Q_{2n-1}
    IntMatrix alpha;                // alpha_n with entries in O(Q_{2n-1})
    IntMatrix beta;                 // n x n
    ElementaryCertificate certificate;
    IntElement det_beta;
};

struct BetaOptions {
    std::size_t branching = 8;       // pivot alternatives tried per reduction step
    std::size_t term_budget = 4000;  // abandon a branch once an entry grows past this
    std::size_t node_budget = 2000;  // total pivot attempts before giving up
};

/// Guaranteed for n in {1, 2, 3}; n = 4 is found by the default search. For n = 5 the
/// 16x16 search is not attempted and ReductionNotFound is thrown.
BetaResult suslin_beta(unsigned n, const BetaOptions& options = {});

/// beta (+) I_k as a square matrix of size beta.rows() + k.
IntMatrix with_identity_block(const IntMatrix& beta, std::size_t k);

/// Checks a BetaResult from scratch: replay, block shape, det beta == +-1 (for n = 1,
/// det beta = x1, which is checked to be a unit instead).
/// Throws VerificationFailure.
void verify_beta(const BetaResult& r);

/// The motivic Hopf map nu : Q_7 -> Q_4, (M1, M2) -> (M1*M2, det M2), in
/// coordinates x1 = p, x2 = q, y1 = s, y2 = -r, z = det M2 where M1*M2 = [[p,q],[r,s]].
struct HopfCertificate {
    RingPtr ring;                         // Z[a..h]/(ad - bc - (eh - fg) - 1)
    std::array<IntElement, 5> image;      // x1, x2, y1, y2, z
    IntElement residue;                   // Q_4 relation evaluated on the image, reduced

    bool ok() const { return residue.is_zero(); }
};

HopfCertificate hopf_nu_check();

/// Integer evaluation of nu on a pair of 2x2 matrices (row-major). Throws
/// InvalidArgument unless det M1 - det M2 = 1. Returns (x1, x2, y1, y2, z).
std::array<Integer, 5> hopf_nu(const std::array<Integer, 4>& m1, const std::array<Integer, 4>& m2);

// ---- serialization ----

poly::Json to_json(const ElementaryCertificate& c);
ElementaryCertificate certificate_from_json(const poly::IntRing& ring, const poly::Json& j);

/// Matrix JSON of beta extended with "n", "ring" and "certificate".
poly::Json to_json(const BetaResult& r);

/// Re-parses the output of to_json(BetaResult), rebuilds alpha_n and re-verifies.
BetaResult beta_from_json(const poly::Json& j);

}  // namespace qsphere::suslin
