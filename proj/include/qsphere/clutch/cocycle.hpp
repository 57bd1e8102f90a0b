#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsphere/poly/serialize.hpp"
#include "qsphere/quadric/charts.hpp"
#include "qsphere/quadric/localized.hpp"

namespace qsphere::clutch {

using poly::Integer;
using poly::IntMatrix;
using poly::Json;
using quadric::LocalizedElement;
using quadric::QuadricRing;

/// A unit of O(Q_{2n})[1/(z(1+z))] written as sign * z^z_pow * (1+z)^one_plus_z_pow * x1^x1_pow.
/// Exponents may be negative. x1_pow is nonzero only on Q2, where x1 is invertible
/// (x1 * y1 = z(1+z)).
struct UnitDecomposition {
    int sign = 1;
    int z_pow = 0;
    int one_plus_z_pow = 0;
    int x1_pow = 0;

    friend bool operator==(const UnitDecomposition&, const UnitDecomposition&) = default;
    std::string to_string() const;
};

/// Recognizes units of the syntactic form above; nullopt otherwise.
std::optional<UnitDecomposition> decompose_unit(const LocalizedElement& e, const QuadricRing& q);

/// Transition function on V0 ∩ V1 = D_{z(1+z)} of Q_{2n}.
struct Cocycle {
    unsigned n;
    std::size_t rank;
    QuadricRing quadric;             // Q_{2n}
    std::vector<LocalizedElement> g;  // rank x rank, row-major
    std::string provenance;

    const LocalizedElement& at(std::size_t r, std::size_t c) const { return g.at(r * rank + c); }
    LocalizedElement& at(std::size_t r, std::size_t c) { return g.at(r * rank + c); }
};

/// g = f ∘ psi_n, entrywise. `f` is read in O(Q_{2n-1}) (a matrix over the free ring with the
/// same variable names is reduced first). Intake checks: f square, det f a unit (+-1, or
/// for n = 1 also +-x1^k / +-y1^k), and f at the standard base point invertible over Z.
/// Throws NotSquare or NonUnitDeterminant; the result is verified before it is returned.
Cocycle clutch_cocycle(const IntMatrix& f, unsigned n, std::string provenance = "matrix");

/// clutch_cocycle(beta_n, n). Propagates ReductionNotFound.
Cocycle generator_bundle(unsigned n);

/// (x1^d) on Q1 for d >= 0 and (y1^{-d}) for d < 0; y1 = x1^{-1} there.
IntMatrix line_map(int d);

struct CocycleCertificate {
    LocalizedElement det;
    UnitDecomposition decomposition;
    bool adjugate_inverse;  // g * adj(g) == det(g) * I and adj(g) * g == det(g) * I
};

/// Recomputes det g and g * adj(g) from the entries. Throws InvalidCocycle naming the
/// failed check: "shape", "context", "determinant-unit" or "adjugate-inverse".
CocycleCertificate verify_cocycle(const Cocycle& c);

LocalizedElement det(const Cocycle& c);
std::vector<LocalizedElement> adjugate(const Cocycle& c);

/// Entrywise product; used to check functoriality in f.
Cocycle operator*(const Cocycle& a, const Cocycle& b);
bool operator==(const Cocycle& a, const Cocycle& b);

Json to_json(const UnitDecomposition& d);
/// {"n", "rank", "ring": {"vars", "relation"}, "provenance", "entries": [LocalizedElement...],
///  "det": LocalizedElement, "det_unit": UnitDecomposition}
Json to_json(const Cocycle& c);
/// Rebuilds the cocycle from JSON (entries only; the stored det is not trusted).
Cocycle cocycle_from_json(const Json& j);

}  // namespace qsphere::clutch
