#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsphere/quadric/localized.hpp"
#include "qsphere/quadric/quadric.hpp"

namespace qsphere::quadric {

/// A ring map from `source` into the localization of the even quadric `target` at
/// z(1+z), given by the images of the source variables.
struct RingHom {
    RingPtr source;
    QuadricRing target;
    std::vector<LocalizedElement> images;  // one per source variable
};

/// Substitution followed by normalization. Throws ContextMismatch when `p` does not
/// live in the source ring.
LocalizedElement apply_hom(const RingHom& h, const IntElement& p);

/// The chart map psi_n : D_{z(1+z)} in Q_{2n} -> Q_{2n-1},
/// xi -> xi/z, yi -> yi/(1+z), with its well-definedness certificate.
struct PsiMap {
    unsigned n;
    QuadricRing source;  // Q_{2n-1}
    RingHom hom;
    LocalizedElement relation_image;  // image of sum xi*yi - 1; zero when well defined

    bool well_defined() const { return relation_image.is_zero(); }
};

/// Throws InvalidArgument for n = 0.
PsiMap psi(unsigned n);

/// The open chart U_n = {x_n != 0} of Q_{2n}, identified with A^{2n-1} x G_m by
/// solving the relation for y_n = (z(1+z) - sum_{i<n} xi*yi) / x_n.
struct ChartCertificate {
    struct Generator {
        std::string name;
        std::string direction;  // "quadric" (Q -> A -> Q) or "affine" (A -> Q -> A)
        bool identity;
    };

    unsigned n;
    QuadricRing quadric;            // Q_{2n}
    IntPoly yn_numerator;           // in the ambient ring of Q_{2n}; y_n = yn_numerator / x_n
    IntPoly relation_image;         // numerator of the relation after substituting y_n (denominator x_n)
    std::vector<Generator> round_trip;

    bool relation_vanishes() const { return relation_image.is_zero(); }
    bool ok() const;
};

ChartCertificate chart_un(unsigned n);

enum class SubschemeName { e_n, z_n, x_complement_check };

/// Parses "E_n", "Z_n" or "X_complement_check"; InvalidArgument otherwise.
SubschemeName parse_subscheme_name(const std::string& s);
std::string to_string(SubschemeName s);

/// Result of substituting a linear subvariety's defining values into the Q_{2n} relation.
struct SubschemeRecord {
    SubschemeName name;
    unsigned n;
    QuadricRing quadric;
    std::vector<std::pair<std::string, Integer>> assignments;
    IntPoly residual;                       // relation after substitution (ambient ring)
    IntPoly expected;                       // what the residual must equal
    std::vector<std::string> free_coordinates;
    bool holds;
    std::string detail;
};

/// E_n: x1 = ... = xn = 0, z = -1 lies on Q_{2n} with free coordinates y1..yn.
/// Z_n: x_n = 0 turns the relation into the Q_{2n-2} relation with y_n free.
/// X_complement_check: the affine line {xi = yi = 0 (i<n), y_n = 0, z = 0} lies on
/// Q_{2n}, passes through the point 0 and misses E_n, so it sits inside X_{2n}.
SubschemeRecord subscheme_data(SubschemeName name, unsigned n);

}  // namespace qsphere::quadric
