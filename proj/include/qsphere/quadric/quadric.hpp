#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsphere/poly/matrix.hpp"
#include "qsphere/poly/ring.hpp"

namespace qsphere::quadric {

using poly::Integer;
using poly::IntElement;
using poly::IntMatrix;
using poly::IntPoly;
using poly::RingPtr;

enum class Parity { odd, even };

/// Coordinate ring of a split affine quadric over Z.
///
///   odd(m):  Z[x1..xm, y1..ym]    / (sum xi*yi - 1)          dimension 2m-1
///   even(m): Z[x1..xm, y1..ym, z] / (sum xi*yi - z - z^2)    dimension 2m
///
/// Variables are stored as x1..xm, y1..ym[, z]; the order is graded lex with
/// xm > ... > x1 > ym > ... > y1 > z, so the relation's leading monomial is xm*ym.
class QuadricRing {
public:
    /// Throws InvalidArgument unless m >= 1 (odd) or m >= 0 (even).
    static QuadricRing make(Parity parity, unsigned m);
    static QuadricRing odd(unsigned m) { return make(Parity::odd, m); }
    static QuadricRing even(unsigned m) { return make(Parity::even, m); }

    Parity parity() const noexcept { return parity_; }
    unsigned m() const noexcept { return m_; }
    unsigned dimension() const noexcept { return parity_ == Parity::odd ? 2 * m_ - 1 : 2 * m_; }
    std::string name() const { return "Q" + std::to_string(dimension()); }

    const RingPtr& ring() const noexcept { return ring_; }
    const RingPtr& ambient() const noexcept { return ambient_; }

    /// The defining polynomial, as a polynomial of the ambient ring.
    const IntPoly& relation() const noexcept { return relation_; }

    // 1-based coordinate indices into the variable list.
    std::size_t x(unsigned i) const;
    std::size_t y(unsigned i) const;
    std::size_t z() const;

    IntElement x_elem(unsigned i) const { return ring_->var(x(i)); }
    IntElement y_elem(unsigned i) const { return ring_->var(y(i)); }
    IntElement z_elem() const { return ring_->var(z()); }

    bool same_as(const QuadricRing& o) const { return parity_ == o.parity_ && m_ == o.m_; }

private:
    QuadricRing() = default;

    Parity parity_ = Parity::odd;
    unsigned m_ = 0;
    RingPtr ambient_;
    RingPtr ring_;
    IntPoly relation_;
};

/// An integer point of affine space, one coordinate per ring variable.
struct BasePoint {
    std::vector<Integer> coords;
};

/// (1,0,...,0,1,0,...,0): x1 = y1 = 1, every other coordinate 0. Odd quadrics only.
BasePoint standard_base_point(const QuadricRing& q);

/// The point "0" (every coordinate 0). Even quadrics only.
BasePoint origin(const QuadricRing& q);

Integer evaluate(const IntPoly& p, const BasePoint& pt);

bool satisfies_relation(const QuadricRing& q, const BasePoint& pt);

/// Entrywise evaluation of a matrix at an integer point.
std::vector<Integer> evaluate(const IntMatrix& m, const BasePoint& pt);

}  // namespace qsphere::quadric
