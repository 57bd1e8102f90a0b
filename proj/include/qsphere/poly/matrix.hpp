#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qsphere/errors.hpp"
#include "qsphere/poly/linalg.hpp"
#include "qsphere/poly/ring.hpp"

namespace qsphere::poly {

/// Dense row-major matrix whose entries are residue classes of one ring.
template <class C>
class Matrix {
public:
    using RingPtr = typename Ring<C>::Ptr;
    using Poly = Polynomial<C>;
    using Elem = Element<C>;

    Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
    }

    static Matrix identity(RingPtr ring, std::size_t n) {
        Matrix m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = ring->constant_poly(CoeffTraits<C>::one());
        return m;
    }

    /// Build from row-major elements; every element must live in `ring`.
    static Matrix from_elements(RingPtr ring, std::size_t rows, std::size_t cols, const std::vector<Elem>& elems) {
        if (elems.size() != rows * cols) throw InvalidArgument("entry count does not match matrix shape");
        Matrix m(ring, rows, cols);
        for (std::size_t k = 0; k < elems.size(); ++k) m.set(k / cols, k % cols, elems[k]);
        return m;
    }

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Elem operator()(std::size_t r, std::size_t c) const { return ring_->element(poly(r, c)); }
    const Poly& poly(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }

    void set(std::size_t r, std::size_t c, const Elem& e) {
        if (!e.same_ring(*ring_)) throw ContextMismatch("matrix entry from a different ring");
        entries_.at(r * cols_ + c) = e.value();
    }

    Matrix transpose() const {
        Matrix t(ring_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = entries_[r * cols_ + c];
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_ring(b);
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
        Matrix out(a.ring_, a.rows_, b.cols_);
        const auto& R = *a.ring_;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                Poly acc;
                for (std::size_t k = 0; k < a.cols_; ++k) {
                    const Poly& x = a.poly(i, k);
                    const Poly& y = b.poly(k, j);
                    if (x.is_zero() || y.is_zero()) continue;
                    acc = R.add(acc, R.mul_free(x, y));
                }
                out.entries_[i * b.cols_ + j] = R.reduce(acc);
            }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) { return a.zip(b, false); }
    friend Matrix operator-(const Matrix& a, const Matrix& b) { return a.zip(b, true); }

    friend Matrix operator*(const Elem& s, const Matrix& m) {
        if (!s.same_ring(*m.ring_)) throw ContextMismatch("scalar from a different ring");
        Matrix out(m.ring_, m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.entries_.size(); ++k) out.entries_[k] = m.ring_->mul(s.value(), m.entries_[k]);
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        a.check_ring(b);
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    /// Same entries viewed in a compatible ring with a different pointer identity,
    /// or in a quotient of this matrix's (free) ring: entries are re-reduced.
    Matrix in_ring(RingPtr target) const {
        if (target->nvars() != ring_->nvars() || target->names() != ring_->names())
            throw ContextMismatch("target ring has different variables");
        Matrix out(target, rows_, cols_);
        for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = target->element(entries_[k]).value();
        return out;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t r = 0; r < rows_; ++r) {
            s += r ? ",\n [" : "[";
            for (std::size_t c = 0; c < cols_; ++c) {
                if (c) s += ", ";
                s += ring_->format(poly(r, c));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void check_ring(const Matrix& b) const {
        if (!ring_->compatible(*b.ring_)) throw ContextMismatch("matrices live in different rings");
    }

    Matrix zip(const Matrix& b, bool subtract) const {
        check_ring(b);
        if (rows_ != b.rows_ || cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
        Matrix out(ring_, rows_, cols_);
        for (std::size_t k = 0; k < entries_.size(); ++k)
            out.entries_[k] = subtract ? ring_->sub(entries_[k], b.entries_[k]) : ring_->add(entries_[k], b.entries_[k]);
        return out;
    }

    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<Poly> entries_;
};

/// Exact determinant by memoized cofactor expansion (dimension <= 8).
template <class C>
Element<C> det(const Matrix<C>& m) {
    if (!m.is_square()) throw NotSquare("determinant of a non-square matrix");
    return cofactor_determinant<Element<C>>(
        m.rows(), [&](std::size_t r, std::size_t c) { return m(r, c); }, m.ring()->zero(), m.ring()->one());
}

template <class C>
Matrix<C> adjugate(const Matrix<C>& m) {
    if (!m.is_square()) throw NotSquare("adjugate of a non-square matrix");
    auto adj = cofactor_adjugate<Element<C>>(
        m.rows(), [&](std::size_t r, std::size_t c) { return m(r, c); }, m.ring()->zero(), m.ring()->one());
    return Matrix<C>::from_elements(m.ring(), m.rows(), m.cols(), adj);
}

using IntMatrix = Matrix<Integer>;

}  // namespace qsphere::poly
