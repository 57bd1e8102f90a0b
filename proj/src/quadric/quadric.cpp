#include "qsphere/quadric/quadric.hpp"

#include "qsphere/errors.hpp"

namespace qsphere::quadric {

QuadricRing QuadricRing::make(Parity parity, unsigned m) {
    if (parity == Parity::odd && m < 1) throw InvalidArgument("odd quadric needs m >= 1");

    std::vector<std::string> names;
    for (unsigned i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
    for (unsigned i = 1; i <= m; ++i) names.push_back("y" + std::to_string(i));
    if (parity == Parity::even) names.push_back("z");

    std::vector<std::size_t> precedence;
    for (unsigned i = m; i >= 1; --i) precedence.push_back(i - 1);
    for (unsigned i = m; i >= 1; --i) precedence.push_back(m + i - 1);
    if (parity == Parity::even) precedence.push_back(2 * m);

    QuadricRing q;
    q.parity_ = parity;
    q.m_ = m;
    q.ambient_ = poly::IntRing::free(std::move(names), std::move(precedence));

    const auto& A = *q.ambient_;
    IntPoly rel;
    for (unsigned i = 1; i <= m; ++i) rel = A.add(rel, A.mul_free(A.variable_poly(q.x(i)), A.variable_poly(q.y(i))));
    if (parity == Parity::odd) {
        rel = A.sub(rel, A.constant_poly(1));
    } else {
        rel = A.sub(rel, A.variable_poly(q.z()));
        rel = A.sub(rel, A.variable_poly(q.z(), 2));
    }
    q.relation_ = rel;
    q.ring_ = poly::IntRing::quotient(q.ambient_, rel);
    return q;
}

std::size_t QuadricRing::x(unsigned i) const {
    if (i < 1 || i > m_) throw InvalidArgument("x index out of range");
    return i - 1;
}

std::size_t QuadricRing::y(unsigned i) const {
    if (i < 1 || i > m_) throw InvalidArgument("y index out of range");
    return m_ + i - 1;
}

std::size_t QuadricRing::z() const {
    if (parity_ != Parity::even) throw InvalidArgument("odd quadrics have no z coordinate");
    return 2 * m_;
}

BasePoint standard_base_point(const QuadricRing& q) {
    if (q.parity() != Parity::odd) throw InvalidArgument("standard base point is defined for odd quadrics");
    BasePoint pt{std::vector<Integer>(q.ring()->nvars(), 0)};
    pt.coords[q.x(1)] = 1;
    pt.coords[q.y(1)] = 1;
    return pt;
}

BasePoint origin(const QuadricRing& q) {
    if (q.parity() != Parity::even) throw InvalidArgument("the point 0 is defined for even quadrics");
    return BasePoint{std::vector<Integer>(q.ring()->nvars(), 0)};
}

Integer evaluate(const IntPoly& p, const BasePoint& pt) {
    Integer acc = 0;
    for (const auto& t : p.terms()) {
        if (t.mono.size() != pt.coords.size()) throw InvalidArgument("point dimension does not match ring");
        Integer v = t.coef;
        for (std::size_t i = 0; i < t.mono.size() && v != 0; ++i) {
            Integer power;
            mpz_pow_ui(power.get_mpz_t(), pt.coords[i].get_mpz_t(), t.mono[i]);
            v *= power;
        }
        acc += v;
    }
    return acc;
}

bool satisfies_relation(const QuadricRing& q, const BasePoint& pt) { return evaluate(q.relation(), pt) == 0; }

std::vector<Integer> evaluate(const IntMatrix& m, const BasePoint& pt) {
    std::vector<Integer> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(evaluate(m.poly(r, c), pt));
    return out;
}

}  // namespace qsphere::quadric
