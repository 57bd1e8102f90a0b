#include "qsphere/quadric/charts.hpp"

#include <algorithm>

#include "qsphere/errors.hpp"

namespace qsphere::quadric {

LocalizedElement apply_hom(const RingHom& h, const IntElement& p) {
    if (!p.same_ring(*h.source)) throw ContextMismatch("element does not live in the source ring of the map");
    if (h.images.size() != h.source->nvars()) throw InvalidArgument("ring map needs one image per source variable");

    const auto& T = h.target.ring();
    struct Piece {
        IntElement num;
        unsigned a, b;
    };
    std::vector<Piece> pieces;
    pieces.reserve(p.value().size());
    unsigned A = 0, B = 0;
    for (const auto& t : p.value().terms()) {
        IntElement num = T->constant(t.coef);
        unsigned a = 0, b = 0;
        for (std::size_t v = 0; v < t.mono.size(); ++v) {
            const unsigned e = t.mono[v];
            if (e == 0) continue;
            const auto& img = h.images[v];
            num *= img.numerator().pow(e);
            a += e * img.z_pow();
            b += e * img.one_plus_z_pow();
        }
        A = std::max(A, a);
        B = std::max(B, b);
        pieces.push_back({std::move(num), a, b});
    }

    // Bring every term over the common denominator z^A (1+z)^B.
    const IntElement z = h.target.z_elem();
    std::vector<IntElement> z_pows{T->one()}, w_pows{T->one()};
    auto z_pow = [&](unsigned k) -> const IntElement& {
        while (z_pows.size() <= k) z_pows.push_back(z_pows.back() * z);
        return z_pows[k];
    };
    auto w_pow = [&](unsigned k) -> const IntElement& {
        while (w_pows.size() <= k) w_pows.push_back(w_pows.back() * (T->one() + z));
        return w_pows[k];
    };
    IntElement total = T->zero();
    for (const auto& piece : pieces) total += piece.num * z_pow(A - piece.a) * w_pow(B - piece.b);
    return LocalizedElement(total, A, B);
}

PsiMap psi(unsigned n) {
    if (n < 1) throw InvalidArgument("psi_n needs n >= 1");
    QuadricRing source = QuadricRing::odd(n);
    QuadricRing target = QuadricRing::even(n);

    std::vector<LocalizedElement> images(source.ring()->nvars());
    for (unsigned i = 1; i <= n; ++i) {
        images[source.x(i)] = LocalizedElement(target.x_elem(i), 1, 0);
        images[source.y(i)] = LocalizedElement(target.y_elem(i), 0, 1);
    }
    RingHom hom{source.ring(), target, std::move(images)};

    // The relation is zero in the source ring, so apply the map to its ambient
    // representative: view it in a relation-free copy of the source.
    RingHom ambient_hom = hom;
    ambient_hom.source = source.ambient();
    LocalizedElement rel_image = apply_hom(ambient_hom, source.ambient()->element(source.relation()));

    return PsiMap{n, source, std::move(hom), std::move(rel_image)};
}

namespace {

// Substitute y_n -> num / x_n into a polynomial of the ambient ring of Q_{2n}.
// Returns the numerator over x_n^D and the exponent D.
std::pair<IntPoly, unsigned> substitute_yn(const QuadricRing& q, const IntPoly& p, const IntPoly& num) {
    const auto& A = *q.ambient();
    const std::size_t yn = q.y(q.m()), xn = q.x(q.m());
    unsigned D = 0;
    for (const auto& t : p.terms()) D = std::max<unsigned>(D, t.mono[yn]);

    std::vector<IntPoly> num_pows{A.constant_poly(1)};
    while (num_pows.size() <= D) num_pows.push_back(A.mul_free(num_pows.back(), num));

    IntPoly out;
    for (const auto& t : p.terms()) {
        const unsigned e = t.mono[yn];
        poly::Monomial rest = t.mono.with(yn, 0);
        rest = rest.with(xn, rest[xn] + (D - e));
        IntPoly term = A.canonical({{t.coef, rest}});
        out = A.add(out, A.mul_free(term, num_pows[e]));
    }
    return {out, D};
}

}  // namespace

bool ChartCertificate::ok() const {
    return relation_vanishes() &&
           std::all_of(round_trip.begin(), round_trip.end(), [](const Generator& g) { return g.identity; });
}

ChartCertificate chart_un(unsigned n) {
    if (n < 1) throw InvalidArgument("chart U_n needs n >= 1");
    QuadricRing q = QuadricRing::even(n);
    const auto& A = *q.ambient();
    const auto& Q = *q.ring();

    IntPoly num = A.add(A.variable_poly(q.z()), A.variable_poly(q.z(), 2));
    for (unsigned i = 1; i < n; ++i) num = A.sub(num, A.mul_free(A.variable_poly(q.x(i)), A.variable_poly(q.y(i))));

    ChartCertificate cert{n, q, num, {}, {}};
    cert.relation_image = substitute_yn(q, q.relation(), num).first;

    const std::size_t xn = q.x(n);
    auto xn_pow = [&](unsigned d) { return A.variable_poly(xn, d); };

    // Q_{2n}[1/x_n] -> A^{2n-1} x G_m -> Q_{2n}[1/x_n] on the generators of the quadric.
    for (std::size_t v = 0; v < A.nvars(); ++v) {
        IntPoly g = A.variable_poly(v);
        auto [image, D] = substitute_yn(q, g, num);
        IntPoly diff = A.sub(image, D ? A.mul_free(g, xn_pow(D)) : g);
        cert.round_trip.push_back({A.names()[v], "quadric", Q.reduce(diff).is_zero()});
    }
    // A^{2n-1} x G_m -> Q_{2n}[1/x_n] -> A^{2n-1} x G_m on the affine coordinates (y_n is not one).
    for (std::size_t v = 0; v < A.nvars(); ++v) {
        if (v == q.y(n)) continue;
        IntPoly g = A.variable_poly(v);
        auto [image, D] = substitute_yn(q, g, num);
        IntPoly diff = A.sub(image, D ? A.mul_free(g, xn_pow(D)) : g);
        cert.round_trip.push_back({A.names()[v], "affine", diff.is_zero()});
    }
    // x_n^{-1} maps to x_n^{-1} in both directions; its round trip is x_n * x_n^{-1} = 1.
    {
        auto [image, D] = substitute_yn(q, xn_pow(1), num);
        cert.round_trip.push_back({"1/" + A.names()[xn], "affine", D == 0 && image == xn_pow(1)});
    }
    return cert;
}

SubschemeName parse_subscheme_name(const std::string& s) {
    if (s == "E_n" || s == "E") return SubschemeName::e_n;
    if (s == "Z_n" || s == "Z") return SubschemeName::z_n;
    if (s == "X_complement_check") return SubschemeName::x_complement_check;
    throw InvalidArgument("unknown subscheme name: " + s);
}

std::string to_string(SubschemeName s) {
    switch (s) {
        case SubschemeName::e_n: return "E_n";
        case SubschemeName::z_n: return "Z_n";
        case SubschemeName::x_complement_check: return "X_complement_check";
    }
    return "?";
}

SubschemeRecord subscheme_data(SubschemeName name, unsigned n) {
    if (n < 1) throw InvalidArgument("subscheme data needs n >= 1");
    QuadricRing q = QuadricRing::even(n);
    const auto& A = *q.ambient();
    const auto& names = A.names();

    SubschemeRecord rec{name, n, q, {}, {}, {}, {}, false, {}};
    std::vector<std::pair<std::size_t, Integer>> values;
    auto assign = [&](std::size_t v, long value) {
        values.emplace_back(v, Integer(value));
        rec.assignments.emplace_back(names[v], Integer(value));
    };

    switch (name) {
        case SubschemeName::e_n: {
            for (unsigned i = 1; i <= n; ++i) assign(q.x(i), 0);
            assign(q.z(), -1);
            for (unsigned i = 1; i <= n; ++i) rec.free_coordinates.push_back(names[q.y(i)]);
            rec.residual = A.substitute_constants(q.relation(), values);
            rec.holds = rec.residual.is_zero();
            rec.detail = "E_n lies on Q_{2n} and is an affine space on the y coordinates";
            break;
        }
        case SubschemeName::z_n: {
            assign(q.x(n), 0);
            rec.free_coordinates.push_back(names[q.y(n)]);
            rec.residual = A.substitute_constants(q.relation(), values);
            IntPoly expected = A.sub(A.constant_poly(0), A.add(A.variable_poly(q.z()), A.variable_poly(q.z(), 2)));
            for (unsigned i = 1; i < n; ++i)
                expected = A.add(expected, A.mul_free(A.variable_poly(q.x(i)), A.variable_poly(q.y(i))));
            rec.expected = expected;
            bool yn_absent = std::none_of(rec.residual.terms().begin(), rec.residual.terms().end(),
                                          [&](const auto& t) { return t.mono[q.y(n)] != 0; });
            rec.holds = rec.residual == expected && yn_absent;
            rec.detail = "Z_n is Q_{2n-2} times the affine line on y_n";
            break;
        }
        case SubschemeName::x_complement_check: {
            for (unsigned i = 1; i < n; ++i) assign(q.x(i), 0);
            for (unsigned i = 1; i < n; ++i) assign(q.y(i), 0);
            assign(q.y(n), 0);
            assign(q.z(), 0);
            rec.free_coordinates.push_back(names[q.x(n)]);
            rec.residual = A.substitute_constants(q.relation(), values);
            // z = 0 on the line while E_n has z = -1, so the line avoids E_n.
            rec.holds = rec.residual.is_zero() && satisfies_relation(q, origin(q));
            rec.detail = "the x_n-line through 0 lies on Q_{2n} and avoids E_n (z = 0 there, z = -1 on E_n)";
            break;
        }
    }
    return rec;
}

}  // namespace qsphere::quadric
