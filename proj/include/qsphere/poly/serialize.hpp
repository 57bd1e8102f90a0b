#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsphere/errors.hpp"
#include "qsphere/poly/matrix.hpp"
#include "qsphere/poly/ring.hpp"

namespace qsphere::poly {

using Json = nlohmann::ordered_json;

/// { "vars": [...], "terms": [ { "coef": "<decimal>", "exps": [...] }, ... ] },
/// terms in descending ring order.
template <class C>
Json to_json(const Ring<C>& ring, const Polynomial<C>& p) {
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json exps = Json::array();
        for (auto e : t.mono.exponents()) exps.push_back(e);
        terms.push_back({{"coef", CoeffTraits<C>::to_string(t.coef)}, {"exps", std::move(exps)}});
    }
    return {{"vars", ring.names()}, {"terms", std::move(terms)}};
}

template <class C>
Json to_json(const Element<C>& e) {
    return to_json(*e.ring(), e.value());
}

/// Decodes a polynomial and returns its normal form in `ring`. Variables are matched
/// by name; a name the ring lacks raises UnknownVariable when it carries a nonzero exponent.
template <class C>
Element<C> element_from_json(const Ring<C>& ring, const Json& j) {
    try {
        const auto& vars = j.at("vars");
        std::vector<std::optional<std::size_t>> slot;
        std::vector<std::string> names;
        for (const auto& v : vars) {
            names.push_back(v.get<std::string>());
            slot.push_back(ring.index_of(names.back()));
        }
        std::vector<Term<C>> terms;
        for (const auto& t : j.at("terms")) {
            const auto& exps = t.at("exps");
            if (exps.size() != slot.size()) throw InvalidArgument("exponent vector length does not match vars");
            std::vector<Monomial::Exponent> e(ring.nvars(), 0);
            for (std::size_t k = 0; k < slot.size(); ++k) {
                auto value = exps[k].get<long long>();
                if (value < 0) throw InvalidArgument("negative exponent");
                if (value == 0) continue;
                if (!slot[k]) throw UnknownVariable(names[k]);
                e[*slot[k]] += static_cast<Monomial::Exponent>(value);
            }
            terms.push_back({CoeffTraits<C>::from_string(t.at("coef").get<std::string>()), Monomial(std::move(e))});
        }
        return ring.element(ring.canonical(std::move(terms)));
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed polynomial JSON: ") + ex.what());
    }
}

/// { "rows": r, "cols": c, "entries": [polynomial...] } row-major.
template <class C>
Json to_json(const Matrix<C>& m) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(to_json(*m.ring(), m.poly(r, c)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <class C>
Matrix<C> matrix_from_json(const typename Ring<C>::Ptr& ring, const Json& j) {
    try {
        auto rows = j.at("rows").get<std::size_t>();
        auto cols = j.at("cols").get<std::size_t>();
        const auto& entries = j.at("entries");
        if (entries.size() != rows * cols) throw InvalidArgument("entry count does not match rows*cols");
        std::vector<Element<C>> elems;
        elems.reserve(entries.size());
        for (const auto& e : entries) elems.push_back(element_from_json(*ring, e));
        return Matrix<C>::from_elements(ring, rows, cols, elems);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed matrix JSON: ") + ex.what());
    }
}

}  // namespace qsphere::poly
