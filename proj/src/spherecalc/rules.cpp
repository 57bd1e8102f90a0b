#include "qsphere/spherecalc/rules.hpp"

#include <set>

#include "qsphere/errors.hpp"

namespace qsphere::spherecalc {

namespace {

bool indexed(Kind k) { return k == Kind::quad_odd || k == Kind::quad_even || k == Kind::x_even; }

Term rebuild(const Term& t, const Index& idx) {
    switch (t.kind()) {
        case Kind::quad_odd: return Term::quad_odd(idx);
        case Kind::quad_even: return Term::quad_even(idx);
        case Kind::x_even: return Term::x_even(idx);
        default: return t;
    }
}

Term rebuild(const Term& t, std::vector<Term> kids) {
    switch (t.kind()) {
        case Kind::smash: return Term::smash(kids[0], kids[1]);
        case Kind::cofiber: return Term::cofiber(kids[0], kids[1]);
        case Kind::plus: return Term::plus(kids[0]);
        case Kind::susp: return Term::susp(kids[0]);
        case Kind::power: return Term::power(kids[0], t.index());
        default: return t;
    }
}

bool match_into(const Term& p, const Term& t, Bindings& b) {
    if (p.kind() == Kind::meta) {
        auto [it, fresh] = b.terms.emplace(p.name(), t);
        return fresh || it->second == t;
    }
    if (p.kind() == Kind::power) throw InvalidArgument("power pattern in a premise");
    if (p.kind() != t.kind()) return false;
    if (indexed(p.kind())) {
        if (!t.index().concrete()) return false;
        if (p.index().concrete()) return p.index().offset == t.index().offset;
        const long v = t.index().offset - p.index().offset;
        if (v < 0) return false;
        auto [it, fresh] = b.ints.emplace(p.index().var, v);
        return fresh || it->second == v;
    }
    for (std::size_t k = 0; k < p.children().size(); ++k)
        if (!match_into(p.children()[k], t.children()[k], b)) return false;
    return true;
}

long resolve(const Index& i, const std::map<std::string, long>& ints) {
    if (i.concrete()) return i.offset;
    auto it = ints.find(i.var);
    if (it == ints.end()) throw InvalidArgument("unbound index variable " + i.var);
    return it->second + i.offset;
}

void collect(const Term& t, std::set<std::string>& metas, std::set<std::string>& vars) {
    if (t.kind() == Kind::meta) metas.insert(t.name());
    if ((indexed(t.kind()) || t.kind() == Kind::power) && !t.index().concrete()) vars.insert(t.index().var);
    for (const auto& c : t.children()) collect(c, metas, vars);
}

bool has_power(const Term& t) {
    if (t.kind() == Kind::power) return true;
    for (const auto& c : t.children())
        if (has_power(c)) return true;
    return false;
}

std::optional<Bidegree> try_bidegree(const Term& t) {
    try {
        return bidegree(t);
    } catch (const NonSphereTerm&) {
        return std::nullopt;
    }
}

std::string path_string(const Path& p) {
    std::string s = "[";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
    return s + "]";
}

}  // namespace

std::optional<Bindings> match(const Term& pattern, const Term& t) {
    Bindings b;
    if (!match_into(pattern, t, b)) return std::nullopt;
    return b;
}

Term instantiate(const Term& p, const Bindings& b) {
    switch (p.kind()) {
        case Kind::meta: {
            auto it = b.terms.find(p.name());
            return it == b.terms.end() ? p : it->second;
        }
        case Kind::power: {
            const long k = resolve(p.index(), b.ints);
            return Term::smash_power(instantiate(p.children()[0], b), k);
        }
        case Kind::quad_odd:
        case Kind::quad_even:
        case Kind::x_even:
            if (p.index().concrete()) return p;
            return rebuild(p, Index{"", resolve(p.index(), b.ints)});
        default: break;
    }
    if (p.children().empty()) return p;
    std::vector<Term> kids;
    for (const auto& c : p.children()) kids.push_back(instantiate(c, b));
    return rebuild(p, std::move(kids));
}

std::optional<Term> apply_rule(const Rule& rule, const Term& t, const Path& pos) {
    const Term& sub = t.at(pos);
    auto b = match(rule.premise, sub);
    if (!b) return std::nullopt;
    return t.replace(pos, instantiate(rule.conclusion, *b));
}

namespace {

poly::RingPtr class_ring(std::initializer_list<const Term*> terms) {
    std::set<std::string> metas, vars;
    for (const Term* t : terms) collect(*t, metas, vars);
    std::vector<std::string> names{"ts", "tg"};
    for (const auto& m : metas) names.push_back("meta_" + m);
    return poly::IntRing::free(names);
}

poly::IntElement class_in(const poly::RingPtr& R, const Term& t, const std::map<std::string, long>& ints) {
    auto go = [&](auto& self, const Term& u) -> poly::IntElement {
        const auto ts = R->var(0), tg = R->var(1);
        auto idx = [&](long min) {
            const long v = resolve(u.index(), ints);
            if (v < min) throw InvalidArgument("index " + std::to_string(v) + " out of range in " + u.to_string());
            return static_cast<unsigned>(v);
        };
        switch (u.kind()) {
            case Kind::point:
            case Kind::x_even: return R->zero();
            case Kind::s0: return R->one();
            case Kind::s1: return ts;
            case Kind::gm: return tg;
            case Kind::p1: return ts * tg;
            case Kind::quad_odd: {
                const unsigned m = idx(1);
                return ts.pow(m - 1) * tg.pow(m);
            }
            case Kind::quad_even: return (ts * tg).pow(idx(0));
            case Kind::smash: return self(self, u.children()[0]) * self(self, u.children()[1]);
            case Kind::plus: return self(self, u.children()[0]) + R->one();
            case Kind::susp: return ts * self(self, u.children()[0]);
            case Kind::cofiber: return self(self, u.children()[1]) - self(self, u.children()[0]);
            case Kind::meta: return R->var("meta_" + u.name());
            case Kind::power: return self(self, u.children()[0]).pow(idx(0));
        }
        throw InvalidArgument("unknown term kind");
    };
    return go(go, t);
}

// Both classes in one ring, so they compare directly.
bool same_class(const Term& a, const Term& b, poly::IntElement* ca = nullptr, poly::IntElement* cb = nullptr) {
    const auto R = class_ring({&a, &b});
    const auto x = class_in(R, a, {}), y = class_in(R, b, {});
    if (ca) *ca = x;
    if (cb) *cb = y;
    return x == y;
}

}  // namespace

poly::IntElement term_class(const Term& t, const std::map<std::string, long>& ints) {
    return class_in(class_ring({&t}), t, ints);
}

void RuleTable::add(Rule r) {
    if (find(r.name)) throw InvalidArgument("rule " + r.name + " already registered");
    if (has_power(r.premise)) throw InvalidArgument("rule " + r.name + ": power pattern in the premise");
    std::set<std::string> pm, pv, cm, cv;
    collect(r.premise, pm, pv);
    collect(r.conclusion, cm, cv);
    for (const auto& m : cm)
        if (!pm.count(m)) throw InvalidArgument("rule " + r.name + ": metavariable " + m + " not bound by the premise");
    for (const auto& v : cv)
        if (!pv.count(v)) throw InvalidArgument("rule " + r.name + ": index " + v + " not bound by the premise");

    // Every assignment of 0..3 to the index variables.
    std::vector<std::string> vars(pv.begin(), pv.end());
    std::vector<long> vals(vars.size(), 0);
    for (;;) {
        Bindings b;
        for (std::size_t k = 0; k < vars.size(); ++k) b.ints[vars[k]] = vals[k];
        const Term lhs = instantiate(r.premise, b), rhs = instantiate(r.conclusion, b);
        poly::IntElement cl, cr;
        if (!same_class(lhs, rhs, &cl, &cr))
            throw InvalidArgument("rule " + r.name + " changes the class: " + lhs.to_string() + " -> " +
                                  rhs.to_string() + " (" + cl.to_string() + " vs " + cr.to_string() + ")");
        const auto bl = try_bidegree(lhs), br = try_bidegree(rhs);
        if (bl && br && !(*bl == *br))
            throw InvalidArgument("rule " + r.name + " changes the bidegree: " + bl->to_string() + " vs " +
                                  br->to_string());
        std::size_t k = 0;
        while (k < vals.size() && ++vals[k] > 3) vals[k++] = 0;
        if (k == vals.size()) break;
    }
    rules_.push_back(std::move(r));
}

const Rule* RuleTable::find(const std::string& name) const {
    for (const auto& r : rules_)
        if (r.name == name) return &r;
    return nullptr;
}

const Rule& RuleTable::at(const std::string& name) const {
    if (const Rule* r = find(name)) return *r;
    throw InvalidArgument("unknown rule " + name);
}

const RuleTable& RuleTable::standard() {
    static const RuleTable table = [] {
        const Term X = Term::meta("X"), Y = Term::meta("Y"), Z = Term::meta("Z"), T = Term::meta("T");
        const Index n0{"n", 0}, n1{"n", 1}, n2{"n", 2}, m0{"m", 0}, m1{"m", 1};
        const Term P1 = Term::p1();
        RuleTable t;
        t.add({"cofiber-sequence", Term::quad_even(n1),
               Term::cofiber(P1, Term::smash(P1, Term::plus(Term::quad_even(n0)))),
               "Qeven(n+1) is the cofiber of P1 -> P1 /\\ Plus(Qeven(n)), from the closed complement of "
               "the coordinate hyperplane and homotopy purity"});
        t.add({"split-cofiber", Term::cofiber(Y, Term::smash(Y, Term::plus(X))), Term::smash(X, Y),
               "a cofiber sequence Y -> Y /\\ Plus(X) with a retraction splits off X /\\ Y"});
        t.add({"q0-is-s0", Term::quad_even(0), Term::s0(), "axiom: Q0 is two points, i.e. S0"});
        t.add({"q2-is-p1", Term::quad_even(1), P1, "axiom: Q2 is SL2 mod its diagonal torus, equivalent to P1"});
        t.add({"q4-is-p1-smash-p1", Term::quad_even(2), Term::smash(P1, P1), "axiom: Q4 is equivalent to P1 /\\ P1"});
        t.add({"odd-quadric-sphere", Term::quad_odd(m1),
               Term::smash(Term::power(Term::s1(), m0), Term::power(Term::gm(), m1)),
               "axiom: Qodd(m) retracts onto A^m minus the origin, which is S1^(m-1) /\\ Gm^m"});
        t.add({"p1-is-s1-smash-gm", P1, Term::smash(Term::s1(), Term::gm()), "axiom: P1 is S1 /\\ Gm"});
        t.add({"suspension", Term::susp(T), Term::smash(Term::s1(), T), "definition of simplicial suspension"});
        t.add({"point-absorbs-left", Term::smash(Term::point(), T), Term::point(), "pt /\\ T = pt"});
        t.add({"point-absorbs-right", Term::smash(T, Term::point()), Term::point(), "T /\\ pt = pt"});
        t.add({"s0-unit-left", Term::smash(Term::s0(), T), T, "S0 is the unit for smash"});
        t.add({"s0-unit-right", Term::smash(T, Term::s0()), T, "S0 is the unit for smash"});
        t.add({"x2-contractible", Term::x_even(1), Term::point(), "axiom: X(1) is isomorphic to the affine plane"});
        t.add({"x-cofiber-sequence", Term::x_even(n2),
               Term::cofiber(P1, Term::smash(P1, Term::plus(Term::x_even(n1)))),
               "X(n+2) is the cofiber of P1 -> P1 /\\ Plus(X(n+1)), by the same purity argument"});
        t.add({"octahedral", Term::cofiber(Term::cofiber(X, Y), Term::cofiber(X, Z)), Term::cofiber(Y, Z),
               "octahedral axiom for composable maps X -> Y -> Z"});
        return t;
    }();
    return table;
}

// ---- traces ----

void replay(const DerivationTrace& trace, const RuleTable& table) {
    Term cur = trace.lhs;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const TraceStep& s = trace.steps[k];
        const std::string where = "step " + std::to_string(k + 1) + " (" + s.rule + " at " + path_string(s.pos) + ")";
        const Rule* r = table.find(s.rule);
        if (!r) throw VerificationFailure(where + ": rule is not registered");
        if (!(s.before == cur))
            throw VerificationFailure(where + ": before is " + s.before.to_string() + ", running term is " +
                                      cur.to_string());
        std::optional<Term> next;
        try {
            next = apply_rule(*r, cur, s.pos);
        } catch (const InvalidArgument& e) {
            throw VerificationFailure(where + ": " + e.what());
        }
        if (!next) throw VerificationFailure(where + ": premise does not match " + cur.at(s.pos).to_string());
        if (!(*next == s.after))
            throw VerificationFailure(where + ": rule gives " + next->to_string() + ", trace says " +
                                      s.after.to_string());
        if (!same_class(cur, *next))
            throw VerificationFailure(where + ": class changed");
        const auto b0 = try_bidegree(cur), b1 = try_bidegree(*next);
        if (b0 && b1 && !(*b0 == *b1))
            throw VerificationFailure(where + ": bidegree changed from " + b0->to_string() + " to " + b1->to_string());
        cur = *next;
    }
    if (!(cur == trace.rhs))
        throw VerificationFailure("trace ends at " + cur.to_string() + ", goal is " + trace.rhs.to_string());
}

namespace {

void push(DerivationTrace& tr, Term& cur, const std::string& rule, const Path& pos) {
    const Rule& r = RuleTable::standard().at(rule);
    auto next = apply_rule(r, cur, pos);
    if (!next) throw VerificationFailure("rule " + rule + " does not apply at " + path_string(pos));
    tr.steps.push_back({rule, r.justification, pos, cur, *next});
    cur = *next;
}

}  // namespace

DerivationTrace derive_even(unsigned n) {
    if (n < 1) throw InvalidArgument("derive_even needs n >= 1");
    DerivationTrace tr{Term::quad_even(static_cast<long>(n)), Term::smash_power(Term::p1(), n), {}};
    Term cur = tr.lhs;
    Path pos;
    for (unsigned k = 0; k + 1 < n; ++k) {
        push(tr, cur, "cofiber-sequence", pos);
        push(tr, cur, "split-cofiber", pos);
        pos.push_back(0);
    }
    push(tr, cur, "q2-is-p1", pos);
    replay(tr);
    return tr;
}

DerivationTrace derive_contractible(unsigned n) {
    if (n < 1) throw InvalidArgument("derive_contractible needs n >= 1");
    DerivationTrace tr{Term::x_even(static_cast<long>(n)), Term::point(), {}};
    Term cur = tr.lhs;
    Path pos;
    for (unsigned k = 0; k + 1 < n; ++k) {
        push(tr, cur, "x-cofiber-sequence", pos);
        push(tr, cur, "split-cofiber", pos);
        pos.push_back(0);
    }
    push(tr, cur, "x2-contractible", pos);
    while (!pos.empty()) {
        pos.pop_back();
        push(tr, cur, "point-absorbs-left", pos);
    }
    replay(tr);
    return tr;
}

Json to_json(const DerivationTrace& t) {
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"rule", s.rule},
                         {"paper_ref", s.justification},
                         {"pos", s.pos},
                         {"before", s.before.to_string()},
                         {"after", s.after.to_string()}});
    return {{"goal", {t.lhs.to_string(), t.rhs.to_string()}}, {"steps", std::move(steps)}};
}

DerivationTrace trace_from_json(const Json& j) {
    try {
        const auto& goal = j.at("goal");
        if (!goal.is_array() || goal.size() != 2) throw InvalidArgument("trace goal must be a pair of terms");
        DerivationTrace t{parse_term(goal[0].get<std::string>()), parse_term(goal[1].get<std::string>()), {}};
        for (const auto& s : j.at("steps"))
            t.steps.push_back({s.at("rule").get<std::string>(), s.value("paper_ref", std::string()),
                               s.at("pos").get<Path>(), parse_term(s.at("before").get<std::string>()),
                               parse_term(s.at("after").get<std::string>())});
        return t;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed trace JSON: ") + ex.what());
    }
}

std::string to_text(const DerivationTrace& t) {
    std::string out = "goal: " + t.lhs.to_string() + "  ~  " + t.rhs.to_string() + "\n";
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& s = t.steps[k];
        out += std::to_string(k + 1) + ". " + s.rule + " at " + path_string(s.pos) + "\n   " +
               s.before.to_string() + "\n   => " + s.after.to_string() + "\n   [" + s.justification + "]\n";
    }
    return out;
}

// ---- classifier ----

std::string Verdict::to_string() const {
    switch (kind) {
        case Kind::smooth_model: return "SmoothModel(" + witness->to_string() + ")";
        case Kind::not_smooth: return "NotSmooth (" + reason + ")";
        case Kind::open_case: return "OpenCase (" + reason + ")";
    }
    return "?";
}

Verdict classify_smooth_model(unsigned i, unsigned j) {
    if (i > j) return {Verdict::Kind::not_smooth, std::nullopt, "i > j"};
    if (i == j) return {Verdict::Kind::smooth_model, Term::quad_even(static_cast<long>(i)), "i == j"};
    if (i + 1 == j) return {Verdict::Kind::smooth_model, Term::quad_odd(static_cast<long>(j)), "i == j - 1"};
    return {Verdict::Kind::open_case, std::nullopt, "i < j - 1, no smooth model known"};
}

Json to_json(const Verdict& v, unsigned i, unsigned j) {
    static const char* names[] = {"SmoothModel", "NotSmooth", "OpenCase"};
    Json out{{"i", i}, {"j", j}, {"verdict", names[static_cast<int>(v.kind)]}, {"reason", v.reason}};
    if (v.witness) {
        const Bidegree b = bidegree(*v.witness);
        out["witness"] = v.witness->to_string();
        out["witness_bidegree"] = {b.i, b.j};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

}  // namespace qsphere::spherecalc
