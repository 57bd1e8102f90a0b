#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsphere/poly/serialize.hpp"
#include "qsphere/spherecalc/term.hpp"

namespace qsphere::spherecalc {

using poly::Json;

/// Metavariable and index-variable assignments produced by matching.
struct Bindings {
    std::map<std::string, Term> terms;
    std::map<std::string, long> ints;
};

/// premise => conclusion. Patterns may use Term::meta leaves and symbolic indices
/// (Index{"n", k} matches a concrete index v when v - k >= 0, binding n = v - k).
/// Term::power nodes may appear in the conclusion only.
struct Rule {
    std::string name;
    Term premise;
    Term conclusion;
    std::string justification;
};

std::optional<Bindings> match(const Term& pattern, const Term& t);
Term instantiate(const Term& pattern, const Bindings& b);

/// Rewrites t at `pos` with `rule`; nullopt if the premise does not match there.
std::optional<Term> apply_rule(const Rule& rule, const Term& t, const Path& pos);

/// Formal class of a term in Z[ts, tg, metas...]: a reduced-Euler-characteristic style
/// invariant with S1 -> ts, Gm -> tg, pt -> 0, S0 -> 1, smash -> product, Plus -> +1,
/// Cofib(a, b) -> [b] - [a]. Symbolic indices must be bound in `ints`.
poly::IntElement term_class(const Term& t, const std::map<std::string, long>& ints = {});

/// An immutable set of rules. add() rejects a rule unless premise and conclusion have the
/// same class (and the same bidegree where one is defined) for every index assignment in
/// 0..3 of the rule's index variables. Throws InvalidArgument.
class RuleTable {
public:
    static const RuleTable& standard();

    void add(Rule r);
    const Rule* find(const std::string& name) const;
    const Rule& at(const std::string& name) const;  // throws InvalidArgument
    const std::vector<Rule>& rules() const { return rules_; }

private:
    std::vector<Rule> rules_;
};

struct TraceStep {
    std::string rule;
    std::string justification;
    Path pos;
    Term before;
    Term after;
};

struct DerivationTrace {
    Term lhs;
    Term rhs;
    std::vector<TraceStep> steps;
};

/// Replays the steps from lhs: every rule is registered, every `before` is the running
/// term, the rule applied at `pos` yields `after`, class and bidegree are unchanged, and
/// the last term is rhs. Throws VerificationFailure naming the step.
void replay(const DerivationTrace& trace, const RuleTable& table = RuleTable::standard());

/// Qeven(n) ~ P1^n, n >= 1.
DerivationTrace derive_even(unsigned n);
/// X(n) ~ pt, n >= 1.
DerivationTrace derive_contractible(unsigned n);

/// {"goal": [lhs, rhs], "steps": [{"rule", "paper_ref", "pos", "before", "after"}]}; terms
/// as printed strings.
Json to_json(const DerivationTrace& t);
DerivationTrace trace_from_json(const Json& j);
std::string to_text(const DerivationTrace& t);

struct Verdict {
    enum class Kind { smooth_model, not_smooth, open_case };
    Kind kind;
    std::optional<Term> witness;  // a quadric for smooth_model
    std::string reason;

    std::string to_string() const;
};

/// Total on i, j >= 0: i > j -> NotSmooth; i == j -> Qeven(i); i == j - 1 -> Qodd(j);
/// otherwise OpenCase.
Verdict classify_smooth_model(unsigned i, unsigned j);

Json to_json(const Verdict& v, unsigned i, unsigned j);

}  // namespace qsphere::spherecalc
