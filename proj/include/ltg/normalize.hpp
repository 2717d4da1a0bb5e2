#pragma once

#include <utility>

#include "ltg/program.hpp"

namespace ltg {

/// Rewrites the program so that every rule is either base (body over database
/// predicates only) or non-base (body over derived predicates only):
///  - a predicate that has facts and also heads a rule keeps its name as a derived
///    predicate; its facts move to a fresh database predicate copied over by a base rule;
///  - a database predicate used in a mixed body is replaced there by a fresh derived
///    copy defined by a base rule.
/// Fact variables are preserved. Idempotent.
Program normalize(const Program& prog);

/// Appends a fresh nullary dummy atom to the rule body and returns the fact that
/// carries the rule's probability. The dummy predicate is registered in `symbols`.
/// The returned fact's `var` is left for the caller to assign.
std::pair<Rule, ProbFact> desugar_rule_probability(SymbolTable& symbols, const Rule& rule, double prob);

}  // namespace ltg
