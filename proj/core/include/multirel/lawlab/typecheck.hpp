#pragma once

// Type inference for terms and formulas. Object types are P^k(atom) with
// atom a base set or a type variable, so unification is a depth comparison.

#include <string>
#include <vector>

#include "multirel/lawlab/ast.hpp"

namespace multirel::lawlab {

/// A variable visible to a term, bound to environment slot `index`.
struct ScopeVar {
  std::string name;
  RelTypeDecl type;
};

/// Types `t` in place (src/tgt/slot/closed on every node). Variables resolve
/// to `scope` slots by position. Throws SourceError(TypeError) on ill-typed
/// or ambiguous terms and TypeError for unknown base sets.
void typecheck_term(const Universe& u, const std::vector<ScopeVar>& scope, Term& t);

/// Types a formula; quantifier binders receive slots from `scope.size()`
/// upwards. Returns the total number of slots needed.
int typecheck_formula(const Universe& u, const std::vector<ScopeVar>& scope, Formula& f);

/// Names occurring free in a formula, in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);

/// Checks that every base set of `t` is declared in `u`.
void require_known_sets(const Universe& u, const RelTypeDecl& t);

}  // namespace multirel::lawlab
