#pragma once

// Denotations of typed terms and formulas.

#include <vector>

#include "multirel/lawlab/ast.hpp"

namespace multirel::lawlab {

using Env = std::vector<Relation>;

/// Evaluates every closed subterm once and stores it on the node, so later
/// evaluations (possibly from several threads) only read the tree.
void precompute_closed(const Universe& u, Term& t);
void precompute_closed(const Universe& u, Formula& f);

/// Evaluates a typechecked term; variables are read from `env` by slot.
Relation eval(const Universe& u, const Term& t, const Env& env);

/// Decides a typechecked formula. Quantifiers enumerate their homsets in
/// ascending canonical order and write binder slots of `env`.
/// Throws SpaceTooLarge when a bound variable ranges over more than
/// 2^max_binder_bits relations.
bool holds(const Universe& u, const Formula& f, Env& env, unsigned max_binder_bits = 24);

}  // namespace multirel::lawlab
