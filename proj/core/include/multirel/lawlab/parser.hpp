#pragma once

// Law-file and expression parsing.
//
//   set X = 2
//   var R, S : X <-> P(Y)
//   law union-comm: R icup S = S icup R
//   law forall T : X <-> P(Y) . (R icup S) icup T = R icup (S icup T)
//
// Statements are separated by their keywords, so a whole file may sit on one
// line. `#` starts a comment.

#include <string_view>

#include "multirel/lawlab/ast.hpp"

namespace multirel::lawlab {

/// Throws SourceError(SyntaxError) with line and column.
LawFile parse_law_file(std::string_view text);
TermPtr parse_term(std::string_view text);
FormulaPtr parse_formula(std::string_view text);
RelTypeDecl parse_rel_type(std::string_view text);

}  // namespace multirel::lawlab
