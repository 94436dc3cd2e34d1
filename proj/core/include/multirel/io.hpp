#pragma once

// Text and JSON forms of relations.
//
// Text form follows set notation with named elements:
//     {(a,∅),(a,{a}),(a,{b})}      ∅ or {} for the empty relation
// JSON form:
//     {"src": "X", "tgt": "P(Y)", "pairs": [["a", ["a","b"]], ...]}

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>  // nlohmann

#include "multirel/relation.hpp"

namespace multirel {

/// Parses "X", "P(X)", "P(P(X))", ...; throws SyntaxError.
ObjType parse_objtype(std::string_view text);

std::string to_text(const Universe& u, const Relation& r);
nlohmann::json to_json(const Universe& u, const Relation& r);
Relation relation_from_json(const Universe& u, const nlohmann::json& j);

/// An element written in set notation before it is given a type.
struct ElementLiteral {
  std::variant<std::size_t, std::vector<ElementLiteral>> value;  // atom index or set

  bool is_atom() const { return value.index() == 0; }
  /// Nesting depth if an atom pins it down (0 for atoms).
  std::optional<int> exact_depth() const;
  /// Smallest depth consistent with the literal (empty sets count as 1).
  int lower_depth() const;
  /// Largest atom index occurring anywhere, or -1.
  long max_atom() const;
};

struct RelationLiteral {
  std::vector<std::pair<ElementLiteral, ElementLiteral>> pairs;
};

/// Parses set notation. Atoms are letters a..z or decimal indices.
RelationLiteral parse_relation_literal(std::string_view text);

/// Types a literal; throws TypeError when an element does not fit.
Relation to_relation(const Universe& u, const RelationLiteral& lit, const ObjType& src, const ObjType& tgt);

inline Relation parse_relation(const Universe& u, std::string_view text, const ObjType& src, const ObjType& tgt) {
  return to_relation(u, parse_relation_literal(text), src, tgt);
}

}  // namespace multirel
