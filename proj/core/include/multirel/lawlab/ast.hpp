#pragma once

// Syntax trees for relational terms and formulas over them.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multirel/relation.hpp"

namespace multirel::lawlab {

struct Loc {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// A relation type src <-> tgt written in source.
struct RelTypeDecl {
  ObjType src;
  ObjType tgt;
  std::string to_string() const { return src.to_string() + " <-> " + tgt.to_string(); }
  friend bool operator==(const RelTypeDecl&, const RelTypeDecl&) = default;
};

enum class UnOp { Complement, Converse, InnerComplement, Dual, Up, Down, Convex, Dom, Plift, Klift };
enum class BinOp { Compose, Peleg, CoCompose, Cup, Cap, Minus, ICup, ICap, LeftRes, RightRes, Syq };

enum class ConstName { Zero, Universal, Id, One, LU, LI, Eps, Omega, Cr, AU, AI };

std::string_view spelling(UnOp op);
std::string_view spelling(BinOp op);
std::string_view spelling(ConstName c);
std::optional<ConstName> const_by_name(std::string_view name);
/// Number of type arguments a constant takes: 0/U take [A,B]; Id, one, eps,
/// Om, Cr take [A]; lu, li, Au, Ai take [X,Y] for X <-> P(Y).
std::size_t const_arity(ConstName c);

struct Term;
using TermPtr = std::shared_ptr<Term>;

struct Term {
  enum class Kind { Var, Const, Unary, Binary };

  Kind kind = Kind::Var;
  Loc loc;
  std::string name;               // Var
  ConstName constant{};           // Const
  std::vector<ObjType> type_args; // Const, explicit
  UnOp unop{};
  BinOp binop{};
  std::vector<TermPtr> kids;

  // Filled in by the typechecker.
  ObjType src;
  ObjType tgt;
  int slot = -1;        // Var: environment slot
  bool closed = false;  // no variables below
  std::shared_ptr<const Relation> cached;

  static TermPtr var(std::string name, Loc loc = {});
  static TermPtr constant_of(ConstName c, std::vector<ObjType> args = {}, Loc loc = {});
  static TermPtr unary(UnOp op, TermPtr a, Loc loc = {});
  static TermPtr binary(BinOp op, TermPtr a, TermPtr b, Loc loc = {});
};

enum class CmpOp { Eq, Ne, Le, Ge, Lt, LeH, LeS, LeEM, EqH, EqS, EqEM };
enum class PredName {
  Univalent,
  Total,
  Deterministic,
  Test,
  InnerUnivalent,
  InnerTotal,
  InnerDeterministic,
  UnionClosed,
  IntersectionClosed,
  UpClosed,
  DownClosed,
  ConvexClosed
};

std::string_view spelling(CmpOp op);
std::string_view spelling(PredName p);
std::optional<PredName> pred_by_name(std::string_view name);

struct Formula;
using FormulaPtr = std::shared_ptr<Formula>;

struct Binder {
  std::string name;
  std::optional<RelTypeDecl> type;  // inferred when absent
  int slot = -1;
  RelTypeDecl resolved;             // after typechecking
};

struct Formula {
  enum class Kind { Cmp, Pred, Not, And, Or, Implies, Iff, Forall, Exists };

  Kind kind = Kind::Cmp;
  Loc loc;
  CmpOp cmp{};
  PredName pred{};
  std::vector<TermPtr> terms;     // Cmp: 2, Pred: 1
  std::vector<FormulaPtr> kids;   // connectives and quantifier body
  std::vector<Binder> binders;    // quantifiers
};

/// Text with minimal parentheses; parsing it yields an equal tree.
std::string render(const Term& t);
std::string render(const Formula& f);

bool same_shape(const Term& a, const Term& b);
bool same_shape(const Formula& a, const Formula& b);

struct VarDecl {
  std::string name;
  RelTypeDecl type;
  Loc loc;
};

struct Law {
  std::string name;  // explicit name, or empty
  FormulaPtr formula;
  Loc loc;
  std::string display_name() const { return name.empty() ? render(*formula) : name; }
};

/// A parsed law file. Set and variable declarations are file-global.
struct LawFile {
  std::vector<std::pair<std::string, std::size_t>> sets;
  std::vector<VarDecl> vars;
  std::vector<Law> laws;
};

}  // namespace multirel::lawlab
