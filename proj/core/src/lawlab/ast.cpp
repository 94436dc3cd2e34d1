#include "multirel/lawlab/ast.hpp"

#include <array>
#include <utility>

namespace multirel::lawlab {

namespace {

constexpr std::array<std::pair<ConstName, std::string_view>, 11> kConsts{{
    {ConstName::Zero, "0"},
    {ConstName::Universal, "U"},
    {ConstName::Id, "Id"},
    {ConstName::One, "one"},
    {ConstName::LU, "lu"},
    {ConstName::LI, "li"},
    {ConstName::Eps, "eps"},
    {ConstName::Omega, "Om"},
    {ConstName::Cr, "Cr"},
    {ConstName::AU, "Au"},
    {ConstName::AI, "Ai"},
}};

constexpr std::array<std::pair<PredName, std::string_view>, 12> kPreds{{
    {PredName::Univalent, "univalent"},
    {PredName::Total, "total"},
    {PredName::Deterministic, "deterministic"},
    {PredName::Test, "test"},
    {PredName::InnerUnivalent, "inner_univalent"},
    {PredName::InnerTotal, "inner_total"},
    {PredName::InnerDeterministic, "inner_deterministic"},
    {PredName::UnionClosed, "union_closed"},
    {PredName::IntersectionClosed, "intersection_closed"},
    {PredName::UpClosed, "up_closed"},
    {PredName::DownClosed, "down_closed"},
    {PredName::ConvexClosed, "convex_closed"},
}};

// Binding strength, loosest first. Binary operators associate to the left.
enum Level : int { kMinus = 1, kCup, kCap, kPeleg, kCompose, kPrefix, kPostfix, kAtom };

int level(BinOp op) {
  switch (op) {
    case BinOp::Minus:
      return kMinus;
    case BinOp::Cup:
    case BinOp::ICup:
      return kCup;
    case BinOp::Cap:
    case BinOp::ICap:
      return kCap;
    case BinOp::Peleg:
    case BinOp::CoCompose:
      return kPeleg;
    case BinOp::Compose:
    case BinOp::LeftRes:
    case BinOp::RightRes:
      return kCompose;
    case BinOp::Syq:
      return kAtom;
  }
  return kAtom;
}

bool is_postfix(UnOp op) {
  return op == UnOp::Converse || op == UnOp::InnerComplement || op == UnOp::Dual;
}

int level(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return kAtom;
    case Term::Kind::Unary:
      if (t.unop == UnOp::Complement) return kPrefix;
      return is_postfix(t.unop) ? kPostfix : kAtom;
    case Term::Kind::Binary:
      return level(t.binop);
  }
  return kAtom;
}

std::string wrap(const Term& t, int min_level) {
  std::string s = render(t);
  return level(t) >= min_level ? s : "(" + s + ")";
}

// Formula strength, loosest first.
enum FLevel : int { kQuant = 1, kIff, kImplies, kOr, kAnd, kNot, kFAtom };

int flevel(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return kQuant;
    case Formula::Kind::Iff:
      return kIff;
    case Formula::Kind::Implies:
      return kImplies;
    case Formula::Kind::Or:
      return kOr;
    case Formula::Kind::And:
      return kAnd;
    case Formula::Kind::Not:
      return kNot;
    default:
      return kFAtom;
  }
}

std::string fwrap(const Formula& f, int min_level) {
  std::string s = render(f);
  return flevel(f) >= min_level ? s : "(" + s + ")";
}

}  // namespace

std::string_view spelling(UnOp op) {
  switch (op) {
    case UnOp::Complement:
      return "~";
    case UnOp::Converse:
      return "^";
    case UnOp::InnerComplement:
      return "^i";
    case UnOp::Dual:
      return "^d";
    case UnOp::Up:
      return "up";
    case UnOp::Down:
      return "down";
    case UnOp::Convex:
      return "conv";
    case UnOp::Dom:
      return "dom";
    case UnOp::Plift:
      return "plift";
    case UnOp::Klift:
      return "klift";
  }
  return "?";
}

std::string_view spelling(BinOp op) {
  switch (op) {
    case BinOp::Compose:
      return ";";
    case BinOp::Peleg:
      return "*";
    case BinOp::CoCompose:
      return "@";
    case BinOp::Cup:
      return "cup";
    case BinOp::Cap:
      return "cap";
    case BinOp::Minus:
      return "-";
    case BinOp::ICup:
      return "icup";
    case BinOp::ICap:
      return "icap";
    case BinOp::LeftRes:
      return "/";
    case BinOp::RightRes:
      return "\\";
    case BinOp::Syq:
      return "syq";
  }
  return "?";
}

std::string_view spelling(ConstName c) {
  for (auto [k, s] : kConsts) {
    if (k == c) return s;
  }
  return "?";
}

std::optional<ConstName> const_by_name(std::string_view name) {
  for (auto [k, s] : kConsts) {
    if (s == name) return k;
  }
  return std::nullopt;
}

std::size_t const_arity(ConstName c) {
  switch (c) {
    case ConstName::Zero:
    case ConstName::Universal:
    case ConstName::LU:
    case ConstName::LI:
    case ConstName::AU:
    case ConstName::AI:
      return 2;
    default:
      return 1;
  }
}

std::string_view spelling(CmpOp op) {
  switch (op) {
    case CmpOp::Eq:
      return "=";
    case CmpOp::Ne:
      return "!=";
    case CmpOp::Le:
      return "<=";
    case CmpOp::Ge:
      return ">=";
    case CmpOp::Lt:
      return "<";
    case CmpOp::LeH:
      return "<=H";
    case CmpOp::LeS:
      return "<=S";
    case CmpOp::LeEM:
      return "<=EM";
    case CmpOp::EqH:
      return "=H";
    case CmpOp::EqS:
      return "=S";
    case CmpOp::EqEM:
      return "=EM";
  }
  return "?";
}

std::string_view spelling(PredName p) {
  for (auto [k, s] : kPreds) {
    if (k == p) return s;
  }
  return "?";
}

std::optional<PredName> pred_by_name(std::string_view name) {
  for (auto [k, s] : kPreds) {
    if (s == name) return k;
  }
  return std::nullopt;
}

TermPtr Term::var(std::string name, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  t->loc = loc;
  return t;
}

TermPtr Term::constant_of(ConstName c, std::vector<ObjType> args, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Const;
  t->constant = c;
  t->type_args = std::move(args);
  t->loc = loc;
  return t;
}

TermPtr Term::unary(UnOp op, TermPtr a, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Unary;
  t->unop = op;
  t->kids = {std::move(a)};
  t->loc = loc;
  return t;
}

TermPtr Term::binary(BinOp op, TermPtr a, TermPtr b, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Binary;
  t->binop = op;
  t->kids = {std::move(a), std::move(b)};
  t->loc = loc;
  return t;
}

std::string render(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.name;
    case Term::Kind::Const: {
      std::string s(spelling(t.constant));
      if (!t.type_args.empty()) {
        s += "[";
        for (std::size_t i = 0; i < t.type_args.size(); ++i) s += (i ? "," : "") + t.type_args[i].to_string();
        s += "]";
      }
      return s;
    }
    case Term::Kind::Unary:
      if (t.unop == UnOp::Complement) return "~" + wrap(*t.kids[0], kPrefix);
      if (is_postfix(t.unop)) return wrap(*t.kids[0], kPostfix) + std::string(spelling(t.unop));
      return std::string(spelling(t.unop)) + "(" + render(*t.kids[0]) + ")";
    case Term::Kind::Binary: {
      if (t.binop == BinOp::Syq) return "syq(" + render(*t.kids[0]) + ", " + render(*t.kids[1]) + ")";
      const int l = level(t.binop);
      const bool tight = l == kCompose;
      const std::string op(spelling(t.binop));
      return wrap(*t.kids[0], l) + (tight ? op : " " + op + " ") + wrap(*t.kids[1], l + 1);
    }
  }
  return "?";
}

std::string render(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Cmp:
      return render(*f.terms[0]) + " " + std::string(spelling(f.cmp)) + " " + render(*f.terms[1]);
    case Formula::Kind::Pred:
      return std::string(spelling(f.pred)) + "(" + render(*f.terms[0]) + ")";
    case Formula::Kind::Not:
      return "not " + fwrap(*f.kids[0], kNot);
    case Formula::Kind::And:
      return fwrap(*f.kids[0], kAnd) + " and " + fwrap(*f.kids[1], kAnd + 1);
    case Formula::Kind::Or:
      return fwrap(*f.kids[0], kOr) + " or " + fwrap(*f.kids[1], kOr + 1);
    case Formula::Kind::Implies:
      return fwrap(*f.kids[0], kImplies + 1) + " -> " + fwrap(*f.kids[1], kImplies);
    case Formula::Kind::Iff:
      return fwrap(*f.kids[0], kIff) + " <-> " + fwrap(*f.kids[1], kIff + 1);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string s = f.kind == Formula::Kind::Forall ? "forall " : "exists ";
      for (std::size_t i = 0; i < f.binders.size(); ++i) {
        const Binder& b = f.binders[i];
        s += b.name;
        const bool last_of_group =
            i + 1 == f.binders.size() || f.binders[i + 1].type != b.type || !b.type.has_value();
        if (b.type && last_of_group) s += " : " + b.type->to_string();
        if (i + 1 < f.binders.size()) s += ", ";
      }
      return s + " . " + render(*f.kids[0]);
    }
  }
  return "?";
}

bool same_shape(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case Term::Kind::Var:
      if (a.name != b.name) return false;
      break;
    case Term::Kind::Const:
      if (a.constant != b.constant || a.type_args != b.type_args) return false;
      break;
    case Term::Kind::Unary:
      if (a.unop != b.unop) return false;
      break;
    case Term::Kind::Binary:
      if (a.binop != b.binop) return false;
      break;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!same_shape(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

bool same_shape(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.terms.size() != b.terms.size() || a.kids.size() != b.kids.size() ||
      a.binders.size() != b.binders.size()) {
    return false;
  }
  if (a.kind == Formula::Kind::Cmp && a.cmp != b.cmp) return false;
  if (a.kind == Formula::Kind::Pred && a.pred != b.pred) return false;
  for (std::size_t i = 0; i < a.binders.size(); ++i) {
    if (a.binders[i].name != b.binders[i].name || a.binders[i].type != b.binders[i].type) return false;
  }
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!same_shape(*a.terms[i], *b.terms[i])) return false;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!same_shape(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

}  // namespace multirel::lawlab
