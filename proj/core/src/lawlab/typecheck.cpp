#include "multirel/lawlab/typecheck.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include "multirel/error.hpp"

namespace multirel::lawlab {

namespace {

// P^depth(base) or P^depth(?var).
struct TT {
  int var = -1;
  std::string base;
  unsigned depth = 0;

  TT pow() const { return TT{var, base, depth + 1}; }
};

struct RT {
  TT src;
  TT tgt;
};

class Inference {
 public:
  explicit Inference(const Universe& u) : u_(u) {}

  TT fresh() {
    subst_.emplace_back();
    return TT{static_cast<int>(subst_.size()) - 1, {}, 0};
  }

  static TT of(const ObjType& t) { return TT{-1, t.base, t.depth}; }
  static RT of(const RelTypeDecl& t) { return RT{of(t.src), of(t.tgt)}; }

  TT resolve(TT t) const {
    while (t.var >= 0 && subst_[static_cast<std::size_t>(t.var)]) {
      const TT& b = *subst_[static_cast<std::size_t>(t.var)];
      t = TT{b.var, b.base, b.depth + t.depth};
    }
    return t;
  }

  bool unify(TT a, TT b) {
    a = resolve(a);
    b = resolve(b);
    if (a.var < 0 && b.var < 0) return a.base == b.base && a.depth == b.depth;
    if (a.var >= 0 && a.var == b.var) return a.depth == b.depth;
    if (a.var < 0 || (b.var >= 0 && b.depth < a.depth)) std::swap(a, b);
    if (b.depth < a.depth) return false;
    subst_[static_cast<std::size_t>(a.var)] = TT{b.var, b.base, b.depth - a.depth};
    return true;
  }

  std::string show(TT t) const {
    t = resolve(t);
    std::string s = t.var >= 0 ? "?" + std::to_string(t.var) : t.base;
    for (unsigned i = 0; i < t.depth; ++i) s = "P(" + s + ")";
    return s;
  }
  std::string show(const RT& t) const { return show(t.src) + " <-> " + show(t.tgt); }

  std::optional<ObjType> concrete(TT t) const {
    t = resolve(t);
    if (t.var >= 0) return std::nullopt;
    return ObjType{t.base, t.depth};
  }

  // ---- terms ----

  RT infer(Term& t, std::vector<std::pair<std::string, RT>>& scope) {
    RT r = infer_node(t, scope);
    types_[&t] = r;
    return r;
  }

  void constrain(const Term& at, TT a, TT b, const std::string& what) {
    if (!unify(a, b)) {
      throw SourceError(ErrorKind::TypeError, at.loc.line, at.loc.column,
                        "in `" + render(at) + "`: " + what + "; got " + show(a) + " and " + show(b));
    }
  }

  void inner_target(const Term& at, const RT& t, const std::string& who) {
    const TT v = fresh();
    if (!unify(t.tgt, v.pow())) {
      throw SourceError(ErrorKind::TypeError, at.loc.line, at.loc.column,
                        "in `" + render(at) + "`: " + who + " needs a powerset target, got " + show(t));
    }
  }

  RT infer_node(Term& t, std::vector<std::pair<std::string, RT>>& scope) {
    switch (t.kind) {
      case Term::Kind::Var: {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
          if (it->first == t.name) {
            t.slot = static_cast<int>(scope.rend() - it) - 1;
            return it->second;
          }
        }
        throw SourceError(ErrorKind::TypeError, t.loc.line, t.loc.column, "undeclared variable `" + t.name + "`");
      }
      case Term::Kind::Const:
        return constant(t);
      case Term::Kind::Unary: {
        const RT a = infer(*t.kids[0], scope);
        switch (t.unop) {
          case UnOp::Complement:
            return a;
          case UnOp::Converse:
            return RT{a.tgt, a.src};
          case UnOp::InnerComplement:
          case UnOp::Dual:
          case UnOp::Up:
          case UnOp::Down:
          case UnOp::Convex:
            inner_target(t, a, "`" + std::string(spelling(t.unop)) + "`");
            return a;
          case UnOp::Dom:
            return RT{a.src, a.src};
          case UnOp::Plift:
          case UnOp::Klift:
            inner_target(t, a, "`" + std::string(spelling(t.unop)) + "`");
            return RT{a.src.pow(), a.tgt};
        }
        break;
      }
      case Term::Kind::Binary: {
        const RT a = infer(*t.kids[0], scope);
        const RT b = infer(*t.kids[1], scope);
        switch (t.binop) {
          case BinOp::Compose:
            constrain(t, a.tgt, b.src, "target of the left operand must be the source of the right");
            return RT{a.src, b.tgt};
          case BinOp::Peleg:
          case BinOp::CoCompose: {
            const TT v = fresh();
            constrain(t, a.tgt, v.pow(), "left operand must have a powerset target");
            constrain(t, v, b.src, "inner type of the left operand must be the source of the right");
            inner_target(t, b, "right operand");
            return RT{a.src, b.tgt};
          }
          case BinOp::Cup:
          case BinOp::Cap:
          case BinOp::Minus:
          case BinOp::ICup:
          case BinOp::ICap:
            constrain(t, a.src, b.src, "operands must share a source");
            constrain(t, a.tgt, b.tgt, "operands must share a target");
            if (t.binop == BinOp::ICup || t.binop == BinOp::ICap) inner_target(t, a, "operands");
            return a;
          case BinOp::LeftRes:
            constrain(t, a.tgt, b.tgt, "operands of / must share a target");
            return RT{a.src, b.src};
          case BinOp::RightRes:
          case BinOp::Syq:
            constrain(t, a.src, b.src, "operands must share a source");
            return RT{a.tgt, b.tgt};
        }
        break;
      }
    }
    throw Error(ErrorKind::TypeError, "unknown term");
  }

  RT constant(const Term& t) {
    const std::size_t arity = const_arity(t.constant);
    if (!t.type_args.empty() && t.type_args.size() != arity) {
      throw SourceError(ErrorKind::TypeError, t.loc.line, t.loc.column,
                        "`" + std::string(spelling(t.constant)) + "` takes " + std::to_string(arity) +
                            " type argument(s), got " + std::to_string(t.type_args.size()));
    }
    std::vector<TT> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(t.type_args.empty() ? fresh() : of(t.type_args[i]));
    switch (t.constant) {
      case ConstName::Zero:
      case ConstName::Universal:
        return RT{args[0], args[1]};
      case ConstName::Id:
        return RT{args[0], args[0]};
      case ConstName::One:
      case ConstName::Eps:
        return RT{args[0], args[0].pow()};
      case ConstName::Omega:
      case ConstName::Cr:
        return RT{args[0].pow(), args[0].pow()};
      case ConstName::LU:
      case ConstName::LI:
      case ConstName::AU:
      case ConstName::AI:
        return RT{args[0], args[1].pow()};
    }
    throw Error(ErrorKind::TypeError, "unknown constant");
  }

  // ---- formulas ----

  void infer(Formula& f, std::vector<std::pair<std::string, RT>>& scope, std::vector<Binder*>& binders) {
    switch (f.kind) {
      case Formula::Kind::Cmp: {
        const RT a = infer(*f.terms[0], scope);
        const RT b = infer(*f.terms[1], scope);
        const Term& at = *f.terms[0];
        if (!unify(a.src, b.src) || !unify(a.tgt, b.tgt)) {
          throw SourceError(ErrorKind::TypeError, f.loc.line, f.loc.column,
                            "in `" + render(f) + "`: compared terms have types " + show(a) + " and " + show(b));
        }
        if (f.cmp >= CmpOp::LeH) inner_target(at, a, "inner preorder");
        return;
      }
      case Formula::Kind::Pred: {
        const RT a = infer(*f.terms[0], scope);
        if (f.pred >= PredName::InnerUnivalent) {
          inner_target(*f.terms[0], a, "`" + std::string(spelling(f.pred)) + "`");
        }
        return;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const std::size_t before = scope.size();
        for (Binder& b : f.binders) {
          const RT t = b.type ? of(*b.type) : RT{fresh(), fresh()};
          b.slot = static_cast<int>(scope.size());
          scope.emplace_back(b.name, t);
          binders.push_back(&b);
          binder_types_[&b] = t;
        }
        infer(*f.kids[0], scope, binders);
        scope.resize(before);
        return;
      }
      default:
        for (auto& k : f.kids) infer(*k, scope, binders);
        return;
    }
  }

  // Writes resolved types into the tree. Returns whether the term is closed.
  bool finish(Term& t) {
    const RT& r = types_.at(&t);
    const auto s = concrete(r.src);
    const auto g = concrete(r.tgt);
    if (!s || !g) {
      std::string hint;
      if (t.kind == Term::Kind::Const) {
        hint = "; add type arguments, e.g. " + std::string(spelling(t.constant)) +
               (const_arity(t.constant) == 2 ? "[X,Y]" : "[X]");
      }
      throw SourceError(ErrorKind::TypeError, t.loc.line, t.loc.column,
                        "cannot infer the type of `" + render(t) + "` (" + show(r) + ")" + hint);
    }
    t.src = *s;
    t.tgt = *g;
    require_known_sets(u_, RelTypeDecl{t.src, t.tgt});
    bool closed = t.kind != Term::Kind::Var;
    for (auto& k : t.kids) closed = finish(*k) && closed;
    t.closed = closed;
    t.cached.reset();
    return closed;
  }

  void finish(Formula& f) {
    for (auto& t : f.terms) finish(*t);
    for (auto& k : f.kids) finish(*k);
    for (Binder& b : f.binders) {
      const RT& r = binder_types_.at(&b);
      const auto s = concrete(r.src);
      const auto g = concrete(r.tgt);
      if (!s || !g) {
        throw SourceError(ErrorKind::TypeError, f.loc.line, f.loc.column,
                          "cannot infer the type of bound variable `" + b.name + "`; annotate it");
      }
      b.resolved = RelTypeDecl{*s, *g};
      require_known_sets(u_, b.resolved);
    }
  }

 private:
  const Universe& u_;
  std::vector<std::optional<TT>> subst_;
  std::unordered_map<const Term*, RT> types_;
  std::unordered_map<const Binder*, RT> binder_types_;
};

void collect_free(const Term& t, std::set<std::string>& bound, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var && !bound.count(t.name) &&
      std::find(out.begin(), out.end(), t.name) == out.end()) {
    out.push_back(t.name);
  }
  for (const auto& k : t.kids) collect_free(*k, bound, out);
}

void collect_free(const Formula& f, std::set<std::string> bound, std::vector<std::string>& out) {
  for (const Binder& b : f.binders) bound.insert(b.name);
  for (const auto& t : f.terms) collect_free(*t, bound, out);
  for (const auto& k : f.kids) collect_free(*k, bound, out);
}

std::vector<std::pair<std::string, RT>> initial_scope(const std::vector<ScopeVar>& scope) {
  std::vector<std::pair<std::string, RT>> s;
  for (const auto& v : scope) s.emplace_back(v.name, Inference::of(v.type));
  return s;
}

}  // namespace

void require_known_sets(const Universe& u, const RelTypeDecl& t) {
  for (const ObjType* o : {&t.src, &t.tgt}) {
    if (!u.has(o->base)) throw Error(ErrorKind::TypeError, "unknown set `" + o->base + "`");
  }
}

void typecheck_term(const Universe& u, const std::vector<ScopeVar>& scope, Term& t) {
  for (const auto& v : scope) require_known_sets(u, v.type);
  Inference inf(u);
  auto s = initial_scope(scope);
  inf.infer(t, s);
  inf.finish(t);
}

int typecheck_formula(const Universe& u, const std::vector<ScopeVar>& scope, Formula& f) {
  for (const auto& v : scope) require_known_sets(u, v.type);
  Inference inf(u);
  auto s = initial_scope(scope);
  std::vector<Binder*> binders;
  inf.infer(f, s, binders);
  inf.finish(f);
  return static_cast<int>(scope.size() + binders.size());
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  collect_free(f, {}, out);
  return out;
}

}  // namespace multirel::lawlab
