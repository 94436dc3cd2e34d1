#include "multirel/lawlab/eval.hpp"

#include "multirel/closures.hpp"

namespace multirel::lawlab {

namespace {

MultiRelation mr(Relation r) { return MultiRelation(std::move(r)); }

Relation constant(const Universe& u, const Term& t) {
  switch (t.constant) {
    case ConstName::Zero:
      return empty_relation(u, t.src, t.tgt);
    case ConstName::Universal:
      return universal_relation(u, t.src, t.tgt);
    case ConstName::Id:
      return identity_relation(u, t.src);
    case ConstName::One:
      return special_constant(SpecialKind::Unit, u, t.src, t.src);
    case ConstName::Eps:
      return special_constant(SpecialKind::Membership, u, t.src, t.src);
    case ConstName::Omega:
      return special_constant(SpecialKind::Omega, u, t.src.inner(), t.src.inner());
    case ConstName::Cr:
      return special_constant(SpecialKind::CompRel, u, t.src.inner(), t.src.inner());
    case ConstName::LU:
      return special_constant(SpecialKind::InnerUnitU, u, t.src, t.tgt.inner());
    case ConstName::LI:
      return special_constant(SpecialKind::InnerUnitI, u, t.src, t.tgt.inner());
    case ConstName::AU:
      return special_constant(SpecialKind::Atoms, u, t.src, t.tgt.inner());
    case ConstName::AI:
      return special_constant(SpecialKind::CoAtoms, u, t.src, t.tgt.inner());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown constant");
}

Relation unary(const Universe& u, UnOp op, Relation a) {
  switch (op) {
    case UnOp::Complement:
      return complement(a);
    case UnOp::Converse:
      return converse(a);
    case UnOp::InnerComplement:
      return inner_complement(mr(std::move(a))).rel();
    case UnOp::Dual:
      return dual(mr(std::move(a))).rel();
    case UnOp::Up:
      return up(mr(std::move(a))).rel();
    case UnOp::Down:
      return down(mr(std::move(a))).rel();
    case UnOp::Convex:
      return convex(mr(std::move(a))).rel();
    case UnOp::Dom:
      return domain(a);
    case UnOp::Plift:
      return peleg_lift(u, mr(std::move(a)));
    case UnOp::Klift:
      return kleisli_lift(u, mr(std::move(a)));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown operator");
}

Relation binary(const Universe& u, BinOp op, const Relation& a, const Relation& b) {
  switch (op) {
    case BinOp::Compose:
      return compose(a, b);
    case BinOp::Peleg:
      return peleg_compose(u, mr(a), mr(b)).rel();
    case BinOp::CoCompose:
      return co_compose(u, mr(a), mr(b)).rel();
    case BinOp::Cup:
      return unite(a, b);
    case BinOp::Cap:
      return intersect(a, b);
    case BinOp::Minus:
      return difference(a, b);
    case BinOp::ICup:
      return inner_union(mr(a), mr(b)).rel();
    case BinOp::ICap:
      return inner_intersection(mr(a), mr(b)).rel();
    case BinOp::LeftRes:
      return left_residual(a, b);
    case BinOp::RightRes:
      return right_residual(a, b);
    case BinOp::Syq:
      return syq(a, b);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown operator");
}

bool compare(CmpOp op, const Relation& a, const Relation& b) {
  switch (op) {
    case CmpOp::Eq:
      return a == b;
    case CmpOp::Ne:
      return !(a == b);
    case CmpOp::Le:
      return a.subset_of(b);
    case CmpOp::Ge:
      return b.subset_of(a);
    case CmpOp::Lt:
      return a.subset_of(b) && !(a == b);
    case CmpOp::LeH:
      return preorder_leq(PreorderKind::Hoare, mr(a), mr(b));
    case CmpOp::LeS:
      return preorder_leq(PreorderKind::Smyth, mr(a), mr(b));
    case CmpOp::LeEM:
      return preorder_leq(PreorderKind::EgliMilner, mr(a), mr(b));
    case CmpOp::EqH:
      return equiv(PreorderKind::Hoare, mr(a), mr(b));
    case CmpOp::EqS:
      return equiv(PreorderKind::Smyth, mr(a), mr(b));
    case CmpOp::EqEM:
      return equiv(PreorderKind::EgliMilner, mr(a), mr(b));
  }
  return false;
}

bool predicate(PredName p, const Relation& r) {
  switch (p) {
    case PredName::Univalent:
      return is_univalent(r);
    case PredName::Total:
      return is_total(r);
    case PredName::Deterministic:
      return is_deterministic(r);
    case PredName::Test:
      return is_test(r);
    case PredName::InnerUnivalent:
      return is_inner_univalent(mr(r));
    case PredName::InnerTotal:
      return is_inner_total(mr(r));
    case PredName::InnerDeterministic:
      return is_inner_deterministic(mr(r));
    case PredName::UnionClosed:
      return is_union_closed(mr(r));
    case PredName::IntersectionClosed:
      return is_intersection_closed(mr(r));
    case PredName::UpClosed:
      return closed_check(ClosureKind::Up, mr(r));
    case PredName::DownClosed:
      return closed_check(ClosureKind::Down, mr(r));
    case PredName::ConvexClosed:
      return closed_check(ClosureKind::Convex, mr(r));
  }
  return false;
}

// Enumerates binders[k..] and evaluates the body; `want` is the value that
// decides the quantifier early (false for forall, true for exists).
bool quantify(const Universe& u, const Formula& f, std::size_t k, Env& env, bool want, unsigned max_bits) {
  if (k == f.binders.size()) return holds(u, *f.kids[0], env, max_bits);
  const Binder& b = f.binders[k];
  const std::size_t ns = u.cardinality(b.resolved.src);
  const std::size_t nt = u.cardinality(b.resolved.tgt);
  const std::size_t bits = ns * nt;
  if (bits > max_bits) {
    throw Error(ErrorKind::SpaceTooLarge, "bound variable " + b.name + " ranges over 2^" + std::to_string(bits) +
                                              " relations (cap 2^" + std::to_string(max_bits) + ")");
  }
  const auto slot = static_cast<std::size_t>(b.slot);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << bits); ++c) {
    env[slot] = Relation::from_code(b.resolved.src, b.resolved.tgt, ns, nt, c);
    if (quantify(u, f, k + 1, env, want, max_bits) == want) return want;
  }
  return !want;
}

}  // namespace

void precompute_closed(const Universe& u, Term& t) {
  if (t.closed) {
    if (!t.cached) t.cached = std::make_shared<const Relation>(eval(u, t, {}));
    return;
  }
  for (auto& k : t.kids) precompute_closed(u, *k);
}

void precompute_closed(const Universe& u, Formula& f) {
  for (auto& t : f.terms) precompute_closed(u, *t);
  for (auto& k : f.kids) precompute_closed(u, *k);
}

Relation eval(const Universe& u, const Term& t, const Env& env) {
  if (t.cached) return *t.cached;
  switch (t.kind) {
    case Term::Kind::Var:
      return env.at(static_cast<std::size_t>(t.slot));
    case Term::Kind::Const:
      return constant(u, t);
    case Term::Kind::Unary:
      return unary(u, t.unop, eval(u, *t.kids[0], env));
    case Term::Kind::Binary:
      return binary(u, t.binop, eval(u, *t.kids[0], env), eval(u, *t.kids[1], env));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown term");
}

bool holds(const Universe& u, const Formula& f, Env& env, unsigned max_binder_bits) {
  switch (f.kind) {
    case Formula::Kind::Cmp:
      return compare(f.cmp, eval(u, *f.terms[0], env), eval(u, *f.terms[1], env));
    case Formula::Kind::Pred:
      return predicate(f.pred, eval(u, *f.terms[0], env));
    case Formula::Kind::Not:
      return !holds(u, *f.kids[0], env, max_binder_bits);
    case Formula::Kind::And:
      return holds(u, *f.kids[0], env, max_binder_bits) && holds(u, *f.kids[1], env, max_binder_bits);
    case Formula::Kind::Or:
      return holds(u, *f.kids[0], env, max_binder_bits) || holds(u, *f.kids[1], env, max_binder_bits);
    case Formula::Kind::Implies:
      return !holds(u, *f.kids[0], env, max_binder_bits) || holds(u, *f.kids[1], env, max_binder_bits);
    case Formula::Kind::Iff:
      return holds(u, *f.kids[0], env, max_binder_bits) == holds(u, *f.kids[1], env, max_binder_bits);
    case Formula::Kind::Forall:
      return quantify(u, f, 0, env, false, max_binder_bits);
    case Formula::Kind::Exists:
      return quantify(u, f, 0, env, true, max_binder_bits);
  }
  return false;
}

}  // namespace multirel::lawlab
