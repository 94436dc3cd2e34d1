#pragma once

// Multirelations X <-> P(Y): inner operations, liftings, Peleg composition
// and co-composition.

#include <cstddef>
#include <span>
#include <vector>

#include "multirel/relation.hpp"

namespace multirel {

/// A relation whose target is a powerset type. Row i holds the set of inner
/// subsets related to source element i.
class MultiRelation {
 public:
  /// Throws TypeMismatch if the target is not a powerset type.
  explicit MultiRelation(Relation r);

  static MultiRelation of_type(const Universe& u, const ObjType& src, const ObjType& inner);

  const Relation& rel() const& { return rel_; }
  Relation&& rel() && { return std::move(rel_); }
  operator const Relation&() const { return rel_; }  // NOLINT(google-explicit-constructor)

  const ObjType& src() const { return rel_.src(); }
  /// The element type of the target powerset.
  ObjType inner() const { return rel_.tgt().inner(); }
  std::size_t src_size() const { return rel_.src_size(); }
  /// Number of elements of the inner type.
  std::size_t inner_size() const { return inner_bits_; }
  const Mask& row(std::size_t i) const { return rel_.row(i); }
  Mask& row(std::size_t i) { return rel_.row(i); }

  friend bool operator==(const MultiRelation& a, const MultiRelation& b) { return a.rel_ == b.rel_; }

 private:
  Relation rel_;
  std::size_t inner_bits_ = 0;
};

enum class SpecialKind { Membership, Omega, CompRel, Unit, InnerUnitU, InnerUnitI, Atoms, CoAtoms };

/// Special constants. Membership, Omega and CompRel are typed by `y`;
/// Unit by `x`; inner units and (co-)atoms by both.
///   membership ∈ : Y <-> P(Y), omega Ω : P(Y) <-> P(Y) (⊆), comp_rel C : P(Y) <-> P(Y),
///   unit 1 : X <-> P(X), 1⋓/1⋒/A⋓/A⋒ : X <-> P(Y).
Relation special_constant(SpecialKind kind, const Universe& u, const ObjType& x, const ObjType& y);

MultiRelation unit(const Universe& u, const ObjType& x);
MultiRelation inner_unit_union(const Universe& u, const ObjType& x, const ObjType& y);
MultiRelation inner_unit_intersection(const Universe& u, const ObjType& x, const ObjType& y);
MultiRelation atoms(const Universe& u, const ObjType& x, const ObjType& y);
MultiRelation co_atoms(const Universe& u, const ObjType& x, const ObjType& y);
MultiRelation membership(const Universe& u, const ObjType& y);

MultiRelation inner_union(const MultiRelation& r, const MultiRelation& s);
MultiRelation inner_intersection(const MultiRelation& r, const MultiRelation& s);
/// R^i = {(a,−A) | R(a,A)}
MultiRelation inner_complement(const MultiRelation& r);
/// R^d = −R^i
MultiRelation dual(const MultiRelation& r);

/// ⨆ over a finite nonempty family; throws EmptyFamily on an empty one.
MultiRelation big_inner_union(std::span<const MultiRelation> family);
/// ⨅ over a finite nonempty family.
MultiRelation big_inner_intersection(std::span<const MultiRelation> family);

enum class ClosureProperty { UnionClosed, IntersectionClosed };

bool closure_property(ClosureProperty kind, const MultiRelation& r);
inline bool is_union_closed(const MultiRelation& r) {
  return closure_property(ClosureProperty::UnionClosed, r);
}
inline bool is_intersection_closed(const MultiRelation& r) {
  return closure_property(ClosureProperty::IntersectionClosed, r);
}
/// Union-closure decided by dom(S) syq(∈S⌣, ∈) ⊆ R over the subrelations S
/// of R concentrated on one source point (the condition is pointwise).
/// Exponential in the row sizes.
bool union_closed_by_syq(const Universe& u, const MultiRelation& r);

/// R_P = {(A,B) | B = ⋃R(A)} : P(X) <-> P(Y)
Relation kleisli_lift(const Universe& u, const MultiRelation& r);
/// R_∗ = {(A,B) | ∃f. f|_A ⊆ R ∧ B = ⋃f(A)} : P(X) <-> P(Y)
Relation peleg_lift(const Universe& u, const MultiRelation& r);
/// Lifting of a relation T : X <-> Y, (T;1)_∗ : P(X) <-> P(Y).
Relation relation_lift(const Universe& u, const Relation& t);

/// R ∗ S = R S_∗ for R : X <-> P(Y), S : Y <-> P(Z).
MultiRelation peleg_compose(const Universe& u, const MultiRelation& r, const MultiRelation& s);
/// R ⊙ S = (R ∗ S^i)^i
MultiRelation co_compose(const Universe& u, const MultiRelation& r, const MultiRelation& s);

enum class InnerProperty { InnerUnivalent, InnerTotal, InnerDeterministic };

bool inner_property(InnerProperty kind, const MultiRelation& r);
inline bool is_inner_univalent(const MultiRelation& r) {
  return inner_property(InnerProperty::InnerUnivalent, r);
}
inline bool is_inner_total(const MultiRelation& r) { return inner_property(InnerProperty::InnerTotal, r); }
inline bool is_inner_deterministic(const MultiRelation& r) {
  return inner_property(InnerProperty::InnerDeterministic, r);
}

/// Up-closure of the Peleg composite. Both arguments must be up-closed;
/// throws NotUpClosed otherwise.
MultiRelation parikh_compose(const Universe& u, const MultiRelation& r, const MultiRelation& s);

}  // namespace multirel
