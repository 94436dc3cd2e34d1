#pragma once

// Inner closures, the Hoare/Smyth/Egli-Milner preorders, quotients by their
// equivalences, order results on special classes, and decompositions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multirel/multirel.hpp"

namespace multirel {

enum class ClosureKind { Up, Down, Convex };

/// ↑R, ↓R or ⇕R = ↑R ∩ ↓R, computed row by row.
MultiRelation closure(ClosureKind kind, const MultiRelation& r);
/// ↑R = RΩ, ↓R = RΩ⌣ (convex as their intersection).
MultiRelation closure_via_omega(const Universe& u, ClosureKind kind, const MultiRelation& r);
/// ↑R = R ⋓ U, ↓R = R ⋒ U (convex as their intersection).
MultiRelation closure_via_inner(const Universe& u, ClosureKind kind, const MultiRelation& r);

inline MultiRelation up(const MultiRelation& r) { return closure(ClosureKind::Up, r); }
inline MultiRelation down(const MultiRelation& r) { return closure(ClosureKind::Down, r); }
inline MultiRelation convex(const MultiRelation& r) { return closure(ClosureKind::Convex, r); }

bool closed_check(ClosureKind kind, const MultiRelation& r);

enum class PreorderKind { Hoare, Smyth, EgliMilner };

std::string_view to_string(PreorderKind kind);

/// R ⊑↓ S ⇔ R ⊆ ↓S;  R ⊑↑ S ⇔ S ⊆ ↑R;  R ⊑↕ S ⇔ both.
bool preorder_leq(PreorderKind kind, const MultiRelation& r, const MultiRelation& s);
/// Equivalent forms ↓R ⊆ ↓S and ↑S ⊆ ↑R.
bool preorder_leq_by_closures(PreorderKind kind, const MultiRelation& r, const MultiRelation& s);
/// =↓, =↑, =↕ as equality of ↓, ↑, ⇕ closures.
bool equiv(PreorderKind kind, const MultiRelation& r, const MultiRelation& s);

/// The closure that represents a class of the given equivalence.
ClosureKind representative_closure(PreorderKind kind);

/// All multirelations src <-> P(inner) in ascending canonical order.
/// Throws SpaceTooLarge past `cap` elements.
std::vector<MultiRelation> enumerate_homset(const Universe& u, const ObjType& src, const ObjType& inner,
                                            std::uint64_t cap = std::uint64_t{1} << 20);

struct QuotientClass {
  MultiRelation rep;                   // the closure of every member
  std::vector<std::uint64_t> members;  // canonical encodings, ascending
};

/// M(X,Y) modulo =↓, =↑ or =↕, with class-level operations.
struct QuotientStructure {
  PreorderKind kind;
  ObjType src;
  ObjType inner;
  std::vector<QuotientClass> classes;  // ascending by representative

  std::size_t class_of(const MultiRelation& r) const;
  const MultiRelation& rep(std::size_t c) const { return classes[c].rep; }

  /// [R] ⋓ [S]: [R⋓S] for Hoare and Egli-Milner, [↑R ∩ ↑S] for Smyth.
  std::size_t inner_union(std::size_t c, std::size_t d) const;
  /// [R] ⋒ [S]: [↓R ∩ ↓S] for Hoare, [R⋒S] for Smyth and Egli-Milner.
  std::size_t inner_intersection(std::size_t c, std::size_t d) const;
  std::size_t unit_union(const Universe& u) const;
  std::size_t unit_intersection(const Universe& u) const;
  /// ≤H: ↓R ⊆ ↓S;  ≤S: ↑R ⊇ ↑S;  ≤EM: ⇕R ⊆ ⇕S (R ⊑↓ S ⊑↑ R, not ⊑↕).
  bool leq(std::size_t c, std::size_t d) const;
};

QuotientStructure quotient(PreorderKind kind, const Universe& u, const ObjType& src, const ObjType& inner,
                           std::uint64_t cap = std::uint64_t{1} << 20);

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when pass
};

struct OrderReport {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
};

/// Checks the class operations are representative-independent over every
/// pair of multirelations of the quotient's typing.
OrderReport verify_quotient(const Universe& u, const QuotientStructure& q);

enum class SpecialClass { InnerDeterministic, InnerUnivalent, OuterUnivalent, OuterDeterministic };

/// Order results on one subclass of M(X,Y):
///  - inner deterministic: ⊑↓ is ⊆, ⊑↑ is ⊇, ⊑↕ is discrete;
///  - inner univalent: ⊑↕ antisymmetric (⊑↓ and ⊑↑ antisymmetry are
///    expected-fail controls: the check passes when a refuting pair exists);
///  - outer univalent: all three antisymmetric;
///  - outer deterministic: all three coincide.
OrderReport class_special_order(SpecialClass kind, const Universe& u, const ObjType& src, const ObjType& inner);

/// Whether `kind` is antisymmetric over all of M(X,Y); the report's single
/// check fails with a witness pair when it is not.
OrderReport antisymmetry_sweep(PreorderKind kind, const Universe& u, const ObjType& src, const ObjType& inner);

/// Outer deterministic multirelations form a lattice under ⊑↓ with sup ⋓
/// and inf ⋒; also checks the natural-order equivalences on outer univalent
/// arguments.
OrderReport det_lattice_check(const Universe& u, const ObjType& src, const ObjType& inner);

/// All S ⊑↓d R: univalent, inner deterministic, dom(S) = dom(R − 1⋓) and
/// S ⊑↓ R. With `deterministic_variant`, instead all S that are
/// deterministic on dom(R) (univalent, dom(S) = dom(R)), inner univalent and
/// S ⊑↓ R, so pairs (a,∅) are allowed. Ascending canonical order.
std::vector<MultiRelation> down_d_subfunctions(const MultiRelation& r, bool deterministic_variant = false,
                                               std::size_t cap = kDefaultResultCap);

struct UnivalentDecomposition {
  std::vector<MultiRelation> family;
  MultiRelation reconstruction;
  bool reconstructs = false;
};

/// dom(R) ⨆_{S ⊑↓d R} S for univalent R; throws NotUnivalent otherwise.
UnivalentDecomposition decompose_univalent(const MultiRelation& r, bool deterministic_variant = false,
                                           std::size_t cap = kDefaultResultCap);

struct FullDecomposition {
  struct Part {
    MultiRelation sub;                  // S ⊆_d R
    std::vector<MultiRelation> family;  // T ⊑↓d S
  };
  std::vector<Part> parts;
  MultiRelation reconstruction;
  bool reconstructs = false;
};

/// dom(R) ⋃_{S ⊆_d R} ⨆_{T ⊑↓d S} T.
FullDecomposition decompose_full(const MultiRelation& r, bool deterministic_variant = false,
                                 std::size_t cap = kDefaultResultCap);

}  // namespace multirel
