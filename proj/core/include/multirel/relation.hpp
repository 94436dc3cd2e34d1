#pragma once

// Heterogeneous binary relations between finite object types.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multirel/finsets.hpp"

namespace multirel {

/// A relation src <-> tgt stored as one target mask per source element.
///
/// The canonical encoding of a relation is the integer with bit
/// `i * tgt_size + j` set iff (i, j) is a pair. Ordering and enumeration use
/// this encoding, so structural equality is extensional equality.
class Relation {
 public:
  Relation() = default;
  Relation(ObjType src, ObjType tgt, std::size_t src_size, std::size_t tgt_size);

  /// The empty relation of the given typing.
  static Relation of_type(const Universe& u, const ObjType& src, const ObjType& tgt);

  const ObjType& src() const { return src_; }
  const ObjType& tgt() const { return tgt_; }
  std::size_t src_size() const { return src_size_; }
  std::size_t tgt_size() const { return tgt_size_; }
  bool same_type(const Relation& o) const { return src_ == o.src_ && tgt_ == o.tgt_; }
  std::string type_string() const;

  bool contains(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void insert(std::size_t i, std::size_t j) { rows_[i].set(j); }
  void erase(std::size_t i, std::size_t j) { rows_[i].reset(j); }

  const Mask& row(std::size_t i) const { return rows_[i]; }
  Mask& row(std::size_t i) { return rows_[i]; }
  const std::vector<Mask>& rows() const { return rows_; }

  bool empty() const;
  std::size_t pair_count() const;
  /// Pairs in canonical lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  /// Number of bits in the canonical encoding.
  std::size_t bit_width() const { return src_size_ * tgt_size_; }
  /// Canonical encoding; requires bit_width() <= 64.
  std::uint64_t code() const;
  static Relation from_code(const ObjType& src, const ObjType& tgt, std::size_t src_size,
                            std::size_t tgt_size, std::uint64_t code);

  bool subset_of(const Relation& o) const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.rows_ == b.rows_;
  }
  /// Canonical order: typing first, then encoding as an unsigned integer.
  friend std::strong_ordering operator<=>(const Relation& a, const Relation& b);

  std::size_t hash() const;

 private:
  ObjType src_;
  ObjType tgt_;
  std::size_t src_size_ = 0;
  std::size_t tgt_size_ = 0;
  std::vector<Mask> rows_;
};

struct RelationHash {
  std::size_t operator()(const Relation& r) const { return r.hash(); }
};

enum class ConstKind { Empty, Universal, Identity };

Relation const_relation(ConstKind kind, const Universe& u, const ObjType& src, const ObjType& tgt);

inline Relation empty_relation(const Universe& u, const ObjType& src, const ObjType& tgt) {
  return const_relation(ConstKind::Empty, u, src, tgt);
}
inline Relation universal_relation(const Universe& u, const ObjType& src, const ObjType& tgt) {
  return const_relation(ConstKind::Universal, u, src, tgt);
}
inline Relation identity_relation(const Universe& u, const ObjType& t) {
  return const_relation(ConstKind::Identity, u, t, t);
}

enum class BoolOp { Union, Intersection, Complement, Difference };

/// Pairwise boolean algebra on one homset; `s` is unused for complement.
Relation boolean_op(BoolOp op, const Relation& r, const Relation* s = nullptr);

Relation unite(const Relation& r, const Relation& s);
Relation intersect(const Relation& r, const Relation& s);
Relation complement(const Relation& r);
Relation difference(const Relation& r, const Relation& s);

Relation compose(const Relation& r, const Relation& s);
Relation converse(const Relation& r);
/// The test {(a,a) | ∃b. R(a,b)}.
Relation domain(const Relation& r);

enum class ResidualKind { Left, Right };

/// T/S = −(−T;S⌣) for T : X<->Z, S : Y<->Z.
Relation left_residual(const Relation& t, const Relation& s);
/// T\S = (S⌣/T⌣)⌣ for T : Z<->X, S : Z<->Y.
Relation right_residual(const Relation& t, const Relation& s);
Relation residual(ResidualKind kind, const Relation& t, const Relation& s);

/// syq(T,S) = (T\S) ∩ (T⌣/S⌣) for T : Z<->X, S : Z<->Y.
Relation syq(const Relation& t, const Relation& s);

enum class RelProperty { Total, Univalent, Deterministic, Test };

bool rel_property(RelProperty kind, const Relation& r);
inline bool is_total(const Relation& r) { return rel_property(RelProperty::Total, r); }
inline bool is_univalent(const Relation& r) { return rel_property(RelProperty::Univalent, r); }
inline bool is_deterministic(const Relation& r) { return rel_property(RelProperty::Deterministic, r); }
inline bool is_test(const Relation& r) { return rel_property(RelProperty::Test, r); }

/// Restriction R|_A and image R(A) of a subset of the source type.
std::pair<Relation, Subset> restrict_image(const Relation& r, const Subset& a);

inline constexpr std::size_t kDefaultResultCap = std::size_t{1} << 20;

/// All S ⊆_d R: univalent, same domain, contained in R. Ascending canonical
/// order. Throws ResultTooLarge when there would be more than `cap`.
std::vector<Relation> d_subfunctions(const Relation& r, std::size_t cap = kDefaultResultCap);

/// Throws TypeMismatch unless both relations share a typing.
void require_same_type(const Relation& r, const Relation& s, const char* op);

}  // namespace multirel
