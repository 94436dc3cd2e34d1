#pragma once

// Finite typed universes: base sets, powerset object types and subset masks.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multirel/error.hpp"

namespace multirel {

/// A set of element indices of one object type. Object types are capped at
/// 256 elements, so a fixed four-word bit set covers every materialized type.
class Mask {
 public:
  static constexpr std::size_t kMaxBits = 256;
  static constexpr std::size_t kWords = kMaxBits / 64;

  constexpr Mask() = default;

  static constexpr Mask from_u64(std::uint64_t bits) {
    Mask m;
    m.words_[0] = bits;
    return m;
  }
  static constexpr Mask single(std::size_t i) {
    Mask m;
    m.set(i);
    return m;
  }
  /// The mask {0, ..., n-1}.
  static constexpr Mask full(std::size_t n) {
    Mask m;
    for (std::size_t w = 0; w < kWords; ++w) {
      if (n >= 64 * (w + 1)) {
        m.words_[w] = ~std::uint64_t{0};
      } else if (n > 64 * w) {
        m.words_[w] = (std::uint64_t{1} << (n - 64 * w)) - 1;
      }
    }
    return m;
  }

  constexpr bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  constexpr void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  constexpr void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  constexpr bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  constexpr bool any() const { return !none(); }

  constexpr std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit; kMaxBits when empty.
  constexpr std::size_t first() const {
    for (std::size_t w = 0; w < kWords; ++w) {
      if (words_[w] != 0) return 64 * w + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return kMaxBits;
  }

  /// Index of the highest set bit; kMaxBits when empty.
  constexpr std::size_t last() const {
    for (std::size_t w = kWords; w-- > 0;) {
      if (words_[w] != 0) return 64 * w + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
    }
    return kMaxBits;
  }

  constexpr std::uint64_t word(std::size_t w) const { return words_[w]; }
  constexpr void set_word(std::size_t w, std::uint64_t v) { words_[w] = v; }

  constexpr bool subset_of(const Mask& other) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
  }

  constexpr Mask& operator|=(const Mask& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  constexpr Mask& operator&=(const Mask& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  constexpr Mask& operator^=(const Mask& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend constexpr Mask operator|(Mask a, const Mask& b) { return a |= b; }
  friend constexpr Mask operator&(Mask a, const Mask& b) { return a &= b; }
  friend constexpr Mask operator^(Mask a, const Mask& b) { return a ^= b; }

  /// Complement within {0, ..., n-1}.
  constexpr Mask complement(std::size_t n) const { return *this ^ full(n); }

  friend constexpr bool operator==(const Mask&, const Mask&) = default;

  /// Orders masks as unsigned integers.
  friend constexpr std::strong_ordering operator<=>(const Mask& a, const Mask& b) {
    for (std::size_t w = kWords; w-- > 0;) {
      if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
    }
    return std::strong_ordering::equal;
  }

  /// Calls f(i) for every set bit in ascending order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(64 * w + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

/// Object types are freely generated from named base sets by the powerset
/// constructor, so every type is P^depth(base).
struct ObjType {
  std::string base;
  unsigned depth = 0;

  static ObjType of(std::string name) { return ObjType{std::move(name), 0}; }
  ObjType pow() const { return ObjType{base, depth + 1}; }
  bool is_pow() const { return depth > 0; }
  /// The element type of a powerset type.
  ObjType inner() const;

  std::string to_string() const;

  friend bool operator==(const ObjType&, const ObjType&) = default;
  friend auto operator<=>(const ObjType&, const ObjType&) = default;
};

struct UniverseLimits {
  std::size_t max_base = 4;
  std::size_t max_object = 256;
};

/// Named finite base sets. Immutable after construction.
class Universe {
 public:
  Universe() = default;

  /// Declares base sets in the given order. Throws CardinalityLimit when a
  /// base set is out of range or its powerset would exceed the object cap.
  static Universe declare(const std::vector<std::pair<std::string, std::size_t>>& sets,
                          UniverseLimits limits = {});

  const UniverseLimits& limits() const { return limits_; }
  const std::vector<std::pair<std::string, std::size_t>>& base_sets() const { return sets_; }
  bool has(const std::string& name) const;
  std::size_t base_cardinality(const std::string& name) const;

  /// Cardinality of an object type; throws CardinalityLimit past the cap.
  std::size_t cardinality(const ObjType& t) const;
  /// Cardinality without throwing; nullopt if above the object cap.
  std::optional<std::size_t> try_cardinality(const ObjType& t) const;

  /// Pretty name of an element: a, b, c, ... for base elements (numbers when
  /// the set has more than 26), braces for powerset elements, ∅ for empty.
  std::string element_name(const ObjType& t, std::size_t index) const;

 private:
  std::vector<std::pair<std::string, std::size_t>> sets_;
  UniverseLimits limits_;
};

/// A subset of an object type, identified by its mask over the type's
/// element order.
struct Subset {
  ObjType type;
  Mask mask;

  friend bool operator==(const Subset&, const Subset&) = default;
};

enum class SubsetOp { Union, Intersection, Complement };

/// Element-level boolean algebra. `b` is ignored for complement and required
/// otherwise.
Subset subset_algebra(SubsetOp op, const Universe& u, const Subset& a,
                      const std::optional<Subset>& b = std::nullopt);

/// Operations on rows of a multirelation: a row is a set of subsets of an
/// inner type with `n` elements (n <= 8), encoded as a Mask over subset masks.
namespace rows {

/// {A ∪ B | A ∈ a, B ∈ b}
Mask union_product(const Mask& a, const Mask& b);
/// {A ∩ B | A ∈ a, B ∈ b}
Mask intersection_product(const Mask& a, const Mask& b);
/// {−A | A ∈ a} relative to an n-element inner set.
Mask complement_each(const Mask& a, std::size_t n);
/// All supersets of members.
Mask up_close(const Mask& a, std::size_t n);
/// All subsets of members.
Mask down_close(const Mask& a, std::size_t n);
/// ⋃a as an inner subset mask.
std::size_t big_union(const Mask& a);

}  // namespace rows

}  // namespace multirel
