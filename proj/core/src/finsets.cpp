#include "multirel/finsets.hpp"

#include <algorithm>
#include <functional>

namespace multirel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CardinalityLimit: return "CardinalityLimit";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::ResultTooLarge: return "ResultTooLarge";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotUpClosed: return "NotUpClosed";
    case ErrorKind::NotUnivalent: return "NotUnivalent";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::UnknownDemo: return "UnknownDemo";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::size_t Mask::hash() const {
  std::size_t h = 0;
  for (auto w : words_) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<std::uint64_t>{}(w);
  return h;
}

ObjType ObjType::inner() const {
  if (depth == 0) throw Error(ErrorKind::TypeMismatch, to_string() + " is not a powerset type");
  return ObjType{base, depth - 1};
}

std::string ObjType::to_string() const {
  std::string s = base;
  for (unsigned i = 0; i < depth; ++i) s = "P(" + s + ")";
  return s;
}

Universe Universe::declare(const std::vector<std::pair<std::string, std::size_t>>& sets,
                           UniverseLimits limits) {
  if (limits.max_object > Mask::kMaxBits) {
    throw Error(ErrorKind::CardinalityLimit,
                "object cap " + std::to_string(limits.max_object) + " exceeds the supported maximum " +
                    std::to_string(Mask::kMaxBits));
  }
  Universe u;
  u.limits_ = limits;
  for (const auto& [name, n] : sets) {
    if (name.empty()) throw Error(ErrorKind::InvalidArgument, "empty set name");
    if (u.has(name)) throw Error(ErrorKind::InvalidArgument, "set " + name + " declared twice");
    if (n < 1 || n > limits.max_base) {
      throw Error(ErrorKind::CardinalityLimit, "set " + name + " has cardinality " + std::to_string(n) +
                                                   ", allowed range is 1.." +
                                                   std::to_string(limits.max_base));
    }
    if (n >= 63 || (std::size_t{1} << n) > limits.max_object) {
      throw Error(ErrorKind::CardinalityLimit,
                  "P(" + name + ") would have 2^" + std::to_string(n) + " elements, cap is " +
                      std::to_string(limits.max_object));
    }
    u.sets_.emplace_back(name, n);
  }
  return u;
}

bool Universe::has(const std::string& name) const {
  return std::any_of(sets_.begin(), sets_.end(), [&](const auto& p) { return p.first == name; });
}

std::size_t Universe::base_cardinality(const std::string& name) const {
  for (const auto& [n, c] : sets_) {
    if (n == name) return c;
  }
  throw Error(ErrorKind::TypeError, "unknown set " + name);
}

std::optional<std::size_t> Universe::try_cardinality(const ObjType& t) const {
  std::size_t n = base_cardinality(t.base);
  for (unsigned i = 0; i < t.depth; ++i) {
    if (n >= 63 || (std::size_t{1} << n) > limits_.max_object) return std::nullopt;
    n = std::size_t{1} << n;
  }
  if (n > limits_.max_object) return std::nullopt;
  return n;
}

std::size_t Universe::cardinality(const ObjType& t) const {
  auto n = try_cardinality(t);
  if (!n) {
    throw Error(ErrorKind::CardinalityLimit,
                t.to_string() + " exceeds the object cap of " + std::to_string(limits_.max_object));
  }
  return *n;
}

std::string Universe::element_name(const ObjType& t, std::size_t index) const {
  if (t.depth == 0) {
    if (base_cardinality(t.base) <= 26) return std::string(1, static_cast<char>('a' + index));
    return std::to_string(index);
  }
  if (index == 0) return "∅";
  ObjType in = t.inner();
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < 64; ++i) {
    if ((index >> i) & 1U) {
      if (!first) s += ",";
      s += element_name(in, i);
      first = false;
    }
  }
  return s + "}";
}

Subset subset_algebra(SubsetOp op, const Universe& u, const Subset& a, const std::optional<Subset>& b) {
  const std::size_t n = u.cardinality(a.type);
  if (op == SubsetOp::Complement) return Subset{a.type, a.mask.complement(n)};
  if (!b) throw Error(ErrorKind::InvalidArgument, "binary subset operation needs two operands");
  if (!(b->type == a.type)) {
    throw Error(ErrorKind::TypeMismatch,
                "subsets of " + a.type.to_string() + " and " + b->type.to_string());
  }
  return Subset{a.type, op == SubsetOp::Union ? (a.mask | b->mask) : (a.mask & b->mask)};
}

namespace rows {

Mask union_product(const Mask& a, const Mask& b) {
  Mask out;
  a.for_each([&](std::size_t x) { b.for_each([&](std::size_t y) { out.set(x | y); }); });
  return out;
}

Mask intersection_product(const Mask& a, const Mask& b) {
  Mask out;
  a.for_each([&](std::size_t x) { b.for_each([&](std::size_t y) { out.set(x & y); }); });
  return out;
}

Mask complement_each(const Mask& a, std::size_t n) {
  const std::size_t full = (std::size_t{1} << n) - 1;
  Mask out;
  a.for_each([&](std::size_t x) { out.set(~x & full); });
  return out;
}

Mask up_close(const Mask& a, std::size_t n) {
  Mask out = a;
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t bit = 0; bit < n; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t m = 0; m < size; ++m) {
      if (!(m & b) && out.test(m)) out.set(m | b);
    }
  }
  return out;
}

Mask down_close(const Mask& a, std::size_t n) {
  Mask out = a;
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t bit = 0; bit < n; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t m = 0; m < size; ++m) {
      if ((m & b) && out.test(m)) out.set(m & ~b);
    }
  }
  return out;
}

std::size_t big_union(const Mask& a) {
  std::size_t u = 0;
  a.for_each([&](std::size_t x) { u |= x; });
  return u;
}

}  // namespace rows

}  // namespace multirel
