#include "multirel/relation.hpp"

#include <algorithm>

namespace multirel {

Relation::Relation(ObjType src, ObjType tgt, std::size_t src_size, std::size_t tgt_size)
    : src_(std::move(src)), tgt_(std::move(tgt)), src_size_(src_size), tgt_size_(tgt_size), rows_(src_size) {}

Relation Relation::of_type(const Universe& u, const ObjType& src, const ObjType& tgt) {
  return Relation(src, tgt, u.cardinality(src), u.cardinality(tgt));
}

std::string Relation::type_string() const { return src_.to_string() + " <-> " + tgt_.to_string(); }

bool Relation::empty() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Mask& m) { return m.none(); });
}

std::size_t Relation::pair_count() const {
  std::size_t c = 0;
  for (const auto& m : rows_) c += m.count();
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < src_size_; ++i) {
    rows_[i].for_each([&](std::size_t j) { out.emplace_back(i, j); });
  }
  return out;
}

std::uint64_t Relation::code() const {
  if (bit_width() > 64) {
    throw Error(ErrorKind::ResultTooLarge, "relation " + type_string() + " has no 64-bit encoding");
  }
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < src_size_; ++i) c |= rows_[i].word(0) << (i * tgt_size_);
  return c;
}

Relation Relation::from_code(const ObjType& src, const ObjType& tgt, std::size_t src_size,
                             std::size_t tgt_size, std::uint64_t code) {
  Relation r(src, tgt, src_size, tgt_size);
  if (src_size * tgt_size > 64) {
    throw Error(ErrorKind::ResultTooLarge, "relation " + r.type_string() + " has no 64-bit encoding");
  }
  const std::uint64_t row_mask = tgt_size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tgt_size) - 1;
  for (std::size_t i = 0; i < src_size; ++i) r.rows_[i] = Mask::from_u64((code >> (i * tgt_size)) & row_mask);
  return r;
}

bool Relation::subset_of(const Relation& o) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i].subset_of(o.rows_[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Relation& a, const Relation& b) {
  if (auto c = a.src_ <=> b.src_; c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.tgt_ <=> b.tgt_; c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = a.rows_.size(); i-- > 0;) {
    if (auto c = a.rows_[i] <=> b.rows_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Relation::hash() const {
  std::size_t h = std::hash<std::string>{}(src_.base) ^ (src_.depth * 31 + tgt_.depth * 131);
  for (const auto& m : rows_) h = h * 1099511628211ULL ^ m.hash();
  return h;
}

void require_same_type(const Relation& r, const Relation& s, const char* op) {
  if (!r.same_type(s)) {
    throw Error(ErrorKind::TypeMismatch,
                std::string(op) + " of " + r.type_string() + " and " + s.type_string());
  }
}

Relation const_relation(ConstKind kind, const Universe& u, const ObjType& src, const ObjType& tgt) {
  Relation r = Relation::of_type(u, src, tgt);
  switch (kind) {
    case ConstKind::Empty:
      break;
    case ConstKind::Universal:
      for (std::size_t i = 0; i < r.src_size(); ++i) r.row(i) = Mask::full(r.tgt_size());
      break;
    case ConstKind::Identity:
      if (!(src == tgt)) {
        throw Error(ErrorKind::TypeMismatch, "identity on " + src.to_string() + " <-> " + tgt.to_string());
      }
      for (std::size_t i = 0; i < r.src_size(); ++i) r.insert(i, i);
      break;
  }
  return r;
}

Relation unite(const Relation& r, const Relation& s) {
  require_same_type(r, s, "union");
  Relation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) |= s.row(i);
  return out;
}

Relation intersect(const Relation& r, const Relation& s) {
  require_same_type(r, s, "intersection");
  Relation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) &= s.row(i);
  return out;
}

Relation complement(const Relation& r) {
  Relation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) = r.row(i).complement(r.tgt_size());
  return out;
}

Relation difference(const Relation& r, const Relation& s) {
  require_same_type(r, s, "difference");
  Relation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) &= s.row(i).complement(s.tgt_size());
  return out;
}

Relation boolean_op(BoolOp op, const Relation& r, const Relation* s) {
  if (op == BoolOp::Complement) return complement(r);
  if (s == nullptr) throw Error(ErrorKind::InvalidArgument, "binary boolean operation needs two operands");
  switch (op) {
    case BoolOp::Union: return unite(r, *s);
    case BoolOp::Intersection: return intersect(r, *s);
    case BoolOp::Difference: return difference(r, *s);
    case BoolOp::Complement: break;
  }
  return complement(r);
}

Relation compose(const Relation& r, const Relation& s) {
  if (!(r.tgt() == s.src())) {
    throw Error(ErrorKind::TypeMismatch, "composition of " + r.type_string() + " and " + s.type_string());
  }
  Relation out(r.src(), s.tgt(), r.src_size(), s.tgt_size());
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    Mask acc;
    r.row(i).for_each([&](std::size_t j) { acc |= s.row(j); });
    out.row(i) = acc;
  }
  return out;
}

Relation converse(const Relation& r) {
  Relation out(r.tgt(), r.src(), r.tgt_size(), r.src_size());
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    r.row(i).for_each([&](std::size_t j) { out.insert(j, i); });
  }
  return out;
}

Relation domain(const Relation& r) {
  Relation out(r.src(), r.src(), r.src_size(), r.src_size());
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    if (r.row(i).any()) out.insert(i, i);
  }
  return out;
}

Relation left_residual(const Relation& t, const Relation& s) {
  if (!(t.tgt() == s.tgt())) {
    throw Error(ErrorKind::TypeMismatch, "left residual of " + t.type_string() + " by " + s.type_string());
  }
  return complement(compose(complement(t), converse(s)));
}

Relation right_residual(const Relation& t, const Relation& s) {
  if (!(t.src() == s.src())) {
    throw Error(ErrorKind::TypeMismatch, "right residual of " + t.type_string() + " by " + s.type_string());
  }
  return converse(left_residual(converse(s), converse(t)));
}

Relation residual(ResidualKind kind, const Relation& t, const Relation& s) {
  return kind == ResidualKind::Left ? left_residual(t, s) : right_residual(t, s);
}

Relation syq(const Relation& t, const Relation& s) {
  if (!(t.src() == s.src())) {
    throw Error(ErrorKind::TypeMismatch, "syq of " + t.type_string() + " and " + s.type_string());
  }
  return intersect(right_residual(t, s), left_residual(converse(t), converse(s)));
}

namespace {

Relation identity_of(const ObjType& t, std::size_t n) {
  Relation id(t, t, n, n);
  for (std::size_t i = 0; i < n; ++i) id.insert(i, i);
  return id;
}

}  // namespace

bool rel_property(RelProperty kind, const Relation& r) {
  switch (kind) {
    case RelProperty::Univalent:
      return compose(converse(r), r).subset_of(identity_of(r.tgt(), r.tgt_size()));
    case RelProperty::Total:
      return identity_of(r.src(), r.src_size()).subset_of(compose(r, converse(r)));
    case RelProperty::Deterministic:
      return rel_property(RelProperty::Total, r) && rel_property(RelProperty::Univalent, r);
    case RelProperty::Test:
      return r.src() == r.tgt() && r.subset_of(identity_of(r.src(), r.src_size()));
  }
  return false;
}

std::pair<Relation, Subset> restrict_image(const Relation& r, const Subset& a) {
  if (!(a.type == r.src())) {
    throw Error(ErrorKind::TypeMismatch,
                "subset of " + a.type.to_string() + " applied to " + r.type_string());
  }
  Relation restricted(r.src(), r.tgt(), r.src_size(), r.tgt_size());
  Mask image;
  a.mask.for_each([&](std::size_t i) {
    if (i >= r.src_size()) return;
    restricted.row(i) = r.row(i);
    image |= r.row(i);
  });
  return {std::move(restricted), Subset{r.tgt(), image}};
}

std::vector<Relation> d_subfunctions(const Relation& r, std::size_t cap) {
  std::vector<std::size_t> points;
  std::size_t count = 1;
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    const std::size_t k = r.row(i).count();
    if (k == 0) continue;
    points.push_back(i);
    if (count > cap / k) {
      throw Error(ErrorKind::ResultTooLarge, "more than " + std::to_string(cap) + " d-subfunctions");
    }
    count *= k;
  }
  std::vector<Relation> out;
  out.reserve(count);
  Relation current(r.src(), r.tgt(), r.src_size(), r.tgt_size());
  // Odometer over per-point choices; the last domain point is the most
  // significant digit, which yields ascending canonical order directly.
  auto choose = [&](auto&& self, std::size_t depth) -> void {
    if (depth == 0) {
      out.push_back(current);
      return;
    }
    const std::size_t i = points[depth - 1];
    r.row(i).for_each([&](std::size_t j) {
      current.row(i) = Mask::single(j);
      self(self, depth - 1);
    });
    current.row(i) = Mask{};
  };
  choose(choose, points.size());
  return out;
}

}  // namespace multirel
