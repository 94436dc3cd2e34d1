#include "multirel/multirel.hpp"

#include <atomic>
#include <bit>

#include "multirel/testing_hooks.hpp"

namespace multirel {

namespace {

std::atomic<bool> g_corrupt_unit{false};

// {∅} ∪ {{b} | b < n}
Mask singletons_or_empty(std::size_t n) {
  Mask m = Mask::single(0);
  for (std::size_t b = 0; b < n; ++b) m.set(std::size_t{1} << b);
  return m;
}

void require_same_typing(const MultiRelation& r, const MultiRelation& s, const char* op) {
  require_same_type(r.rel(), s.rel(), op);
}

template <class Product>
MultiRelation fold_rows(std::span<const MultiRelation> family, const char* op, Product product) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, std::string(op) + " of an empty family");
  MultiRelation out = family.front();
  for (std::size_t k = 1; k < family.size(); ++k) {
    require_same_typing(out, family[k], op);
    for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) = product(out.row(i), family[k].row(i));
  }
  return out;
}

}  // namespace

namespace testing {

void set_corrupt_unit(bool on) { g_corrupt_unit.store(on); }
bool corrupt_unit() { return g_corrupt_unit.load(); }

}  // namespace testing

MultiRelation::MultiRelation(Relation r) : rel_(std::move(r)) {
  if (!rel_.tgt().is_pow()) {
    throw Error(ErrorKind::TypeMismatch, rel_.type_string() + " is not a multirelation");
  }
  inner_bits_ = static_cast<std::size_t>(std::countr_zero(rel_.tgt_size()));
}

MultiRelation MultiRelation::of_type(const Universe& u, const ObjType& src, const ObjType& inner) {
  return MultiRelation(Relation::of_type(u, src, inner.pow()));
}

Relation special_constant(SpecialKind kind, const Universe& u, const ObjType& x, const ObjType& y) {
  switch (kind) {
    case SpecialKind::Membership: {
      Relation r = Relation::of_type(u, y, y.pow());
      for (std::size_t b = 0; b < r.tgt_size(); ++b) {
        for (std::size_t a = 0; a < r.src_size(); ++a) {
          if ((b >> a) & 1U) r.insert(a, b);
        }
      }
      return r;
    }
    case SpecialKind::Omega: {
      Relation r = Relation::of_type(u, y.pow(), y.pow());
      for (std::size_t a = 0; a < r.src_size(); ++a) {
        for (std::size_t b = 0; b < r.tgt_size(); ++b) {
          if ((a & b) == a) r.insert(a, b);
        }
      }
      return r;
    }
    case SpecialKind::CompRel: {
      Relation r = Relation::of_type(u, y.pow(), y.pow());
      for (std::size_t a = 0; a < r.src_size(); ++a) r.insert(a, ~a & (r.tgt_size() - 1));
      return r;
    }
    case SpecialKind::Unit: {
      Relation r = Relation::of_type(u, x, x.pow());
      for (std::size_t a = 0; a < r.src_size(); ++a) r.insert(a, std::size_t{1} << a);
      if (testing::corrupt_unit() && r.src_size() > 0) r.row(0) = Mask::single(0);
      return r;
    }
    case SpecialKind::InnerUnitU:
    case SpecialKind::InnerUnitI:
    case SpecialKind::Atoms:
    case SpecialKind::CoAtoms: {
      Relation r = Relation::of_type(u, x, y.pow());
      const std::size_t n = u.cardinality(y);
      const std::size_t full = r.tgt_size() - 1;
      Mask row;
      if (kind == SpecialKind::InnerUnitU) row.set(0);
      if (kind == SpecialKind::InnerUnitI) row.set(full);
      for (std::size_t b = 0; b < n; ++b) {
        if (kind == SpecialKind::Atoms) row.set(std::size_t{1} << b);
        if (kind == SpecialKind::CoAtoms) row.set(full & ~(std::size_t{1} << b));
      }
      for (std::size_t a = 0; a < r.src_size(); ++a) r.row(a) = row;
      return r;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown special constant");
}

MultiRelation unit(const Universe& u, const ObjType& x) {
  return MultiRelation(special_constant(SpecialKind::Unit, u, x, x));
}
MultiRelation inner_unit_union(const Universe& u, const ObjType& x, const ObjType& y) {
  return MultiRelation(special_constant(SpecialKind::InnerUnitU, u, x, y));
}
MultiRelation inner_unit_intersection(const Universe& u, const ObjType& x, const ObjType& y) {
  return MultiRelation(special_constant(SpecialKind::InnerUnitI, u, x, y));
}
MultiRelation atoms(const Universe& u, const ObjType& x, const ObjType& y) {
  return MultiRelation(special_constant(SpecialKind::Atoms, u, x, y));
}
MultiRelation co_atoms(const Universe& u, const ObjType& x, const ObjType& y) {
  return MultiRelation(special_constant(SpecialKind::CoAtoms, u, x, y));
}
MultiRelation membership(const Universe& u, const ObjType& y) {
  return MultiRelation(special_constant(SpecialKind::Membership, u, y, y));
}

MultiRelation inner_union(const MultiRelation& r, const MultiRelation& s) {
  require_same_typing(r, s, "inner union");
  MultiRelation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) = rows::union_product(r.row(i), s.row(i));
  return out;
}

MultiRelation inner_intersection(const MultiRelation& r, const MultiRelation& s) {
  require_same_typing(r, s, "inner intersection");
  MultiRelation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) {
    out.row(i) = rows::intersection_product(r.row(i), s.row(i));
  }
  return out;
}

MultiRelation inner_complement(const MultiRelation& r) {
  MultiRelation out = r;
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) = rows::complement_each(r.row(i), r.inner_size());
  return out;
}

MultiRelation dual(const MultiRelation& r) { return MultiRelation(complement(inner_complement(r).rel())); }

MultiRelation big_inner_union(std::span<const MultiRelation> family) {
  return fold_rows(family, "big inner union", rows::union_product);
}

MultiRelation big_inner_intersection(std::span<const MultiRelation> family) {
  return fold_rows(family, "big inner intersection", rows::intersection_product);
}

bool closure_property(ClosureProperty kind, const MultiRelation& r) {
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    const Mask& row = r.row(i);
    const Mask closed = kind == ClosureProperty::UnionClosed ? rows::union_product(row, row)
                                                             : rows::intersection_product(row, row);
    if (!closed.subset_of(row)) return false;
  }
  return true;
}

bool union_closed_by_syq(const Universe& u, const MultiRelation& r) {
  const ObjType y = r.inner();
  const Relation eps = special_constant(SpecialKind::Membership, u, y, y);
  for (std::size_t a = 0; a < r.src_size(); ++a) {
    std::vector<std::size_t> members;
    r.row(a).for_each([&](std::size_t b) { members.push_back(b); });
    if (members.size() > 20) throw Error(ErrorKind::ResultTooLarge, "row too large for the syq test");
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << members.size()); ++pick) {
      Relation s(r.rel().src(), r.rel().tgt(), r.src_size(), r.rel().tgt_size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        if ((pick >> k) & 1U) s.insert(a, members[k]);
      }
      const Relation lhs = compose(domain(s), syq(compose(eps, converse(s)), eps));
      if (!lhs.subset_of(r.rel())) return false;
    }
  }
  return true;
}

Relation kleisli_lift(const Universe& u, const MultiRelation& r) {
  Relation out = Relation::of_type(u, r.src().pow(), r.rel().tgt());
  for (std::size_t a = 0; a < out.src_size(); ++a) {
    Mask image;
    for (std::size_t x = 0; x < r.src_size(); ++x) {
      if ((a >> x) & 1U) image |= r.row(x);
    }
    out.insert(a, rows::big_union(image));
  }
  return out;
}

Relation peleg_lift(const Universe& u, const MultiRelation& r) {
  Relation out = Relation::of_type(u, r.src().pow(), r.rel().tgt());
  out.row(0) = Mask::single(0);
  // Extend the lift of A − {lowest element} by one choice for that element.
  for (std::size_t a = 1; a < out.src_size(); ++a) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(a));
    out.row(a) = rows::union_product(out.row(a & (a - 1)), r.row(low));
  }
  return out;
}

Relation relation_lift(const Universe& u, const Relation& t) {
  return peleg_lift(u, MultiRelation(compose(t, unit(u, t.tgt()).rel())));
}

MultiRelation peleg_compose(const Universe& u, const MultiRelation& r, const MultiRelation& s) {
  if (!(r.inner() == s.src())) {
    throw Error(ErrorKind::TypeMismatch,
                "Peleg composition of " + r.rel().type_string() + " and " + s.rel().type_string());
  }
  return MultiRelation(compose(r.rel(), peleg_lift(u, s)));
}

MultiRelation co_compose(const Universe& u, const MultiRelation& r, const MultiRelation& s) {
  return inner_complement(peleg_compose(u, r, inner_complement(s)));
}

bool inner_property(InnerProperty kind, const MultiRelation& r) {
  const Mask allowed = singletons_or_empty(r.inner_size());
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    const Mask& row = r.row(i);
    const bool univalent = row.subset_of(allowed);
    const bool total = !row.test(0);
    switch (kind) {
      case InnerProperty::InnerUnivalent:
        if (!univalent) return false;
        break;
      case InnerProperty::InnerTotal:
        if (!total) return false;
        break;
      case InnerProperty::InnerDeterministic:
        if (!univalent || !total) return false;
        break;
    }
  }
  return true;
}

MultiRelation parikh_compose(const Universe& u, const MultiRelation& r, const MultiRelation& s) {
  auto up_closed = [](const MultiRelation& m) {
    for (std::size_t i = 0; i < m.src_size(); ++i) {
      if (!(rows::up_close(m.row(i), m.inner_size()) == m.row(i))) return false;
    }
    return true;
  };
  if (!up_closed(r)) throw Error(ErrorKind::NotUpClosed, "first argument " + r.rel().type_string());
  if (!up_closed(s)) throw Error(ErrorKind::NotUpClosed, "second argument " + s.rel().type_string());
  MultiRelation out = peleg_compose(u, r, s);
  for (std::size_t i = 0; i < out.src_size(); ++i) out.row(i) = rows::up_close(out.row(i), out.inner_size());
  return out;
}

}  // namespace multirel
