#include "multirel/closures.hpp"

#include <algorithm>
#include <map>

#include "multirel/io.hpp"

namespace multirel {

namespace {

Relation omega_of(const Universe& u, const ObjType& inner) {
  return special_constant(SpecialKind::Omega, u, inner, inner);
}

MultiRelation universal_mr(const Universe& u, const MultiRelation& r) {
  return MultiRelation(universal_relation(u, r.src(), r.rel().tgt()));
}

std::string pair_witness(const Universe& u, const MultiRelation& r, const MultiRelation& s) {
  return "R=" + to_text(u, r) + " S=" + to_text(u, s);
}

std::vector<MultiRelation> filtered(const std::vector<MultiRelation>& all, bool (*keep)(const MultiRelation&)) {
  std::vector<MultiRelation> out;
  for (const auto& r : all) {
    if (keep(r)) out.push_back(r);
  }
  return out;
}

// First pair (in enumeration order) violating `ok`, rendered; empty if none.
template <class Pred>
std::string first_bad_pair(const Universe& u, const std::vector<MultiRelation>& xs, Pred ok) {
  for (const auto& r : xs) {
    for (const auto& s : xs) {
      if (!ok(r, s)) return pair_witness(u, r, s);
    }
  }
  return {};
}

Check make_check(std::string name, std::string witness) {
  Check c;
  c.name = std::move(name);
  c.pass = witness.empty();
  c.witness = std::move(witness);
  return c;
}

// Inverted check: passes when a refuting pair exists.
Check expected_fail(std::string name, const std::string& witness) {
  Check c;
  c.name = std::move(name);
  c.pass = !witness.empty();
  c.witness = witness.empty() ? "no refuting pair" : "";
  return c;
}

bool antisymmetric_pair(PreorderKind kind, const MultiRelation& r, const MultiRelation& s) {
  return !(preorder_leq(kind, r, s) && preorder_leq(kind, s, r)) || r == s;
}

constexpr PreorderKind kAllKinds[] = {PreorderKind::Hoare, PreorderKind::Smyth, PreorderKind::EgliMilner};

}  // namespace

MultiRelation closure(ClosureKind kind, const MultiRelation& r) {
  MultiRelation out = r;
  const std::size_t n = r.inner_size();
  for (std::size_t i = 0; i < r.src_size(); ++i) {
    switch (kind) {
      case ClosureKind::Up:
        out.row(i) = rows::up_close(r.row(i), n);
        break;
      case ClosureKind::Down:
        out.row(i) = rows::down_close(r.row(i), n);
        break;
      case ClosureKind::Convex:
        out.row(i) = rows::up_close(r.row(i), n) & rows::down_close(r.row(i), n);
        break;
    }
  }
  return out;
}

MultiRelation closure_via_omega(const Universe& u, ClosureKind kind, const MultiRelation& r) {
  const Relation om = omega_of(u, r.inner());
  switch (kind) {
    case ClosureKind::Up:
      return MultiRelation(compose(r.rel(), om));
    case ClosureKind::Down:
      return MultiRelation(compose(r.rel(), converse(om)));
    case ClosureKind::Convex:
      return MultiRelation(intersect(compose(r.rel(), om), compose(r.rel(), converse(om))));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown closure");
}

MultiRelation closure_via_inner(const Universe& u, ClosureKind kind, const MultiRelation& r) {
  const MultiRelation all = universal_mr(u, r);
  switch (kind) {
    case ClosureKind::Up:
      return inner_union(r, all);
    case ClosureKind::Down:
      return inner_intersection(r, all);
    case ClosureKind::Convex:
      return MultiRelation(intersect(inner_union(r, all).rel(), inner_intersection(r, all).rel()));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown closure");
}

bool closed_check(ClosureKind kind, const MultiRelation& r) { return closure(kind, r) == r; }

std::string_view to_string(PreorderKind kind) {
  switch (kind) {
    case PreorderKind::Hoare:
      return "hoare";
    case PreorderKind::Smyth:
      return "smyth";
    case PreorderKind::EgliMilner:
      return "egli_milner";
  }
  return "?";
}

bool preorder_leq(PreorderKind kind, const MultiRelation& r, const MultiRelation& s) {
  require_same_type(r.rel(), s.rel(), "preorder comparison");
  const bool hoare = kind != PreorderKind::Smyth;
  const bool smyth = kind != PreorderKind::Hoare;
  if (hoare && !r.rel().subset_of(down(s).rel())) return false;
  if (smyth && !s.rel().subset_of(up(r).rel())) return false;
  return true;
}

bool preorder_leq_by_closures(PreorderKind kind, const MultiRelation& r, const MultiRelation& s) {
  require_same_type(r.rel(), s.rel(), "preorder comparison");
  const bool hoare = kind != PreorderKind::Smyth;
  const bool smyth = kind != PreorderKind::Hoare;
  if (hoare && !down(r).rel().subset_of(down(s).rel())) return false;
  if (smyth && !up(s).rel().subset_of(up(r).rel())) return false;
  return true;
}

ClosureKind representative_closure(PreorderKind kind) {
  switch (kind) {
    case PreorderKind::Hoare:
      return ClosureKind::Down;
    case PreorderKind::Smyth:
      return ClosureKind::Up;
    case PreorderKind::EgliMilner:
      return ClosureKind::Convex;
  }
  return ClosureKind::Convex;
}

bool equiv(PreorderKind kind, const MultiRelation& r, const MultiRelation& s) {
  require_same_type(r.rel(), s.rel(), "preorder equivalence");
  const ClosureKind c = representative_closure(kind);
  return closure(c, r) == closure(c, s);
}

std::vector<MultiRelation> enumerate_homset(const Universe& u, const ObjType& src, const ObjType& inner,
                                            std::uint64_t cap) {
  const MultiRelation proto = MultiRelation::of_type(u, src, inner);
  const std::size_t bits = proto.rel().bit_width();
  if (bits >= 63 || (std::uint64_t{1} << bits) > cap) {
    throw Error(ErrorKind::SpaceTooLarge, "homset " + proto.rel().type_string() + " has 2^" +
                                              std::to_string(bits) + " elements");
  }
  std::vector<MultiRelation> out;
  out.reserve(std::size_t{1} << bits);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << bits); ++c) {
    out.emplace_back(Relation::from_code(proto.src(), proto.rel().tgt(), proto.src_size(), proto.rel().tgt_size(), c));
  }
  return out;
}

std::size_t QuotientStructure::class_of(const MultiRelation& r) const {
  const MultiRelation rep_r = closure(representative_closure(kind), r);
  auto it = std::lower_bound(classes.begin(), classes.end(), rep_r,
                             [](const QuotientClass& c, const MultiRelation& m) { return c.rep.rel() < m.rel(); });
  if (it == classes.end() || !(it->rep == rep_r)) {
    throw Error(ErrorKind::TypeMismatch, "relation outside the quotient's homset");
  }
  return static_cast<std::size_t>(it - classes.begin());
}

std::size_t QuotientStructure::inner_union(std::size_t c, std::size_t d) const {
  if (kind == PreorderKind::Smyth) {
    return class_of(MultiRelation(intersect(up(rep(c)).rel(), up(rep(d)).rel())));
  }
  return class_of(multirel::inner_union(rep(c), rep(d)));
}

std::size_t QuotientStructure::inner_intersection(std::size_t c, std::size_t d) const {
  if (kind == PreorderKind::Hoare) {
    return class_of(MultiRelation(intersect(down(rep(c)).rel(), down(rep(d)).rel())));
  }
  return class_of(multirel::inner_intersection(rep(c), rep(d)));
}

std::size_t QuotientStructure::unit_union(const Universe& u) const {
  if (kind == PreorderKind::Smyth) return class_of(MultiRelation(universal_relation(u, src, inner.pow())));
  return class_of(inner_unit_union(u, src, inner));
}

std::size_t QuotientStructure::unit_intersection(const Universe& u) const {
  if (kind == PreorderKind::Hoare) return class_of(MultiRelation(universal_relation(u, src, inner.pow())));
  return class_of(inner_unit_intersection(u, src, inner));
}

bool QuotientStructure::leq(std::size_t c, std::size_t d) const {
  switch (kind) {
    case PreorderKind::Hoare:
    case PreorderKind::EgliMilner:
      return rep(c).rel().subset_of(rep(d).rel());
    case PreorderKind::Smyth:
      return rep(d).rel().subset_of(rep(c).rel());
  }
  return false;
}

QuotientStructure quotient(PreorderKind kind, const Universe& u, const ObjType& src, const ObjType& inner,
                           std::uint64_t cap) {
  QuotientStructure q{kind, src, inner, {}};
  const ClosureKind ck = representative_closure(kind);
  std::map<Relation, std::vector<std::uint64_t>> groups;
  for (const auto& r : enumerate_homset(u, src, inner, cap)) {
    groups[closure(ck, r).rel()].push_back(r.rel().code());
  }
  for (auto& [rep, members] : groups) q.classes.push_back(QuotientClass{MultiRelation(rep), std::move(members)});
  return q;
}

bool OrderReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

OrderReport verify_quotient(const Universe& u, const QuotientStructure& q) {
  OrderReport rep{"quotient-" + std::string(to_string(q.kind)), {}};
  const auto all = enumerate_homset(u, q.src, q.inner);
  const ClosureKind ck = representative_closure(q.kind);

  std::size_t closed = 0;
  for (const auto& r : all) closed += closed_check(ck, r) ? 1 : 0;
  rep.checks.push_back(make_check("class count equals closed count",
                                  closed == q.classes.size() ? ""
                                                             : std::to_string(q.classes.size()) + " classes vs " +
                                                                   std::to_string(closed) + " closed"));

  std::string bad;
  for (const auto& c : q.classes) {
    if (!closed_check(ck, c.rep)) {
      bad = "representative " + to_text(u, c.rep) + " not closed";
      break;
    }
    for (auto code : c.members) {
      const MultiRelation m(Relation::from_code(q.src, q.inner.pow(), c.rep.src_size(), c.rep.rel().tgt_size(), code));
      if (!(closure(ck, m) == c.rep)) {
        bad = "member " + to_text(u, m) + " outside class of " + to_text(u, c.rep);
        break;
      }
    }
    if (!bad.empty()) break;
  }
  rep.checks.push_back(make_check("representatives are closed and classes partition", bad));

  // Well-definedness: [R] op [S] = [R op S] for every pair of members.
  std::vector<std::size_t> cls;
  cls.reserve(all.size());
  for (const auto& r : all) cls.push_back(q.class_of(r));
  std::string bad_u, bad_i, bad_leq;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      const auto& r = all[i];
      const auto& s = all[j];
      if (bad_u.empty() && q.inner_union(cls[i], cls[j]) != q.class_of(inner_union(r, s))) {
        bad_u = pair_witness(u, r, s);
      }
      if (bad_i.empty() && q.inner_intersection(cls[i], cls[j]) != q.class_of(inner_intersection(r, s))) {
        bad_i = pair_witness(u, r, s);
      }
      // ≤EM is ⇕-inclusion, i.e. R ⊑↓ S ⊑↑ R, not the order induced by ⊑↕.
      const bool expected = q.kind == PreorderKind::EgliMilner
                                ? preorder_leq(PreorderKind::Hoare, r, s) && preorder_leq(PreorderKind::Smyth, s, r)
                                : preorder_leq(q.kind, r, s);
      if (bad_leq.empty() && q.leq(cls[i], cls[j]) != expected) bad_leq = pair_witness(u, r, s);
    }
  }
  rep.checks.push_back(make_check("inner union respects classes", bad_u));
  rep.checks.push_back(make_check("inner intersection respects classes", bad_i));
  rep.checks.push_back(make_check("class order matches closure inclusion", bad_leq));

  const std::size_t e_u = q.unit_union(u);
  const std::size_t e_i = q.unit_intersection(u);
  std::string bad_unit;
  if (e_u != q.class_of(inner_unit_union(u, q.src, q.inner)) ||
      e_i != q.class_of(inner_unit_intersection(u, q.src, q.inner))) {
    bad_unit = "unit classes differ from [1⋓]/[1⋒]";
  }
  for (std::size_t c = 0; c < q.classes.size() && bad_unit.empty(); ++c) {
    if (q.inner_union(c, e_u) != c) bad_unit = "⋓ unit fails at " + to_text(u, q.rep(c));
    if (q.inner_intersection(c, e_i) != c) bad_unit = "⋒ unit fails at " + to_text(u, q.rep(c));
  }
  rep.checks.push_back(make_check("units", bad_unit));

  // icpl exchanges ↑ and ↓ and fixes ⇕, so it carries classes of one kind onto the dual kind.
  std::string bad_dual;
  for (const auto& r : all) {
    const MultiRelation ri = inner_complement(r);
    const bool ok = inner_complement(up(r)) == down(ri) && inner_complement(down(r)) == up(ri) &&
                    inner_complement(convex(r)) == convex(ri);
    if (!ok) {
      bad_dual = "R=" + to_text(u, r);
      break;
    }
  }
  rep.checks.push_back(make_check("icpl duality of closures", bad_dual));
  return rep;
}

OrderReport class_special_order(SpecialClass kind, const Universe& u, const ObjType& src, const ObjType& inner) {
  const auto all = enumerate_homset(u, src, inner);
  OrderReport rep;
  auto leq = [](PreorderKind k) {
    return [k](const MultiRelation& r, const MultiRelation& s) { return preorder_leq(k, r, s); };
  };
  switch (kind) {
    case SpecialClass::InnerDeterministic: {
      rep.name = "inner-deterministic";
      const auto xs = filtered(all, is_inner_deterministic);
      rep.checks.push_back(make_check("hoare is inclusion", first_bad_pair(u, xs, [&](const auto& r, const auto& s) {
                                        return leq(PreorderKind::Hoare)(r, s) == r.rel().subset_of(s.rel());
                                      })));
      rep.checks.push_back(make_check("smyth is reverse inclusion", first_bad_pair(u, xs, [&](const auto& r, const auto& s) {
                                        return leq(PreorderKind::Smyth)(r, s) == s.rel().subset_of(r.rel());
                                      })));
      rep.checks.push_back(make_check("egli-milner is discrete", first_bad_pair(u, xs, [&](const auto& r, const auto& s) {
                                        return leq(PreorderKind::EgliMilner)(r, s) == (r == s);
                                      })));
      break;
    }
    case SpecialClass::InnerUnivalent: {
      rep.name = "inner-univalent";
      const auto xs = filtered(all, is_inner_univalent);
      auto anti = [](PreorderKind k) {
        return [k](const MultiRelation& r, const MultiRelation& s) { return antisymmetric_pair(k, r, s); };
      };
      rep.checks.push_back(make_check("egli-milner antisymmetric", first_bad_pair(u, xs, anti(PreorderKind::EgliMilner))));
      rep.checks.push_back(expected_fail("hoare not antisymmetric (control)", first_bad_pair(u, xs, anti(PreorderKind::Hoare))));
      rep.checks.push_back(expected_fail("smyth not antisymmetric (control)", first_bad_pair(u, xs, anti(PreorderKind::Smyth))));
      break;
    }
    case SpecialClass::OuterUnivalent: {
      rep.name = "outer-univalent";
      const auto xs = filtered(all, [](const MultiRelation& r) { return is_univalent(r.rel()); });
      for (auto k : kAllKinds) {
        rep.checks.push_back(make_check(std::string(to_string(k)) + " antisymmetric",
                                        first_bad_pair(u, xs, [k](const auto& r, const auto& s) {
                                          return antisymmetric_pair(k, r, s);
                                        })));
      }
      break;
    }
    case SpecialClass::OuterDeterministic: {
      rep.name = "outer-deterministic";
      const auto xs = filtered(all, [](const MultiRelation& r) { return is_deterministic(r.rel()); });
      rep.checks.push_back(make_check("orders coincide", first_bad_pair(u, xs, [&](const auto& r, const auto& s) {
                                        const bool h = leq(PreorderKind::Hoare)(r, s);
                                        return h == leq(PreorderKind::Smyth)(r, s) &&
                                               h == leq(PreorderKind::EgliMilner)(r, s);
                                      })));
      for (auto k : kAllKinds) {
        rep.checks.push_back(make_check(std::string(to_string(k)) + " antisymmetric",
                                        first_bad_pair(u, xs, [k](const auto& r, const auto& s) {
                                          return antisymmetric_pair(k, r, s);
                                        })));
      }
      break;
    }
  }
  return rep;
}

OrderReport antisymmetry_sweep(PreorderKind kind, const Universe& u, const ObjType& src, const ObjType& inner) {
  const auto all = enumerate_homset(u, src, inner);
  OrderReport rep{std::string(to_string(kind)) + "-antisymmetry", {}};
  rep.checks.push_back(make_check(std::string(to_string(kind)) + " antisymmetric",
                                  first_bad_pair(u, all, [kind](const auto& r, const auto& s) {
                                    return antisymmetric_pair(kind, r, s);
                                  })));
  return rep;
}

OrderReport det_lattice_check(const Universe& u, const ObjType& src, const ObjType& inner) {
  const auto all = enumerate_homset(u, src, inner);
  const auto det = filtered(all, [](const MultiRelation& r) { return is_deterministic(r.rel()); });
  const auto univ = filtered(all, [](const MultiRelation& r) { return is_univalent(r.rel()); });
  OrderReport rep{"deterministic-lattice", {}};
  auto hoare = [](const MultiRelation& r, const MultiRelation& s) { return preorder_leq(PreorderKind::Hoare, r, s); };

  rep.checks.push_back(make_check("closed under inner union and intersection",
                                  first_bad_pair(u, det, [](const auto& r, const auto& s) {
                                    return is_deterministic(inner_union(r, s).rel()) &&
                                           is_deterministic(inner_intersection(r, s).rel());
                                  })));
  rep.checks.push_back(make_check("absorption", first_bad_pair(u, det, [](const auto& r, const auto& s) {
                                    return inner_union(r, inner_intersection(r, s)) == r &&
                                           inner_intersection(r, inner_union(r, s)) == r;
                                  })));
  rep.checks.push_back(make_check("inner union is the least upper bound", first_bad_pair(u, det, [&](const auto& r, const auto& s) {
                                    const MultiRelation j = inner_union(r, s);
                                    if (!hoare(r, j) || !hoare(s, j)) return false;
                                    return std::all_of(det.begin(), det.end(), [&](const MultiRelation& t) {
                                      return !(hoare(r, t) && hoare(s, t)) || hoare(j, t);
                                    });
                                  })));
  rep.checks.push_back(make_check("inner intersection is the greatest lower bound",
                                  first_bad_pair(u, det, [&](const auto& r, const auto& s) {
                                    const MultiRelation m = inner_intersection(r, s);
                                    if (!hoare(m, r) || !hoare(m, s)) return false;
                                    return std::all_of(det.begin(), det.end(), [&](const MultiRelation& t) {
                                      return !(hoare(t, r) && hoare(t, s)) || hoare(t, m);
                                    });
                                  })));
  rep.checks.push_back(make_check("smyth as natural order on univalent", first_bad_pair(u, univ, [](const auto& r, const auto& s) {
                                    return preorder_leq(PreorderKind::Smyth, r, s) == (inner_union(r, s) == s);
                                  })));
  rep.checks.push_back(make_check("hoare as natural order on univalent", first_bad_pair(u, univ, [](const auto& r, const auto& s) {
                                    return preorder_leq(PreorderKind::Hoare, r, s) == (inner_intersection(r, s) == r);
                                  })));
  return rep;
}

std::vector<MultiRelation> down_d_subfunctions(const MultiRelation& r, bool deterministic_variant, std::size_t cap) {
  // Per source point, the admissible rows in ascending mask order.
  std::vector<std::vector<Mask>> choices(r.src_size());
  std::size_t count = 1;
  for (std::size_t a = 0; a < r.src_size(); ++a) {
    const Mask& row = r.row(a);
    const std::size_t flat = rows::big_union(row);
    auto& opts = choices[a];
    if (deterministic_variant) {
      opts.push_back(row.none() ? Mask{} : Mask::single(0));  // (a,∅) on dom(R), nothing outside
    } else if (!(row.any() && !(row == Mask::single(0)))) {
      opts.push_back(Mask{});  // outside dom(R − 1⋓)
    }
    for (std::size_t b = 0; b < r.inner_size(); ++b) {
      if ((flat >> b) & 1U) opts.push_back(Mask::single(std::size_t{1} << b));
    }
    if (count > cap / opts.size()) throw Error(ErrorKind::ResultTooLarge, "too many ⊑↓d subfunctions");
    count *= opts.size();
  }
  std::vector<MultiRelation> out;
  out.reserve(count);
  std::vector<std::size_t> digit(r.src_size(), 0);
  MultiRelation cur = r;
  for (;;) {
    for (std::size_t a = 0; a < r.src_size(); ++a) cur.row(a) = choices[a][digit[a]];
    out.push_back(cur);
    // Increment with source point 0 least significant.
    std::size_t a = 0;
    while (a < digit.size() && ++digit[a] == choices[a].size()) digit[a++] = 0;
    if (a == digit.size()) break;
  }
  return out;
}

UnivalentDecomposition decompose_univalent(const MultiRelation& r, bool deterministic_variant, std::size_t cap) {
  if (!is_univalent(r.rel())) throw Error(ErrorKind::NotUnivalent, r.rel().type_string() + " argument");
  UnivalentDecomposition d{down_d_subfunctions(r, deterministic_variant, cap), r, false};
  d.reconstruction = MultiRelation(compose(domain(r.rel()), big_inner_union(d.family).rel()));
  d.reconstructs = d.reconstruction == r;
  return d;
}

FullDecomposition decompose_full(const MultiRelation& r, bool deterministic_variant, std::size_t cap) {
  FullDecomposition d{{}, r, false};
  Relation acc(r.rel().src(), r.rel().tgt(), r.src_size(), r.rel().tgt_size());
  for (auto& s : d_subfunctions(r.rel(), cap)) {
    MultiRelation sub(std::move(s));
    auto family = down_d_subfunctions(sub, deterministic_variant, cap);
    acc = unite(acc, big_inner_union(family).rel());
    d.parts.push_back({std::move(sub), std::move(family)});
  }
  d.reconstruction = MultiRelation(compose(domain(r.rel()), acc));
  d.reconstructs = d.reconstruction == r;
  return d;
}

}  // namespace multirel
