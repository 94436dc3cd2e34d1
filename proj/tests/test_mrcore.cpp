#include <doctest.h>

#include <functional>

#include "multirel/closures.hpp"
#include "multirel/io.hpp"
#include "multirel/multirel.hpp"
#include "support.hpp"

using namespace multirel;
using namespace tsupport;

namespace {

// All unions ⋃_i B_i with B_i drawn from options[i]; a set of subset masks.
std::vector<std::size_t> choice_unions(const std::vector<std::vector<std::size_t>>& options) {
  std::vector<std::size_t> acc{0};
  for (const auto& opts : options) {
    std::vector<std::size_t> next;
    for (std::size_t a : acc) {
      for (std::size_t b : opts) next.push_back(a | b);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc = std::move(next);
  }
  return acc;
}

std::vector<std::size_t> members(const Mask& row) {
  std::vector<std::size_t> out;
  row.for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

// {(A,B) | ∃f. ∀a∈A. f(a) ∈ R(a), B = ⋃f(A)}, by enumerating choice functions.
Relation naive_peleg_lift(const Universe& u, const MultiRelation& r) {
  const ObjType px = r.src().pow();
  Relation out = Relation::of_type(u, px, r.rel().tgt());
  for (std::size_t a = 0; a < u.cardinality(px); ++a) {
    std::vector<std::vector<std::size_t>> opts;
    for (std::size_t x = 0; x < r.src_size(); ++x) {
      if ((a >> x) & 1U) opts.push_back(members(r.row(x)));
    }
    for (std::size_t b : choice_unions(opts)) out.insert(a, b);
  }
  return out;
}

MultiRelation naive_peleg(const Universe& u, const MultiRelation& r, const MultiRelation& s) {
  Relation out = Relation::of_type(u, r.src(), s.rel().tgt());
  for (std::size_t x = 0; x < r.src_size(); ++x) {
    for (std::size_t b : members(r.row(x))) {
      std::vector<std::vector<std::size_t>> opts;
      for (std::size_t y = 0; y < s.src_size(); ++y) {
        if ((b >> y) & 1U) opts.push_back(members(s.row(y)));
      }
      for (std::size_t c : choice_unions(opts)) out.insert(x, c);
    }
  }
  return MultiRelation(std::move(out));
}

MultiRelation mr(const Universe& u, std::string_view text, const ObjType& src, const ObjType& inner) {
  return MultiRelation(parse_relation(u, text, src, inner.pow()));
}

MultiRelation cup(const MultiRelation& a, const MultiRelation& b) { return MultiRelation(unite(a.rel(), b.rel())); }
MultiRelation cap(const MultiRelation& a, const MultiRelation& b) {
  return MultiRelation(intersect(a.rel(), b.rel()));
}
MultiRelation neg(const MultiRelation& a) { return MultiRelation(complement(a.rel())); }
bool le(const MultiRelation& a, const MultiRelation& b) { return a.rel().subset_of(b.rel()); }

// Runs `f` exhaustively over triples at |X|=1,|Y|=2 and on 10^4 random
// triples at |X|=2,|Y|=2.
void triples(const std::function<void(const Universe&, const MultiRelation&, const MultiRelation&,
                                      const MultiRelation&)>& f) {
  {
    const Universe u = xy(1, 2);
    const auto all = all_multi(u, X, Y);
    for (const auto& r : all) {
      for (const auto& s : all) {
        for (const auto& t : all) f(u, r, s, t);
      }
    }
  }
  const Universe u = xy(2, 2);
  Gen g(2024);
  for (int i = 0; i < 10000; ++i) f(u, g.multi(u, X, Y), g.multi(u, X, Y), g.multi(u, X, Y));
}

}  // namespace

TEST_CASE("worked example: inner union and intersection of R with itself") {
  const Universe u = xy(1, 2);
  const auto r = mr(u, "{(a,{a}),(a,{b})}", X, Y);
  CHECK(inner_union(r, r) == mr(u, "{(a,{a}),(a,{b}),(a,{a,b})}", X, Y));
  CHECK(inner_intersection(r, r) == mr(u, "{(a,∅),(a,{a}),(a,{b})}", X, Y));
}

TEST_CASE("Peleg lifting matches choice-function enumeration") {
  for (std::size_t x : {1, 2}) {
    const Universe u = xy(x, 2);
    for (const auto& r : all_multi(u, X, Y)) CHECK(peleg_lift(u, r) == naive_peleg_lift(u, r));
  }
  const Universe u = xy(3, 2);
  Gen g(5);
  for (int i = 0; i < 300; ++i) {
    const auto r = g.multi(u, X, Y);
    CHECK(peleg_lift(u, r) == naive_peleg_lift(u, r));
  }
  // Lifting of the down-closed unit is the converse subset order.
  const Universe uy = Universe::declare({{"Y", 2}});
  const auto one = unit(uy, Y);
  CHECK(peleg_lift(uy, down(one)) == converse(special_constant(SpecialKind::Omega, uy, Y, Y)));
  CHECK(peleg_lift(uy, mr(uy, "{(a,{a}),(b,{a}),(b,{b})}", Y, Y)) ==
        parse_relation(uy, "{(∅,∅),({a},{a}),({b},{a}),({b},{b}),({a,b},{a}),({a,b},{a,b})}", Y.pow(), Y.pow()));
}

TEST_CASE("Peleg composition matches choice-function enumeration") {
  const Universe u = xy(2, 2);
  const auto rs = all_multi(u, X, Y), ss = all_multi(u, Y, Y);
  for (const auto& r : rs) {
    for (const auto& s : ss) CHECK(peleg_compose(u, r, s) == naive_peleg(u, r, s));
  }
  CHECK(peleg_compose(u, MultiRelation(empty_relation(u, Y, Y.pow())), ss[77]).rel().empty());
}

TEST_CASE("Kleisli lifting") {
  const Universe u = xy(2, 2);
  const auto eps_x = membership(u, X), eps_y = membership(u, Y);
  for (const auto& r : all_multi(u, X, Y)) {
    const Relation k = kleisli_lift(u, r);
    CHECK(is_deterministic(k));
    CHECK(k == syq(compose(compose(eps_y.rel(), converse(r.rel())), eps_x.rel()), eps_y.rel()));
    // Oracle: B = ⋃R(A).
    for (std::size_t a = 0; a < 4; ++a) {
      std::size_t b = 0;
      for (std::size_t x = 0; x < 2; ++x) {
        if ((a >> x) & 1U) b |= rows::big_union(r.row(x));
      }
      CHECK(k.contains(a, b));
    }
  }
}

TEST_CASE("Peleg lifting via Id and d-subfunctions") {
  const Universe u = xy(2, 2);
  const MultiRelation id(identity_relation(u, X.pow()));
  for (const auto& r : all_multi(u, X, Y)) {
    const Relation lift = peleg_lift(u, r);
    CHECK(MultiRelation(lift) == peleg_compose(u, id, r));
    Relation parts = empty_relation(u, X.pow(), Y.pow());
    for (const auto& s : d_subfunctions(r.rel())) parts = unite(parts, kleisli_lift(u, MultiRelation(s)));
    const Relation dom_lift = relation_lift(u, domain(r.rel()));
    CHECK(lift == compose(dom_lift, parts));
  }
}

TEST_CASE("inner quantale laws") {
  triples([](const Universe& u, const MultiRelation& r, const MultiRelation& s, const MultiRelation& t) {
    CHECK(inner_union(r, s) == inner_union(s, r));
    CHECK(inner_intersection(r, s) == inner_intersection(s, r));
    CHECK(inner_union(inner_union(r, s), t) == inner_union(r, inner_union(s, t)));
    CHECK(inner_intersection(inner_intersection(r, s), t) == inner_intersection(r, inner_intersection(s, t)));
    CHECK(inner_union(r, inner_unit_union(u, X, Y)) == r);
    CHECK(inner_intersection(r, inner_unit_intersection(u, X, Y)) == r);
    CHECK(inner_union(cup(r, s), t) == cup(inner_union(r, t), inner_union(s, t)));
    CHECK(inner_intersection(cup(r, s), t) == cup(inner_intersection(r, t), inner_intersection(s, t)));
    // Inner complement is an isomorphism between the two.
    CHECK(inner_complement(inner_union(r, s)) == inner_intersection(inner_complement(r), inner_complement(s)));
    CHECK(inner_complement(cup(r, s)) == cup(inner_complement(r), inner_complement(s)));
    CHECK(inner_complement(neg(r)) == neg(inner_complement(r)));
    CHECK(inner_complement(inner_complement(r)) == r);
    // Weak distributivity.
    CHECK(le(inner_union(inner_intersection(r, s), t), inner_intersection(inner_union(r, t), inner_union(s, t))));
    CHECK(le(inner_intersection(inner_union(r, s), t), inner_union(inner_intersection(r, t), inner_intersection(s, t))));
  });
}

TEST_CASE("idempotence and duals") {
  for (std::size_t x : {1, 2}) {
    const Universe u = xy(x, 2);
    const auto all = all_multi(u, X, Y);
    for (const auto& r : all) {
      CHECK(le(r, inner_union(r, r)));
      CHECK(le(r, inner_intersection(r, r)));
      if (is_univalent(r.rel())) {
        CHECK(inner_union(r, r) == r);
        CHECK(inner_intersection(r, r) == r);
      }
      CHECK(dual(r) == neg(inner_complement(r)));
      CHECK(inner_complement(dual(r)) == dual(inner_complement(r)));
      CHECK(dual(neg(r)) == neg(dual(r)));
    }
    Gen g(3);
    for (int i = 0; i < 2000; ++i) {
      const auto r = g.multi(u, X, Y), s = g.multi(u, X, Y);
      CHECK(dual(cap(r, s)) == cup(dual(r), dual(s)));
      CHECK(dual(cup(r, s)) == cap(dual(r), dual(s)));
    }
  }
  // Idempotent but not univalent.
  const Universe u = xy(1, 2);
  const auto r = mr(u, "{(a,{a}),(a,{a,b})}", X, Y);
  CHECK(inner_union(r, r) == r);
  CHECK(inner_intersection(r, r) == r);
  CHECK_FALSE(is_univalent(r.rel()));
}

TEST_CASE("Peleg composition laws") {
  for (std::size_t x : {1, 2}) {
    const Universe u = xy(x, 2);
    const auto rs = all_multi(u, X, Y);
    const auto ss = all_multi(u, Y, Y);
    Gen g(17 + x);
    for (int i = 0; i < 10000; ++i) {
      const auto& r = rs[g.engine()() % rs.size()];
      const auto& r2 = rs[g.engine()() % rs.size()];
      const auto& s = ss[g.engine()() % ss.size()];
      const auto& s2 = ss[g.engine()() % ss.size()];
      const auto& t = ss[g.engine()() % ss.size()];
      const auto rst = peleg_compose(u, peleg_compose(u, r, s), t);
      const auto r_st = peleg_compose(u, r, peleg_compose(u, s, t));
      CHECK(le(rst, r_st));
      if (is_univalent(t.rel()) || is_union_closed(t)) CHECK(rst == r_st);
      CHECK(peleg_compose(u, cup(r, r2), s) == cup(peleg_compose(u, r, s), peleg_compose(u, r2, s)));
      if (le(s, s2)) CHECK(le(peleg_compose(u, r, s), peleg_compose(u, r, s2)));
      CHECK(le(peleg_compose(u, inner_union(r, r2), s),
               inner_union(peleg_compose(u, r, s), peleg_compose(u, r2, s))));
      CHECK(le(peleg_compose(u, r, inner_union(s, s2)),
               inner_union(peleg_compose(u, r, s), peleg_compose(u, r, s2))));
      if (le(inner_union(s, s), s)) {
        CHECK(peleg_compose(u, inner_union(r, r2), s) ==
              inner_union(peleg_compose(u, r, s), peleg_compose(u, r2, s)));
      }
      if (is_inner_deterministic(r)) {
        const Relation one_conv = converse(unit(u, Y).rel());
        CHECK(peleg_compose(u, r, s) == MultiRelation(compose(compose(r.rel(), one_conv), s.rel())));
        CHECK(r_st == rst);
      }
      CHECK(peleg_compose(u, unit(u, X), r) == r);
      CHECK(peleg_compose(u, r, unit(u, Y)) == r);
    }
  }
}

TEST_CASE("big inner union over union-closed third factor") {
  const Universe u = xy(2, 2);
  std::vector<MultiRelation> closed;
  for (const auto& s : all_multi(u, Y, Y)) {
    if (is_union_closed(s)) closed.push_back(s);
  }
  Gen g(99);
  for (int i = 0; i < 1000; ++i) {
    const auto f = g.family(u, X, Y, 1, 4);
    const auto& s = closed[g.engine()() % closed.size()];
    std::vector<MultiRelation> parts;
    for (const auto& r : f) parts.push_back(peleg_compose(u, r, s));
    CHECK(peleg_compose(u, big_inner_union(f), s) == big_inner_union(parts));
  }
  CHECK_THROWS_AS(big_inner_union(std::vector<MultiRelation>{}), Error);
}

TEST_CASE("inner unions and intersections preserve properties") {
  const Universe u = xy(2, 2);
  const auto all = all_multi(u, X, Y);
  Gen g(8);
  for (int i = 0; i < 20000; ++i) {
    const auto& r = all[g.engine()() % all.size()];
    const auto& s = all[g.engine()() % all.size()];
    const auto iu = inner_union(r, s), ii = inner_intersection(r, s);
    if (is_univalent(r.rel()) && is_univalent(s.rel())) {
      CHECK(is_univalent(iu.rel()));
      CHECK(is_univalent(ii.rel()));
    }
    if (is_inner_total(r) && is_inner_total(s)) CHECK(is_inner_total(iu));
    if (is_inner_univalent(r) && is_inner_univalent(s)) CHECK(is_inner_univalent(ii));
    if (is_total(r.rel()) && is_total(s.rel())) {
      CHECK(is_total(iu.rel()));
      CHECK(is_total(ii.rel()));
    }
    if (is_deterministic(r.rel()) && is_deterministic(s.rel())) {
      CHECK(is_deterministic(iu.rel()));
      CHECK(is_deterministic(ii.rel()));
    }
  }
}

TEST_CASE("co-composition") {
  for (std::size_t x : {1, 2}) {
    const Universe u = xy(x, 2);
    const auto rs = all_multi(u, X, Y);
    const auto ss = all_multi(u, Y, Y);
    const auto one = unit(u, Y);
    const auto lu = inner_unit_union(u, Y, Y), li = inner_unit_intersection(u, Y, Y);
    CHECK(co_compose(u, inner_complement(one), inner_complement(one)) == one);
    Gen g(41 + x);
    for (int i = 0; i < 10000; ++i) {
      const auto& r = rs[g.engine()() % rs.size()];
      const auto& q = rs[g.engine()() % rs.size()];
      const auto& s = ss[g.engine()() % ss.size()];
      const auto& t = ss[g.engine()() % ss.size()];
      CHECK(peleg_compose(u, r, s) == inner_complement(co_compose(u, r, inner_complement(s))));
      CHECK(inner_complement(r) == co_compose(u, r, inner_complement(one)));
      CHECK(co_compose(u, r, lu) == inner_complement(peleg_compose(u, r, li)));
      CHECK(co_compose(u, r, li) == inner_complement(peleg_compose(u, r, lu)));
      CHECK(le(peleg_compose(u, r, lu), inner_intersection(r, inner_complement(r))));
      CHECK(le(co_compose(u, r, li), inner_union(r, inner_complement(r))));
      CHECK(co_compose(u, cup(r, q), s) == cup(co_compose(u, r, s), co_compose(u, q, s)));
      if (le(s, t)) CHECK(le(co_compose(u, r, s), co_compose(u, r, t)));
      CHECK(le(co_compose(u, r, inner_intersection(s, t)),
               inner_intersection(co_compose(u, r, s), co_compose(u, r, t))));
      CHECK(le(co_compose(u, inner_union(r, q), s), inner_intersection(co_compose(u, r, s), co_compose(u, q, s))));
      if (le(inner_intersection(s, s), s)) {
        CHECK(co_compose(u, inner_union(r, q), s) == inner_intersection(co_compose(u, r, s), co_compose(u, q, s)));
      }
    }
  }
}

TEST_CASE("co-composition with the empty relation on the right is not empty") {
  // R ⊙ ∅ contains (a,Y) whenever (a,∅) ∈ R: the empty choice meets to Y.
  const Universe u = xy(1, 2);
  const auto r = mr(u, "{(a,∅)}", X, Y);
  const MultiRelation zero(empty_relation(u, Y, Y.pow()));
  CHECK(co_compose(u, r, zero) == mr(u, "{(a,{a,b})}", X, Y));
  CHECK(co_compose(u, mr(u, "{(a,{a})}", X, Y), zero).rel().empty());
  CHECK(co_compose(u, MultiRelation(empty_relation(u, X, Y.pow())), unit(u, Y)).rel().empty());
  const Universe uy = Universe::declare({{"Y", 2}});
  const auto any = mr(uy, "{(a,{a}),(b,∅)}", Y, Y);
  CHECK(co_compose(uy, inner_unit_union(uy, Y, Y), any) == inner_unit_intersection(uy, Y, Y));
  CHECK(co_compose(uy, unit(uy, Y), any) == any);
}

TEST_CASE("special constants") {
  const Universe u = xy(2, 2);
  const auto eps = membership(u, Y);
  CHECK(eps == MultiRelation(parse_relation(u, "{(a,{a}),(a,{a,b}),(b,{b}),(b,{a,b})}", Y, Y.pow())));
  const Relation omega = special_constant(SpecialKind::Omega, u, Y, Y);
  CHECK(omega == right_residual(eps.rel(), eps.rel()));
  CHECK(special_constant(SpecialKind::CompRel, u, Y, Y) == syq(eps.rel(), complement(eps.rel())));
  const auto one = unit(u, Y);
  CHECK(inner_unit_union(u, Y, Y) == inner_intersection(one, inner_complement(one)));
  CHECK(atoms(u, X, Y) == MultiRelation(compose(universal_relation(u, X, Y), one.rel())));
  CHECK(co_atoms(u, X, Y) == inner_complement(atoms(u, X, Y)));
  CHECK(up(one) == eps);
  CHECK(relation_lift(u, identity_relation(u, Y)) == identity_relation(u, Y.pow()));
  CHECK_THROWS_AS(MultiRelation(identity_relation(u, X)), Error);
}

TEST_CASE("union-closure by syq agrees with the direct test") {
  for (std::size_t x : {1, 2}) {
    const Universe u = xy(x, 2);
    for (const auto& r : all_multi(u, X, Y)) {
      const bool direct = is_union_closed(r);
      CHECK(union_closed_by_syq(u, r) == direct);
      CHECK(direct == le(inner_union(r, r), r));
      CHECK(is_intersection_closed(r) == le(inner_intersection(r, r), r));
    }
  }
}

TEST_CASE("Parikh composition") {
  const Universe u = xy(2, 2);
  const auto lu = inner_unit_union(u, X, X);
  CHECK_THROWS_AS(parikh_compose(u, lu, lu), Error);
  try {
    parikh_compose(u, lu, lu);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUpClosed);
  }
  Gen g(4);
  for (int i = 0; i < 500; ++i) {
    const auto r = up(g.multi(u, X, Y)), s = up(g.multi(u, Y, Y));
    const auto p = parikh_compose(u, r, s);
    CHECK(p == up(peleg_compose(u, r, s)));
    CHECK(closed_check(ClosureKind::Up, p));
  }
}
