#include <doctest.h>

#include "multirel/io.hpp"
#include "multirel/relation.hpp"
#include "support.hpp"

using namespace multirel;
using namespace tsupport;

namespace {

// Definitional residuals and symmetric quotient, pair by pair.
Relation naive_left_residual(const Relation& t, const Relation& s) {
  Relation r(t.src(), s.src(), t.src_size(), s.src_size());
  for (std::size_t x = 0; x < t.src_size(); ++x) {
    for (std::size_t y = 0; y < s.src_size(); ++y) {
      bool ok = true;
      for (std::size_t z = 0; z < s.tgt_size(); ++z) ok = ok && (!s.contains(y, z) || t.contains(x, z));
      if (ok) r.insert(x, y);
    }
  }
  return r;
}

Relation naive_syq(const Relation& t, const Relation& s) {
  Relation r(t.tgt(), s.tgt(), t.tgt_size(), s.tgt_size());
  for (std::size_t y = 0; y < t.tgt_size(); ++y) {
    for (std::size_t z = 0; z < s.tgt_size(); ++z) {
      bool ok = true;
      for (std::size_t x = 0; x < t.src_size(); ++x) ok = ok && (t.contains(x, y) == s.contains(x, z));
      if (ok) r.insert(y, z);
    }
  }
  return r;
}

}  // namespace

TEST_CASE("residuals and syq agree with their definitions") {
  const Universe u = xyz(2, 2, 2);
  for (const auto& t : all_relations(u, X, Z)) {
    for (const auto& s : all_relations(u, Y, Z)) {
      CHECK(left_residual(t, s) == naive_left_residual(t, s));
    }
  }
  for (const auto& t : all_relations(u, Z, X)) {
    for (const auto& s : all_relations(u, Z, Y)) {
      CHECK(syq(t, s) == naive_syq(t, s));
      CHECK(right_residual(t, s) == converse(naive_left_residual(converse(s), converse(t))));
    }
  }
}

TEST_CASE("residual adjunction") {
  // RS ⊆ T ⇔ R ⊆ T/S ⇔ S ⊆ R\T, over all R : X<->Y, S : Y<->Z, T : X<->Z.
  for (std::size_t n : {1, 2}) {
    const Universe u = xyz(n, 2, n);
    const auto rs = all_relations(u, X, Y), ss = all_relations(u, Y, Z), ts = all_relations(u, X, Z);
    for (const auto& r : rs) {
      for (const auto& s : ss) {
        const Relation rs_ = compose(r, s);
        for (const auto& t : ts) {
          const bool a = rs_.subset_of(t);
          CHECK(a == r.subset_of(left_residual(t, s)));
          CHECK(a == s.subset_of(right_residual(r, t)));
        }
      }
    }
  }
}

TEST_CASE("domain laws") {
  const Universe u = xy(2, 2);
  const Relation id = identity_relation(u, X);
  const Relation uni = universal_relation(u, Y, X);
  for (const auto& r : all_relations(u, X, Y)) {
    CHECK(domain(r) == intersect(id, compose(r, converse(r))));
    CHECK(domain(r) == intersect(id, compose(r, uni)));
    CHECK(is_test(domain(r)));
  }
}

TEST_CASE("univalent modular law") {
  // PQ ∩ S = (P ∩ SQ⌣)Q for univalent Q.
  const Universe u = xyz(2, 2, 2);
  for (const auto& q : all_relations(u, Y, Z)) {
    if (!is_univalent(q)) continue;
    for (const auto& p : all_relations(u, X, Y)) {
      for (const auto& s : all_relations(u, X, Z)) {
        CHECK(intersect(compose(p, q), s) == compose(intersect(p, compose(s, converse(q))), q));
      }
    }
  }
}

TEST_CASE("every relation is the union of its d-subfunctions") {
  const Universe u = xy(2, 2);
  for (const auto& r : all_relations(u, X, Y)) {
    Relation acc = empty_relation(u, X, Y);
    const auto subs = d_subfunctions(r);
    for (const auto& s : subs) {
      CHECK(is_univalent(s));
      CHECK(domain(s) == domain(r));
      CHECK(s.subset_of(r));
      acc = unite(acc, s);
    }
    CHECK(acc == r);
    CHECK(std::is_sorted(subs.begin(), subs.end()));
  }
  // Product of the row sizes: rows {a,b} and {a,b} give 4.
  const Universe u3 = xy(3, 2);
  CHECK(d_subfunctions(parse_relation(u3, "{(a,a),(a,b),(b,a),(b,b)}", X, Y)).size() == 4);
  CHECK_THROWS_AS(d_subfunctions(universal_relation(u3, X, Y), 7), Error);
}

TEST_CASE("composition preserves unions in both arguments") {
  const Universe u = xyz(2, 2, 2);
  const auto rs = all_relations(u, X, Y), ss = all_relations(u, Y, Z);
  // Families of size ≤ 2.
  for (const auto& a : rs) {
    CHECK(compose(a, empty_relation(u, Y, Z)).empty());
    for (const auto& b : rs) {
      for (const auto& s : ss) CHECK(compose(unite(a, b), s) == unite(compose(a, s), compose(b, s)));
    }
  }
  for (const auto& r : rs) {
    for (const auto& a : ss) {
      for (const auto& b : ss) CHECK(compose(r, unite(a, b)) == unite(compose(r, a), compose(r, b)));
    }
  }
  Gen g(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + g.engine()() % 6;
    Relation big = empty_relation(u, X, Y), parts = empty_relation(u, X, Z);
    const Relation s = g.rel(u, Y, Z);
    for (std::size_t i = 0; i < n; ++i) {
      const Relation r = g.rel(u, X, Y, 0.3);
      big = unite(big, r);
      parts = unite(parts, compose(r, s));
    }
    CHECK(compose(big, s) == parts);
  }
}

TEST_CASE("relation properties and typing") {
  const Universe u = xy(2, 2);
  const Relation f = parse_relation(u, "{(a,a),(b,a)}", X, Y);
  CHECK(is_deterministic(f));
  CHECK(is_total(f));
  CHECK_FALSE(is_test(f));
  const Relation p = parse_relation(u, "{(a,b)}", X, Y);
  CHECK(is_univalent(p));
  CHECK_FALSE(is_total(p));
  CHECK(is_test(identity_relation(u, X)));
  CHECK(converse(converse(f)) == f);
  CHECK_THROWS_AS(unite(f, identity_relation(u, X)), Error);
  CHECK_THROWS_AS(compose(f, f), Error);
  const auto [restricted, image] = restrict_image(f, Subset{X, Mask::single(1)});
  CHECK(restricted == parse_relation(u, "{(b,a)}", X, Y));
  CHECK(image.mask == Mask::single(0));
}

TEST_CASE("canonical encoding") {
  const Universe u = xy(2, 2);
  const Relation r = parse_relation(u, "{(a,b),(b,a)}", X, Y);
  CHECK(r.code() == 0b0110);
  CHECK(Relation::from_code(X, Y, 2, 2, 0b0110) == r);
  CHECK(r.pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  const auto all = all_relations(u, X, Y);
  CHECK(std::is_sorted(all.begin(), all.end()));
}
