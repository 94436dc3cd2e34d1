#include <doctest.h>

#include "multirel/finsets.hpp"
#include "support.hpp"

using namespace multirel;
using tsupport::X;

TEST_CASE("subset algebra satisfies the boolean algebra axioms") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Universe u = Universe::declare({{"X", n}});
    // Both a base set and its powerset, as long as the powerset has at most 4 elements.
    for (const ObjType& t : {X, X.pow()}) {
      const std::size_t card = u.cardinality(t);
      if (card > 4) continue;
      const std::size_t subsets = std::size_t{1} << card;
      auto S = [&](std::size_t m) { return Subset{t, Mask::from_u64(m)}; };
      auto cup = [&](const Subset& a, const Subset& b) { return subset_algebra(SubsetOp::Union, u, a, b); };
      auto cap = [&](const Subset& a, const Subset& b) { return subset_algebra(SubsetOp::Intersection, u, a, b); };
      auto neg = [&](const Subset& a) { return subset_algebra(SubsetOp::Complement, u, a); };
      const Subset bot = S(0), top = S(subsets - 1);
      for (std::size_t i = 0; i < subsets; ++i) {
        const Subset a = S(i);
        CHECK(cup(a, neg(a)) == top);
        CHECK(cap(a, neg(a)) == bot);
        CHECK(neg(neg(a)) == a);
        CHECK(cup(a, bot) == a);
        CHECK(cap(a, top) == a);
        for (std::size_t j = 0; j < subsets; ++j) {
          const Subset b = S(j);
          CHECK(cup(a, b) == cup(b, a));
          CHECK(cap(a, b) == cap(b, a));
          CHECK(cup(a, cap(a, b)) == a);
          CHECK(cap(a, cup(a, b)) == a);
          CHECK(neg(cup(a, b)) == cap(neg(a), neg(b)));
          for (std::size_t k = 0; k < subsets; ++k) {
            const Subset c = S(k);
            CHECK(cup(a, cup(b, c)) == cup(cup(a, b), c));
            CHECK(cap(a, cup(b, c)) == cup(cap(a, b), cap(a, c)));
          }
        }
      }
    }
  }
}

TEST_CASE("cardinalities and caps") {
  const Universe u = Universe::declare({{"X", 3}, {"Y", 2}});
  CHECK(u.cardinality(X) == 3);
  CHECK(u.cardinality(X.pow()) == 8);
  CHECK(u.cardinality(X.pow().pow()) == 256);
  CHECK_FALSE(u.try_cardinality(X.pow().pow().pow()).has_value());
  CHECK_THROWS_AS(u.cardinality(X.pow().pow().pow()), Error);
  CHECK(u.cardinality(ObjType::of("Y").pow().pow()) == 16);

  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind([] { Universe::declare({{"X", 5}}); }) == ErrorKind::CardinalityLimit);
  CHECK(kind([] { Universe::declare({{"X", 0}}); }) == ErrorKind::CardinalityLimit);
  CHECK(kind([] { Universe::declare({{"X", 2}}, UniverseLimits{4, 512}); }) == ErrorKind::CardinalityLimit);
  CHECK(kind([] { Universe::declare({{"X", 4}}, UniverseLimits{4, 8}); }) == ErrorKind::CardinalityLimit);
  CHECK(kind([] { Universe::declare({{"X", 1}, {"X", 2}}); }) == ErrorKind::InvalidArgument);
  CHECK(Universe::declare({{"X", 6}}, UniverseLimits{6, 64}).cardinality(X.pow()) == 64);
}

TEST_CASE("element names and enumeration order") {
  const Universe u = Universe::declare({{"X", 3}});
  CHECK(u.element_name(X, 0) == "a");
  CHECK(u.element_name(X, 2) == "c");
  CHECK(u.element_name(X.pow(), 0) == "∅");
  CHECK(u.element_name(X.pow(), 5) == "{a,c}");
  CHECK(u.element_name(X.pow().pow(), 0b110) == "{{a},{b}}");
  CHECK(u.element_name(X.pow().pow(), 1) == "{∅}");
  // Powerset elements are ordered by mask value, so ∅ comes first and the full set last.
  for (std::size_t i = 1; i < 8; ++i) CHECK(Mask::from_u64(i - 1) < Mask::from_u64(i));
  const Universe big = Universe::declare({{"N", 4}}, UniverseLimits{4, 256});
  CHECK(big.element_name(ObjType::of("N"), 3) == "d");
}

TEST_CASE("mask primitives") {
  Mask m;
  CHECK(m.none());
  m.set(3);
  m.set(130);
  CHECK(m.count() == 2);
  CHECK(m.first() == 3);
  CHECK(m.last() == 130);
  std::vector<std::size_t> seen;
  m.for_each([&](std::size_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<std::size_t>{3, 130});
  CHECK(Mask::full(70).count() == 70);
  CHECK(Mask::full(70).complement(70).none());
  CHECK(Mask::single(5).subset_of(Mask::full(6)));
  CHECK_FALSE(Mask::single(6).subset_of(Mask::full(6)));
}

TEST_CASE("row operations match a direct computation") {
  // Oracle: sets of subsets of a 3-element set, as explicit vectors.
  const std::size_t n = 3, subsets = 8;
  tsupport::Gen g(7);
  for (int trial = 0; trial < 200; ++trial) {
    Mask a, b;
    for (std::size_t s = 0; s < subsets; ++s) {
      if (g.engine()() & 1U) a.set(s);
      if (g.engine()() & 1U) b.set(s);
    }
    Mask uprod, iprod, comp, up, down;
    std::size_t flat = 0;
    for (std::size_t x = 0; x < subsets; ++x) {
      if (!a.test(x)) continue;
      flat |= x;
      comp.set(~x & 7U);
      for (std::size_t y = 0; y < subsets; ++y) {
        if ((x & ~y) == 0) up.set(y);
        if ((y & ~x) == 0) down.set(y);
        if (b.test(y)) {
          uprod.set(x | y);
          iprod.set(x & y);
        }
      }
    }
    CHECK(rows::union_product(a, b) == uprod);
    CHECK(rows::intersection_product(a, b) == iprod);
    CHECK(rows::complement_each(a, n) == comp);
    CHECK(rows::up_close(a, n) == up);
    CHECK(rows::down_close(a, n) == down);
    CHECK(rows::big_union(a) == flat);
  }
}
