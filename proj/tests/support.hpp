#pragma once

// Shared fixtures: small universes, exhaustive enumeration and hand-rolled
// random generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "multirel/multirel.hpp"

namespace tsupport {

using namespace multirel;

inline const ObjType X = ObjType::of("X");
inline const ObjType Y = ObjType::of("Y");
inline const ObjType Z = ObjType::of("Z");

inline Universe xy(std::size_t x, std::size_t y) { return Universe::declare({{"X", x}, {"Y", y}}); }
inline Universe xyz(std::size_t x, std::size_t y, std::size_t z) {
  return Universe::declare({{"X", x}, {"Y", y}, {"Z", z}});
}

inline std::vector<Relation> all_relations(const Universe& u, const ObjType& s, const ObjType& t) {
  const std::size_t ns = u.cardinality(s), nt = u.cardinality(t);
  std::vector<Relation> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << (ns * nt)); ++c) out.push_back(Relation::from_code(s, t, ns, nt, c));
  return out;
}

inline std::vector<MultiRelation> all_multi(const Universe& u, const ObjType& s, const ObjType& inner) {
  std::vector<MultiRelation> out;
  for (auto& r : all_relations(u, s, inner.pow())) out.emplace_back(std::move(r));
  return out;
}

/// Random relations with a per-pair density; deterministic per seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Relation rel(const Universe& u, const ObjType& s, const ObjType& t, double density = 0.5) {
    Relation r = Relation::of_type(u, s, t);
    std::bernoulli_distribution coin(density);
    for (std::size_t i = 0; i < r.src_size(); ++i) {
      for (std::size_t j = 0; j < r.tgt_size(); ++j) {
        if (coin(rng_)) r.insert(i, j);
      }
    }
    return r;
  }

  MultiRelation multi(const Universe& u, const ObjType& s, const ObjType& inner, double density = -1) {
    // Mixed densities reach both sparse and near-universal corners.
    if (density < 0) density = std::uniform_real_distribution<double>(0.05, 0.95)(rng_);
    return MultiRelation(rel(u, s, inner.pow(), density));
  }

  std::vector<MultiRelation> family(const Universe& u, const ObjType& s, const ObjType& inner, std::size_t lo,
                                    std::size_t hi) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    std::vector<MultiRelation> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(multi(u, s, inner));
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tsupport
