#pragma once

// SplitMix64: a tiny splittable generator. Stream k of seed s is independent
// of how many other streams were drawn, which keeps sampled searches
// reproducible under any worker partition.

#include <cstdint>

namespace multirel {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// The k-th child stream.
  constexpr SplitMix64 split(std::uint64_t k) const { return SplitMix64(mix(state_ ^ mix(k + 0x632be59bd9b4e019ULL))); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace multirel
