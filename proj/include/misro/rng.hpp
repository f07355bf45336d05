#pragma once

#include <cstdint>

namespace misro {

// splitmix64: the de-facto standard 64-bit stream generator. Pinned by
// algorithm (not by library) so that every implementation of the instance
// generator produces bit-identical streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return scramble(state_ += kGamma); }

  // Uniform draw from the inclusive range [lo, hi] by modulo reduction of one
  // 64-bit output (bias < 2^-57 for spans up to 100; determinism matters more
  // here than the last ulp of uniformity).
  int next_in(int lo, int hi) {
    return lo + static_cast<int>(next() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Seed derivation: h' = scramble(h + gamma) ^ v, folded left to right.
  static constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return scramble(h + kGamma) ^ v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace misro
