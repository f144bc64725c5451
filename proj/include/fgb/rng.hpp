#pragma once

#include <cstdint>

#include "fgb/boundary.hpp"
#include "fgb/scalar.hpp"
#include "fgb/words.hpp"

namespace fgb {

// SplitMix64. Tiny, portable, and stable: every randomized path in the
// library takes an explicit seed so that identical configurations reproduce
// byte-identical output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish in [0, n); plain reduction (the tiny modulo bias is
  // irrelevant for property sampling and keeps the stream platform-stable).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Uniformly random reduced word of exactly the given length.
ReducedWord random_reduced_word(SplitMix64& rng, const Rank& rank, std::size_t length);

// Random eventually periodic boundary point: preperiod length in
// [0, pre_max], period length in [1, per_max], junctions repaired so the data
// spells a reduced infinite word. The constructor then canonicalizes.
BoundaryPoint random_boundary_point(SplitMix64& rng, const Rank& rank, std::size_t pre_max,
                                    std::size_t per_max);

// num/den with num in [-max_num, max_num] and den in [1, max_den].
ExactScalar random_rational(SplitMix64& rng, long max_num, long max_den);

}  // namespace fgb
