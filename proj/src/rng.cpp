#include "fgb/rng.hpp"

#include <stdexcept>

namespace fgb {

namespace {

// Uniform pick among letters != each of the (up to two) forbidden codes.
Letter pick_letter(SplitMix64& rng, const Rank& rank, int forbid1, int forbid2) {
  int choices = rank.alphabet() - (forbid1 >= 0 ? 1 : 0) -
                (forbid2 >= 0 && forbid2 != forbid1 ? 1 : 0);
  if (choices <= 0) throw std::logic_error("pick_letter: no admissible letter");
  long r = static_cast<long>(rng.below(static_cast<std::uint64_t>(choices)));
  for (int s = 0; s < rank.alphabet(); ++s) {
    if (s == forbid1 || s == forbid2) continue;
    if (r-- == 0) return static_cast<Letter>(s);
  }
  throw std::logic_error("pick_letter: unreachable");
}

}  // namespace

ReducedWord random_reduced_word(SplitMix64& rng, const Rank& rank, std::size_t length) {
  std::vector<Letter> letters;
  letters.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    int forbid = letters.empty() ? -1 : inverse_letter(letters.back());
    letters.push_back(pick_letter(rng, rank, forbid, -1));
  }
  return ReducedWord::from_reduced(std::move(letters));
}

BoundaryPoint random_boundary_point(SplitMix64& rng, const Rank& rank, std::size_t pre_max,
                                    std::size_t per_max) {
  std::size_t pre_len = rng.below(pre_max + 1);
  std::size_t per_len = 1 + rng.below(per_max);

  std::vector<Letter> pre;
  for (std::size_t i = 0; i < pre_len; ++i) {
    int forbid = pre.empty() ? -1 : inverse_letter(pre.back());
    pre.push_back(pick_letter(rng, rank, forbid, -1));
  }

  std::vector<Letter> per;
  for (std::size_t i = 0; i < per_len; ++i) {
    int forbid1 = per.empty() ? (pre.empty() ? -1 : inverse_letter(pre.back()))
                              : inverse_letter(per.back());
    // the last period letter must also keep the cyclic junction reduced
    int forbid2 = (i + 1 == per_len && per_len > 1) ? inverse_letter(per[0]) : -1;
    per.push_back(pick_letter(rng, rank, forbid1, forbid2));
  }

  return BoundaryPoint(ReducedWord::from_reduced(std::move(pre)),
                       ReducedWord::from_reduced(std::move(per)));
}

ExactScalar random_rational(SplitMix64& rng, long max_num, long max_den) {
  long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * max_num + 1))) - max_num;
  long den = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(max_den)));
  return ExactScalar(num, den);
}

}  // namespace fgb
