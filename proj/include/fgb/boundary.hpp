#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "fgb/words.hpp"

namespace fgb {

// An eventually periodic point of the boundary: the infinite reduced word
// pre . per . per . per ...
//
// Stored in canonical form — period primitive (not a proper power), preperiod
// shortest possible — which makes equality of boundary points structural
// equality of the pair. Canonicalization: first replace the period by its
// primitive root, then while the preperiod's last letter equals the period's
// last letter, pop it and rotate the period right. The result is unique, so
// no rotation tie-break is ever needed.
class BoundaryPoint {
 public:
  // Throws std::invalid_argument if the period is empty, not cyclically
  // reduced, or the preperiod/period junction is not reduced (i.e. the data
  // does not spell an infinite reduced word).
  BoundaryPoint(ReducedWord preperiod, ReducedWord period);

  const ReducedWord& preperiod() const { return pre_; }
  const ReducedWord& period() const { return per_; }

  // Letter at position i of the infinite word.
  Letter at(std::size_t i) const;
  // The point s^inf (attracting fixed point of the letter s).
  static BoundaryPoint letter_power(Letter s);
  // Drops the first k letters.
  BoundaryPoint shifted(std::size_t k) const;

  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) = default;
  // Arbitrary but deterministic total order (canonical pair, lexicographic);
  // used to keep sample enumerations stable.
  friend std::strong_ordering operator<=>(const BoundaryPoint& a, const BoundaryPoint& b) = default;

 private:
  ReducedWord pre_, per_;
};

// Left action of the group on the boundary: g . (infinite word).
BoundaryPoint act(const ReducedWord& g, const BoundaryPoint& xi);

// Gromov product (g, xi): length of the common prefix of the word g and the
// infinite word xi. Always finite.
long gromov_product(const ReducedWord& g, const BoundaryPoint& xi);
inline long gromov_product(const BoundaryPoint& xi, const ReducedWord& g) {
  return gromov_product(g, xi);
}

// Gromov product of two boundary points; nullopt encodes +infinity (equal
// points). For distinct canonical points the first disagreement occurs within
// max(|pre|) + lcm(|per|) letters; failing to find one there would mean the
// canonical forms are broken, which throws std::logic_error.
std::optional<long> gromov_product(const BoundaryPoint& xi, const BoundaryPoint& omega);

// "pre|(per)^inf", with the bar and preperiod omitted when the preperiod is
// empty. parse accepts both spellings either way.
std::string format_boundary_point(const BoundaryPoint& xi);
BoundaryPoint parse_boundary_point(const Rank& rank, std::string_view s);

}  // namespace fgb
