#pragma once

#include <cstdint>
#include <vector>

#include "fgb/boundary.hpp"
#include "fgb/mobius.hpp"
#include "fgb/scalar.hpp"
#include "fgb/words.hpp"

namespace fgb {

// Visual metric d(xi, omega) = q^{-(xi, omega)} (0 for equal points). This is
// the metric in which the boundary is Ahlfors 1-regular and the group acts by
// Mobius maps.
ExactScalar visual_distance(const Rank& rank, const BoundaryPoint& xi, const BoundaryPoint& omega);

// A finite boundary sample carrying the exact visual metric and the action of
// chosen group elements as partial injections (a finite subset of the
// boundary is never closed under a free-group element, so images landing
// outside the sample leave the map undefined there).
struct BoundarySample {
  Rank rank;
  std::vector<BoundaryPoint> points;  // canonical, sorted, distinct
  MetricSpace<ExactScalar> space;     // indexed like `points`
  std::vector<ReducedWord> elements;
  std::vector<PointMap> maps;         // maps[k] = action of elements[k]
  std::size_t seed_count;             // number of distinct seed points
};

// The 2n fixed points s^inf followed by random eventually periodic points,
// distinct, until `count` points (at least 2n) are present. The letter fixed
// points pin the sample's diameter at 1 and guarantee well-spread points, so
// the derivative bounds stay meaningful on finite data.
std::vector<BoundaryPoint> default_seed_points(const Rank& rank, std::size_t count,
                                               std::uint64_t seed);

// Seeds plus one round of images under the elements (so every seed is inside
// every map's domain), metric matrix, and one PointMap per element. Throws
// std::length_error when the sample would exceed `cap` points.
BoundarySample build_boundary_sample(Rank rank, std::vector<BoundaryPoint> seeds,
                                     std::vector<ReducedWord> elements, std::size_t cap = 10000);

}  // namespace fgb
