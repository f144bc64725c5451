#include "fgb/sample.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fgb/rng.hpp"

namespace fgb {

ExactScalar visual_distance(const Rank& rank, const BoundaryPoint& xi, const BoundaryPoint& omega) {
  std::optional<long> gp = gromov_product(xi, omega);
  if (!gp) return ExactScalar(0);
  return q_pow(rank.q(), -*gp);
}

std::vector<BoundaryPoint> default_seed_points(const Rank& rank, std::size_t count,
                                               std::uint64_t seed) {
  std::vector<BoundaryPoint> out;
  for (int s = 0; s < rank.alphabet(); ++s) out.push_back(BoundaryPoint::letter_power(static_cast<Letter>(s)));
  SplitMix64 rng(seed);
  while (out.size() < count) {
    BoundaryPoint xi = random_boundary_point(rng, rank, 3, 4);
    if (std::find(out.begin(), out.end(), xi) == out.end()) out.push_back(xi);
  }
  return out;
}

BoundarySample build_boundary_sample(Rank rank, std::vector<BoundaryPoint> seeds,
                                     std::vector<ReducedWord> elements, std::size_t cap) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  if (seeds.empty()) throw std::invalid_argument("build_boundary_sample: no seed points");

  std::vector<BoundaryPoint> points = seeds;
  for (const auto& g : elements)
    for (const auto& xi : seeds) points.push_back(act(g, xi));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() > cap)
    throw std::length_error("build_boundary_sample: " + std::to_string(points.size()) +
                            " points exceed the cap of " + std::to_string(cap));

  std::size_t n = points.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& xi : points) labels.push_back(format_boundary_point(xi));
  std::vector<ExactScalar> dist(n * n, ExactScalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ExactScalar d = visual_distance(rank, points[i], points[j]);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  MetricSpace<ExactScalar> space(std::move(labels), std::move(dist));

  std::vector<PointMap> maps;
  maps.reserve(elements.size());
  for (const auto& g : elements) {
    std::vector<std::int64_t> images(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      BoundaryPoint img = act(g, points[i]);
      auto it = std::lower_bound(points.begin(), points.end(), img);
      if (it != points.end() && *it == img)
        images[i] = static_cast<std::int64_t>(it - points.begin());
    }
    maps.emplace_back(std::move(images));
  }

  return BoundarySample{rank, std::move(points), std::move(space), std::move(elements),
                        std::move(maps), seeds.size()};
}

}  // namespace fgb
