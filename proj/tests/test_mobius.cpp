#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fgb/measure.hpp"
#include "fgb/mobius.hpp"
#include "fgb/sample.hpp"

using namespace fgb;

namespace {
const Rank r2(2);

MetricSpace<ExactScalar> equilateral(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<ExactScalar> d(n * n, ExactScalar(1));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    d[i * n + i] = ExactScalar(0);
  }
  return MetricSpace<ExactScalar>(std::move(labels), std::move(d));
}

// Generic 6-point space with pairwise-distinct distances in [1, 2]: no
// non-identity map preserves cross-ratios here.
MetricSpace<ExactScalar> generic6() {
  std::size_t n = 6;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  std::vector<ExactScalar> d(n * n, ExactScalar(0));
  long c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = ExactScalar(1) + ExactScalar(++c, 100);
    }
  return MetricSpace<ExactScalar>(std::move(labels), std::move(d));
}
}  // namespace

TEST_CASE("metric space validation") {
  std::vector<std::string> ab{"a", "b"};
  CHECK_THROWS_AS(MetricSpace<ExactScalar>(ab, {ExactScalar(0), ExactScalar(1)}),
                  std::invalid_argument);  // shape
  CHECK_THROWS_AS(MetricSpace<ExactScalar>(
                      ab, {ExactScalar(1), ExactScalar(1), ExactScalar(1), ExactScalar(0)}),
                  std::invalid_argument);  // nonzero diagonal
  CHECK_THROWS_AS(MetricSpace<ExactScalar>(
                      ab, {ExactScalar(0), ExactScalar(1), ExactScalar(2), ExactScalar(0)}),
                  std::invalid_argument);  // asymmetric
  std::vector<std::string> abc{"a", "b", "c"};
  std::vector<ExactScalar> tri{ExactScalar(0), ExactScalar(1), ExactScalar(5),
                               ExactScalar(1), ExactScalar(0), ExactScalar(1),
                               ExactScalar(5), ExactScalar(1), ExactScalar(0)};
  CHECK_THROWS_AS(MetricSpace<ExactScalar>(abc, tri), std::invalid_argument);  // triangle
  MetricSpace<ExactScalar> ok = equilateral(4);
  CHECK(ok.size() == 4);
  CHECK(ok.d(0, 1) == ExactScalar(1));
  CHECK(ok.diameter() == ExactScalar(1));
  CHECK(ok.label(2) == "p2");
}

TEST_CASE("point maps") {
  PointMap id = PointMap::identity(5);
  CHECK(id.total());
  CHECK(id.domain().size() == 5);
  PointMap t = PointMap::transposition(5, 1, 3);
  CHECK(t.at(1) == 3);
  CHECK(t.at(3) == 1);
  CHECK(t.at(0) == 0);
  PointMap partial(std::vector<std::int64_t>{2, -1, 0});
  CHECK_FALSE(partial.total());
  CHECK(partial.domain() == std::vector<std::size_t>{0, 2});
  CHECK_FALSE(partial.defined(1));
  PointMap inv = partial.inverted();
  CHECK(inv.at(2) == 0);
  CHECK(inv.at(0) == 2);
  CHECK_FALSE(inv.defined(1));
  // compose: (f . g)(x) = f(g(x)), undefined where the chain breaks
  PointMap fg = compose(partial, partial);
  CHECK(fg.at(0) == 0);  // 0 -> 2 -> 0
  CHECK(fg.at(2) == 2);
  CHECK_FALSE(fg.defined(1));
  CHECK_THROWS_AS(PointMap(std::vector<std::int64_t>{5}), std::invalid_argument);  // range
  CHECK_THROWS_AS(PointMap(std::vector<std::int64_t>{0, 0}), std::invalid_argument);  // not inj
}

TEST_CASE("cross-ratio basics") {
  MetricSpace<ExactScalar> x = generic6();
  ExactScalar cr = cross_ratio(x, 0, 1, 2, 3);
  CHECK(cr == (x.d(0, 2) * x.d(1, 3)) / (x.d(0, 3) * x.d(1, 2)));
  // swapping z3 and z4 inverts the ratio
  CHECK(cross_ratio(x, 0, 1, 3, 2) == ExactScalar(1) / cr);
  // equilateral: every cross-ratio is 1
  MetricSpace<ExactScalar> e = equilateral(5);
  CHECK(cross_ratio(e, 0, 1, 2, 3) == ExactScalar(1));
  CHECK_THROWS_AS(cross_ratio(x, 0, 0, 1, 2), std::invalid_argument);
}

TEST_CASE("is_mobius verdicts") {
  MetricSpace<ExactScalar> x = generic6();
  auto good = is_mobius<ExactScalar>(x, PointMap::identity(6), ExactScalar(0));
  CHECK(good.mobius);
  CHECK(good.max_deviation == ExactScalar(0));
  CHECK(good.quadruples_tested > 0);
  auto bad = is_mobius<ExactScalar>(x, PointMap::transposition(6, 0, 1), ExactScalar(0));
  CHECK_FALSE(bad.mobius);
  CHECK(bad.max_deviation > ExactScalar(0));
  // every permutation of an equilateral space is Mobius
  auto flat = is_mobius<ExactScalar>(equilateral(6), PointMap::transposition(6, 0, 1),
                                     ExactScalar(0));
  CHECK(flat.mobius);
  CHECK_THROWS_AS(is_mobius<ExactScalar>(x, PointMap(std::vector<std::int64_t>{0, 1, 2, -1, -1, -1}),
                                         ExactScalar(0)),
                  std::invalid_argument);  // domain below 4 points
  // approximate mode tolerates small deviations
  MetricSpace<double> xd({"a", "b", "c", "d"},
                         {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0});
  auto ad = is_mobius<double>(xd, PointMap::transposition(4, 0, 1), 1e-9);
  CHECK(ad.mobius);
}

TEST_CASE("derivatives on boundary samples") {
  // sample the boundary: letter fixed points plus two deeper points
  std::vector<BoundaryPoint> seeds;
  for (Letter s = 0; s < 4; ++s) seeds.push_back(BoundaryPoint::letter_power(s));
  seeds.push_back(parse_boundary_point(r2, "a1|(a2)^inf"));
  seeds.push_back(parse_boundary_point(r2, "a2.a1|(A2)^inf"));
  std::vector<ReducedWord> elements{parse_word(r2, "a1"), parse_word(r2, "a1.a2"),
                                    parse_word(r2, "A2.a1")};
  BoundarySample sample = build_boundary_sample(r2, seeds, elements);
  CHECK(sample.points.size() >= seeds.size());
  CHECK(sample.space.size() == sample.points.size());

  for (std::size_t k = 0; k < elements.size(); ++k) {
    const PointMap& map = sample.maps[k];
    // the action is Mobius with zero deviation
    auto verdict = is_mobius<ExactScalar>(sample.space, map, ExactScalar(0));
    CHECK(verdict.mobius);
    // metric derivative equals the tree formula q^{2(g^{-1}, xi) - |g|}
    auto deriv = derivative_table(sample.space, map);
    for (std::size_t p : map.domain())
      CHECK(deriv[p] == derivative_on_tree(r2, elements[k], sample.points[p]));
    // geometric mean value identity, exactly
    auto mv = check_mean_value(sample.space, map, deriv);
    CHECK(mv.max_residual == ExactScalar(0));
  }

  // chain rule on a sample closed under g, h and gh
  ReducedWord g = parse_word(r2, "a1"), h = parse_word(r2, "a2");
  BoundarySample s2 = build_boundary_sample(r2, seeds, {g, h, g * h});
  auto rep = check_chain_rule(s2.space, s2.maps[0], s2.maps[1]);
  CHECK(rep.max_residual == ExactScalar(0));
}

TEST_CASE("mean value fails for non-mobius data") {
  MetricSpace<ExactScalar> x = generic6();
  PointMap t = PointMap::transposition(6, 0, 1);
  auto deriv = derivative_table(x, t);
  deriv[t.domain()[0]] *= ExactScalar(2);
  auto mv = check_mean_value(x, t, deriv);
  CHECK(mv.max_residual > ExactScalar(0));
}

TEST_CASE("kappa covering constant") {
  CHECK(kappa(equilateral(4)) == ExactScalar(1));  // two centers never cover 4 points
  CHECK(kappa(equilateral(3)) == ExactScalar(1));
  MetricSpace<ExactScalar> x = generic6();
  ExactScalar k = kappa(x);
  CHECK(ExactScalar(0) < k);
  CHECK(k <= x.diameter());
  CHECK_THROWS_AS(kappa(equilateral(2)), std::invalid_argument);
}

TEST_CASE("inequality certificates") {
  // identity maps: derivative 1, all bounds hold trivially
  MetricSpace<ExactScalar> x = generic6();
  CHECK(lipschitz_bound_check(x, PointMap::identity(6)).holds);
  CHECK(cocycle_bound_check(x, PointMap::identity(6)).holds);
  auto alpha = alpha_bound_check(x, PointMap::identity(6));
  CHECK(alpha.applicable);  // zero displacement
  CHECK(alpha.holds);
  CHECK(alpha.displacement == ExactScalar(0));
  // far-moving maps are out of the alpha regime
  auto far = alpha_bound_check(equilateral(5), PointMap::transposition(5, 0, 1));
  CHECK_FALSE(far.applicable);
  CHECK(far.displacement == ExactScalar(1));
  CHECK(far.kappa_value == ExactScalar(1));
}

TEST_CASE("exact sqrt comparisons") {
  using fgb::detail::sqrt_leq;
  // sqrt(4) <= sqrt(1) + 1 fails; sqrt(4) <= sqrt(1) + 1.5 holds (2 <= 2.5)
  CHECK_FALSE(sqrt_leq(ExactScalar(4), ExactScalar(1), ExactScalar(1, 2)));
  CHECK(sqrt_leq(ExactScalar(4), ExactScalar(1), ExactScalar(3, 2)));
  CHECK(sqrt_leq(ExactScalar(4), ExactScalar(1), ExactScalar(1)));  // equality
  CHECK(sqrt_leq(ExactScalar(1), ExactScalar(4), ExactScalar(0)));
  CHECK(sqrt_leq(ExactScalar(2), ExactScalar(2), ExactScalar(0)));
  // irrational comparisons decided by radical clearing: sqrt(2) - 1 = 0.41421...
  CHECK_FALSE(sqrt_leq(ExactScalar(2), ExactScalar(1), ExactScalar(2, 5)));
  CHECK(sqrt_leq(ExactScalar(2), ExactScalar(1), ExactScalar(42, 100)));
  CHECK(sqrt_leq(2.0, 1.0, 0.42));  // double instantiation
}

TEST_CASE("visual distance matches gromov products") {
  BoundaryPoint a = BoundaryPoint::letter_power(0);
  BoundaryPoint deep = parse_boundary_point(r2, "a1.a2|(a1)^inf");
  CHECK(visual_distance(r2, a, a) == ExactScalar(0));
  CHECK(visual_distance(r2, a, deep) == ExactScalar(1, 3));   // product 1
  CHECK(visual_distance(r2, a, BoundaryPoint::letter_power(2)) == ExactScalar(1));
}
