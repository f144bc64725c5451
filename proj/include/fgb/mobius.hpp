#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "fgb/rng.hpp"
#include "fgb/scalar.hpp"

namespace fgb {

// Möbius calculus on finite metric spaces. Everything here is templated over
// the scalar: ExactScalar gives exact verdicts (tolerance 0 is meaningful),
// double gives the approximate mode for ingested numeric data.

namespace detail {

template <typename S>
constexpr bool is_exact = std::is_same_v<S, ExactScalar>;

// Comparison slack for the approximate mode; exact mode ignores it.
inline constexpr double kApproxSlack = 1e-12;

template <typename S>
bool leq_slack(const S& a, const S& b) {
  if constexpr (is_exact<S>)
    return a <= b;
  else
    return a <= b + kApproxSlack;
}

template <typename S>
S abs_value(const S& a) {
  if constexpr (is_exact<S>)
    return a.abs();
  else
    return std::fabs(a);
}

// Does sqrt(a) <= sqrt(b) + c hold? Exactly decided for rationals by clearing
// square roots (case analysis keeps every intermediate rational).
inline bool sqrt_leq(const ExactScalar& a, const ExactScalar& b, const ExactScalar& c) {
  if (a.sign() < 0 || b.sign() < 0) throw std::domain_error("sqrt_leq: negative radicand");
  if (c.sign() >= 0) {
    ExactScalar x = a - b - c * c;
    if (x.sign() <= 0) return true;       // a <= b + c^2 already implies it
    return x * x <= ExactScalar(4) * c * c * b;
  }
  ExactScalar y = b - a - c * c;          // need sqrt(a) + |c| <= sqrt(b)
  if (y.sign() < 0) return false;
  return ExactScalar(4) * c * c * a <= y * y;
}

inline bool sqrt_leq(double a, double b, double c) {
  return std::sqrt(a) <= std::sqrt(b) + c + kApproxSlack;
}

}  // namespace detail

// A finite metric space with labeled points. Construction validates the
// metric axioms: zero diagonal, symmetry, positivity off the diagonal, and
// the triangle inequality (exhaustively up to 150 points, by 10^6 seeded
// random triples above that — exact n^3 on large exact matrices would
// dominate every time budget). `tolerance` loosens the checks in approximate
// mode and is ignored for ExactScalar.
template <typename S>
class MetricSpace {
 public:
  MetricSpace(std::vector<std::string> labels, std::vector<S> dist, double tolerance = 0.0)
      : labels_(std::move(labels)), d_(std::move(dist)), n_(labels_.size()) {
    if (n_ == 0) throw std::invalid_argument("MetricSpace: no points");
    if (d_.size() != n_ * n_) throw std::invalid_argument("MetricSpace: matrix shape mismatch");
    validate(tolerance);
  }

  std::size_t size() const { return n_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const S& d(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

  S diameter() const {
    S best = d(0, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (best < d(i, j)) best = d(i, j);
    return best;
  }

 private:
  void check_triangle(std::size_t i, std::size_t j, std::size_t k, double tol) const {
    bool ok;
    if constexpr (detail::is_exact<S>)
      ok = d(i, k) <= d(i, j) + d(j, k);
    else
      ok = d(i, k) <= d(i, j) + d(j, k) + tol;
    if (!ok)
      throw std::invalid_argument("MetricSpace: triangle inequality fails at (" + labels_[i] +
                                  ", " + labels_[j] + ", " + labels_[k] + ")");
  }

  void validate(double tol) {
    for (std::size_t i = 0; i < n_; ++i) {
      bool zero;
      if constexpr (detail::is_exact<S>)
        zero = d(i, i).is_zero();
      else
        zero = std::fabs(d(i, i)) <= tol;
      if (!zero) throw std::invalid_argument("MetricSpace: nonzero diagonal at " + labels_[i]);
      for (std::size_t j = i + 1; j < n_; ++j) {
        bool sym, pos;
        if constexpr (detail::is_exact<S>) {
          sym = d(i, j) == d(j, i);
          pos = d(i, j).sign() > 0;
        } else {
          sym = std::fabs(d(i, j) - d(j, i)) <= tol;
          pos = d(i, j) > 0.0;
        }
        if (!sym)
          throw std::invalid_argument("MetricSpace: asymmetric at (" + labels_[i] + ", " +
                                      labels_[j] + ")");
        if (!pos)
          throw std::invalid_argument("MetricSpace: non-positive distance at (" + labels_[i] +
                                      ", " + labels_[j] + ")");
      }
    }
    if (n_ <= 150) {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          for (std::size_t k = 0; k < n_; ++k) check_triangle(i, j, k, tol);
    } else {
      SplitMix64 rng(0x7472696164ULL);  // fixed seed: validation is part of construction
      for (int t = 0; t < 1000000; ++t)
        check_triangle(rng.below(n_), rng.below(n_), rng.below(n_), tol);
    }
  }

  std::vector<std::string> labels_;
  std::vector<S> d_;
  std::size_t n_;
};

// A partial injection of the point set into itself: images[i] is the index of
// the image of point i, or -1 where the map is undefined. Group elements
// acting on a finite boundary sample are exactly of this shape — a finite set
// is never honestly closed under a free-group element, so maps stay partial
// and every check quantifies over the domain.
class PointMap {
 public:
  explicit PointMap(std::vector<std::int64_t> images);

  static PointMap identity(std::size_t n);
  static PointMap transposition(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return images_.size(); }
  bool defined(std::size_t i) const { return images_[i] >= 0; }
  std::size_t at(std::size_t i) const;
  const std::vector<std::size_t>& domain() const { return domain_; }
  bool total() const { return domain_.size() == images_.size(); }
  const std::vector<std::int64_t>& raw() const { return images_; }

  PointMap inverted() const;
  // g after h; defined where both stages are.
  friend PointMap compose(const PointMap& g, const PointMap& h);

 private:
  std::vector<std::int64_t> images_;
  std::vector<std::size_t> domain_;
};

// Metric cross-ratio (z1, z2; z3, z4) = d13 d24 / (d14 d23); the four indices
// must be pairwise distinct.
template <typename S>
S cross_ratio(const MetricSpace<S>& x, std::size_t z1, std::size_t z2, std::size_t z3,
              std::size_t z4) {
  std::array<std::size_t, 4> z{z1, z2, z3, z4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (z[i] == z[j]) throw std::invalid_argument("cross_ratio: repeated point");
  return (x.d(z1, z3) * x.d(z2, z4)) / (x.d(z1, z4) * x.d(z2, z3));
}

template <typename S>
struct MobiusVerdict {
  bool mobius;
  S max_deviation;                  // max |CR(image)/CR - 1| over tested quadruples
  std::array<std::size_t, 4> worst{};
  std::size_t quadruples_tested = 0;
};

// Does the map preserve metric cross-ratios on its domain (up to tolerance)?
// All 4-subsets in their three pairing classes are tested when the domain has
// at most 40 points; otherwise 10^5 seeded random ordered quadruples.
template <typename S>
MobiusVerdict<S> is_mobius(const MetricSpace<S>& x, const PointMap& map, const S& tolerance,
                           std::uint64_t seed = 0x6d6f6269ULL) {
  const auto& dom = map.domain();
  if (dom.size() < 4)
    throw std::invalid_argument("is_mobius: needs at least 4 points in the map domain");
  MobiusVerdict<S> verdict{true, S(0), {}, 0};

  auto test = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
    S cr = cross_ratio(x, a, b, c, e);
    S cr_img = cross_ratio(x, map.at(a), map.at(b), map.at(c), map.at(e));
    S dev = detail::abs_value<S>(cr_img / cr - S(1));
    ++verdict.quadruples_tested;
    if (verdict.max_deviation < dev) {
      verdict.max_deviation = dev;
      verdict.worst = {a, b, c, e};
    }
  };

  if (dom.size() <= 40) {
    for (std::size_t i = 0; i < dom.size(); ++i)
      for (std::size_t j = i + 1; j < dom.size(); ++j)
        for (std::size_t k = j + 1; k < dom.size(); ++k)
          for (std::size_t l = k + 1; l < dom.size(); ++l) {
            // the three pairing classes of one 4-subset
            test(dom[i], dom[j], dom[k], dom[l]);
            test(dom[i], dom[k], dom[j], dom[l]);
            test(dom[i], dom[l], dom[j], dom[k]);
          }
  } else {
    SplitMix64 rng(seed);
    for (int t = 0; t < 100000; ++t) {
      std::size_t z[4];
      bool fresh;
      do {
        fresh = true;
        for (auto& v : z) v = dom[rng.below(dom.size())];
        for (int i = 0; i < 4 && fresh; ++i)
          for (int j = i + 1; j < 4; ++j) fresh = fresh && z[i] != z[j];
      } while (!fresh);
      test(z[0], z[1], z[2], z[3]);
    }
  }
  verdict.mobius = detail::leq_slack(verdict.max_deviation, tolerance);
  return verdict;
}

// |g'|(x) computed from two auxiliary points:
//   |g'|(x) = (d(gx,gu)/d(x,u)) (d(gx,gv)/d(x,v)) (d(u,v)/d(gu,gv)).
// For a Möbius map the value does not depend on the choice of (u, v).
template <typename S>
S metric_derivative(const MetricSpace<S>& x, const PointMap& map, std::size_t p, std::size_t u,
                    std::size_t v) {
  if (p == u || p == v || u == v)
    throw std::invalid_argument("metric_derivative: auxiliary points must be distinct from x");
  for (std::size_t i : {p, u, v})
    if (!map.defined(i)) throw std::invalid_argument("metric_derivative: point outside map domain");
  std::size_t gp = map.at(p), gu = map.at(u), gv = map.at(v);
  return (x.d(gp, gu) / x.d(p, u)) * (x.d(gp, gv) / x.d(p, v)) * (x.d(u, v) / x.d(gu, gv));
}

namespace detail {

// First two domain points usable as auxiliaries for x; optionally requires
// all three mutual distances >= sep (falls back to the unrestricted pair when
// no separated pair exists).
template <typename S>
std::array<std::size_t, 2> pick_aux(const MetricSpace<S>& x, const std::vector<std::size_t>& dom,
                                    std::size_t p, const S* sep) {
  if (sep) {
    for (std::size_t a : dom) {
      if (a == p || x.d(p, a) < *sep) continue;
      for (std::size_t b : dom) {
        if (b == p || b == a || x.d(p, b) < *sep || x.d(a, b) < *sep) continue;
        return {a, b};
      }
    }
  }
  std::array<std::size_t, 2> out{};
  int found = 0;
  for (std::size_t a : dom) {
    if (a == p) continue;
    out[static_cast<std::size_t>(found++)] = a;
    if (found == 2) return out;
  }
  throw std::invalid_argument("metric_derivative: domain too small for auxiliary points");
}

}  // namespace detail

// Derivative at every domain point (auxiliaries chosen deterministically).
// Returned as a full-size vector; entries outside the domain are 0 and
// meaningless.
template <typename S>
std::vector<S> derivative_table(const MetricSpace<S>& x, const PointMap& map) {
  std::vector<S> table(x.size(), S(0));
  for (std::size_t p : map.domain()) {
    auto aux = detail::pick_aux(x, map.domain(), p, static_cast<const S*>(nullptr));
    table[p] = metric_derivative(x, map, p, aux[0], aux[1]);
  }
  return table;
}

template <typename S>
struct ResidualReport {
  S max_residual;
  std::size_t x = 0, y = 0;  // worst pair
};

// Geometric mean value property: d(gx, gy)^2 = |g'|(x) |g'|(y) d(x, y)^2.
// `deriv` is indexed by point (as from derivative_table). Returns the largest
// absolute residual over domain pairs.
template <typename S>
ResidualReport<S> check_mean_value(const MetricSpace<S>& x, const PointMap& map,
                                   const std::vector<S>& deriv) {
  if (deriv.size() != x.size())
    throw std::invalid_argument("check_mean_value: derivative table size mismatch");
  const auto& dom = map.domain();
  ResidualReport<S> rep{S(0), 0, 0};
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = i + 1; j < dom.size(); ++j) {
      std::size_t a = dom[i], b = dom[j];
      S lhs = x.d(map.at(a), map.at(b)) * x.d(map.at(a), map.at(b));
      S rhs = deriv[a] * deriv[b] * x.d(a, b) * x.d(a, b);
      S res = detail::abs_value<S>(lhs - rhs);
      if (rep.max_residual < res) rep = {res, a, b};
    }
  return rep;
}

// |(g h)'|(x) = |g'|(h x) |h'|(x), checked over every point where the
// composite map is defined with enough auxiliary room.
template <typename S>
ResidualReport<S> check_chain_rule(const MetricSpace<S>& x, const PointMap& g, const PointMap& h) {
  PointMap gh = compose(g, h);
  if (gh.domain().size() < 3)
    throw std::invalid_argument("check_chain_rule: composite domain too small");
  ResidualReport<S> rep{S(0), 0, 0};
  for (std::size_t p : gh.domain()) {
    auto aux_gh = detail::pick_aux(x, gh.domain(), p, static_cast<const S*>(nullptr));
    S lhs = metric_derivative(x, gh, p, aux_gh[0], aux_gh[1]);
    auto aux_h = detail::pick_aux(x, h.domain(), p, static_cast<const S*>(nullptr));
    S dh = metric_derivative(x, h, p, aux_h[0], aux_h[1]);
    std::size_t hp = h.at(p);
    auto aux_g = detail::pick_aux(x, g.domain(), hp, static_cast<const S*>(nullptr));
    S dg = metric_derivative(x, g, hp, aux_g[0], aux_g[1]);
    S res = detail::abs_value<S>(lhs - dg * dh);
    if (rep.max_residual < res) rep = {res, p, hp};
  }
  return rep;
}

struct InequalityReport {
  bool holds;
  std::size_t x = 0, y = 0;  // first violating pair when !holds
};

// sqrt|g'|(x) - sqrt|g'|(y) <= (4 / diam) (max|g'| / sqrt(min|g'|)) d(x, y)
// over ordered domain pairs. All three constants live on the map's domain —
// the finite space the map is Mobius on; a partial map can have all its
// images inside one small ball, making the domain diameter the honest scale.
// Exact mode decides the square-root comparison by clearing radicals (both
// sides are multiplied by sqrt(min|g'|)).
template <typename S>
InequalityReport lipschitz_bound_check(const MetricSpace<S>& x, const PointMap& map) {
  const auto& dom = map.domain();
  if (dom.size() < 3) throw std::invalid_argument("lipschitz_bound_check: domain too small");
  std::vector<S> deriv = derivative_table(x, map);
  S m = deriv[dom[0]], big = deriv[dom[0]];
  for (std::size_t p : dom) {
    if (deriv[p] < m) m = deriv[p];
    if (big < deriv[p]) big = deriv[p];
  }
  if (!(S(0) < m)) throw std::domain_error("lipschitz_bound_check: non-positive derivative");
  S diam(0);
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = i + 1; j < dom.size(); ++j)
      if (diam < x.d(dom[i], dom[j])) diam = x.d(dom[i], dom[j]);
  for (std::size_t a : dom)
    for (std::size_t b : dom) {
      if (a == b) continue;
      // sqrt(deriv[a] m) <= sqrt(deriv[b] m) + 4 big d(a,b) / diam
      S c = S(4) * big * x.d(a, b) / diam;
      if (!detail::sqrt_leq(deriv[a] * m, deriv[b] * m, c)) return {false, a, b};
    }
  return {true};
}

// The cocycle bound |log|g^{-1}'|(x) - log|g^{-1}'|(y)| <= (8/diam)(M/m) d(x,y)
// follows from the Lipschitz estimate applied to the inverse map's
// derivative (|log a - log b| <= 2 |sqrt a - sqrt b| / sqrt(min)); that
// sufficient inequality is what gets certified — exactly, no logarithms.
template <typename S>
InequalityReport cocycle_bound_check(const MetricSpace<S>& x, const PointMap& map) {
  return lipschitz_bound_check(x, map.inverted());
}

// kappa(X): min over center pairs of the covering radius max_x min_i d(c_i, x).
// Every pair of open balls of radius kappa fails to cover X, which is what
// guarantees kappa-separated auxiliary triples.
template <typename S>
S kappa(const MetricSpace<S>& x) {
  std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("kappa: needs at least 3 points");
  bool first = true;
  S best = S(0);
  for (std::size_t c1 = 0; c1 < n; ++c1)
    for (std::size_t c2 = c1; c2 < n; ++c2) {
      S worst = S(0);
      for (std::size_t p = 0; p < n; ++p) {
        S closer = x.d(c1, p) < x.d(c2, p) ? x.d(c1, p) : x.d(c2, p);
        if (worst < closer) worst = closer;
      }
      if (first || worst < best) {
        best = worst;
        first = false;
      }
    }
  return best;
}

template <typename S>
struct AlphaVerdict {
  bool applicable;    // displacement <= kappa / 10
  bool holds;         // -6 D/kappa <= |g'| - 1 <= 8 D/kappa on the domain
  S displacement;     // D = max d(x, gx)
  S kappa_value;
};

// Almost-isometries have derivative close to 1: when the displacement
// D = max d(gx, x) is at most kappa/10,
//   -6 kappa^{-1} D <= |g'|(x) - 1 <= 8 kappa^{-1} D
// at every domain point (derivative taken with kappa-separated auxiliaries
// when available).
template <typename S>
AlphaVerdict<S> alpha_bound_check(const MetricSpace<S>& x, const PointMap& map) {
  const auto& dom = map.domain();
  if (dom.size() < 3) throw std::invalid_argument("alpha_bound_check: domain too small");
  S k = kappa(x);
  S disp(0);
  for (std::size_t p : dom)
    if (disp < x.d(p, map.at(p))) disp = x.d(p, map.at(p));
  AlphaVerdict<S> verdict{false, false, disp, k};
  if (!detail::leq_slack(S(10) * disp, k)) return verdict;
  verdict.applicable = true;
  verdict.holds = true;
  S lower = -(S(6) * disp / k), upper = S(8) * disp / k;
  for (std::size_t p : dom) {
    auto aux = detail::pick_aux(x, dom, p, &k);
    S dev = metric_derivative(x, map, p, aux[0], aux[1]) - S(1);
    if (!(detail::leq_slack(lower, dev) && detail::leq_slack(dev, upper))) {
      verdict.holds = false;
      break;
    }
  }
  return verdict;
}

}  // namespace fgb
