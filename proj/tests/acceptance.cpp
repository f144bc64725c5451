// Acceptance gate: one criterion per function, one PASS/FAIL line each,
// nonzero exit when anything fails. argv[1] names the CLI binary (used by
// the determinism criterion).
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fgb/besov.hpp"
#include "fgb/measure.hpp"
#include "fgb/mobius.hpp"
#include "fgb/rng.hpp"
#include "fgb/sample.hpp"

using namespace fgb;

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // <= 0 means no budget
  std::function<bool(std::string&)> body;
};

const Rank kRank2(2);  // q = 3

// ----- criterion 1: level-set table ----------------------------------------

bool crit_levelsets(std::string& detail) {
  for (int n : {2, 3, 5}) {  // q = 3, 5, 9
    Rank rank(n);
    long q = rank.q();
    LevelSetTable table = levelset_table(rank, 20);
    if (table.q != q || table.rows.size() != 21) {
      detail = "table shape wrong at q=" + std::to_string(q);
      return false;
    }
    ExactScalar cum(0);
    for (const auto& row : table.rows) {
      ExactScalar expect = row.n == 0 ? ExactScalar(q, q + 1)
                                      : ExactScalar(q - 1, q + 1) * q_pow(q, row.n);
      cum += expect;
      if (row.mass != expect || row.cumulative != cum) {
        detail = "q=" + std::to_string(q) + " n=" + std::to_string(row.n) +
                 " mass=" + row.mass.to_string();
        return false;
      }
    }
  }
  return true;
}

// ----- criterion 2: nu-invariance ------------------------------------------

CylinderKernel random_kernel(SplitMix64& rng, const Rank& rank) {
  std::size_t depth = 1 + rng.below(6);  // <= 6
  std::size_t cells = 1 + rng.below(4);
  std::set<std::pair<ReducedWord, ReducedWord>> used;
  std::vector<KernelCell> out;
  while (out.size() < cells) {
    ReducedWord x = random_reduced_word(rng, rank, depth);
    ReducedWord y = random_reduced_word(rng, rank, depth);
    if (x == y || !used.insert({x, y}).second) continue;
    out.push_back({CylinderSet::cylinder(rank, x), CylinderSet::cylinder(rank, y),
                   random_rational(rng, 20, 20)});
  }
  return CylinderKernel(rank, std::move(out));
}

bool crit_invariance(std::string& detail) {
  SplitMix64 rng(0x496e7661);
  for (int t = 0; t < 200; ++t) {
    ReducedWord g = random_reduced_word(rng, kRank2, 1 + rng.below(8));
    CylinderKernel f = random_kernel(rng, kRank2);
    if (integrate_nu(pullback(g, f)) != integrate_nu(f)) {
      detail = "instance " + std::to_string(t) + ", g = " + format_word(g);
      return false;
    }
  }
  return true;
}

// ----- criterion 3: key relation, cocycle, unit integral --------------------

bool crit_kernel_identities(std::string& detail) {
  SplitMix64 rng(0x4b65726e);
  long q = kRank2.q();
  for (int t = 0; t < 500; ++t) {  // Poisson cocycle
    ReducedWord g = random_reduced_word(rng, kRank2, 1 + rng.below(7));
    ReducedWord h = random_reduced_word(rng, kRank2, 1 + rng.below(7));
    BoundaryPoint xi = random_boundary_point(rng, kRank2, 3, 4);
    ExactScalar lhs = poisson_kernel(kRank2, g * h, xi);
    ExactScalar rhs = poisson_kernel(kRank2, g, xi) *
                      poisson_kernel(kRank2, h, act(g.inverse(), xi));
    if (lhs != rhs) {
      detail = "cocycle, instance " + std::to_string(t);
      return false;
    }
  }
  for (int t = 0; t < 500; ++t) {  // key relation
    ReducedWord g = random_reduced_word(rng, kRank2, 1 + rng.below(7));
    BoundaryPoint xi = random_boundary_point(rng, kRank2, 3, 4);
    BoundaryPoint om = random_boundary_point(rng, kRank2, 3, 4);
    if (xi == om) {
      --t;
      continue;
    }
    auto prod = gromov_product(act(g, xi), act(g, om));
    auto base = gromov_product(xi, om);
    if (!prod || !base) {
      detail = "distinct points with infinite product";
      return false;
    }
    ExactScalar lhs = q_pow(q, -2 * *prod);
    ExactScalar rhs = poisson_kernel(kRank2, g.inverse(), xi) *
                      poisson_kernel(kRank2, g.inverse(), om) * q_pow(q, -2 * *base);
    if (lhs != rhs) {
      detail = "key relation, instance " + std::to_string(t);
      return false;
    }
  }
  for (int t = 0; t < 500; ++t) {  // unit integral
    ReducedWord g = random_reduced_word(rng, kRank2, 1 + rng.below(9));
    if (poisson_integral(kRank2, g) != ExactScalar(1)) {
      detail = "unit integral, g = " + format_word(g);
      return false;
    }
  }
  return true;
}

// ----- criterion 4: norm growth to length 2000 ------------------------------

bool crit_norm_growth(std::string& detail) {
  SplitMix64 rng(0x4e6f726d);
  long q = kRank2.q();
  ExactScalar lb_coef = ExactScalar(q - 1, q + 1).pow(2);
  ExactScalar ub_coef = ExactScalar(q, q + 1).pow(2);
  for (long p : {2L, 3L, 4L}) {
    std::vector<ExactScalar> s = s_sum_table(2000, p, q);
    ExactScalar moment = power_series_moment(p, q);
    ExactScalar step_lo = ExactScalar(2, q), step_hi = ExactScalar(2) * moment;
    for (long n = 0; n < 2000; ++n) {
      ExactScalar step = s[n + 1] - s[n];
      if (!(step_lo <= step) || !(step < step_hi)) {
        detail = "S recurrence, p=" + std::to_string(p) + " N=" + std::to_string(n);
        return false;
      }
    }
    ExactScalar ratio_lo = ExactScalar(2, q) * lb_coef;
    ExactScalar ratio_hi = ExactScalar(2) * ub_coef * moment;
    for (long len = 1; len <= 2000; ++len) {
      ReducedWord g = random_reduced_word(rng, kRank2, static_cast<std::size_t>(len));
      ExactScalar norm = cocycle_lp_norm_p(kRank2, g, p);
      if (!(lb_coef * s[len] <= norm && norm <= ub_coef * s[len])) {
        detail = "bracket, p=" + std::to_string(p) + " len=" + std::to_string(len);
        return false;
      }
      ExactScalar ratio = norm / ExactScalar(len);
      if (!(ratio_lo <= ratio && ratio <= ratio_hi)) {
        detail = "ratio, p=" + std::to_string(p) + " len=" + std::to_string(len);
        return false;
      }
    }
  }
  return true;
}

// ----- criterion 5: Mobius suite --------------------------------------------

bool crit_mobius(std::string& detail) {
  SplitMix64 rng(0x4d6f6269);
  int elements_checked = 0;
  for (int batch = 0; batch < 10; ++batch) {
    std::uint64_t seed_seed = rng.next();
    std::vector<ReducedWord> elements;
    for (int k = 0; k < 10; ++k)
      elements.push_back(random_reduced_word(rng, kRank2, 1 + rng.below(6)));

    BoundarySample sample = build_boundary_sample(
        kRank2, default_seed_points(kRank2, 12, seed_seed), elements);
    for (std::size_t extra = 16; sample.points.size() < 50 && extra <= 48; extra += 4)
      sample = build_boundary_sample(kRank2, default_seed_points(kRank2, extra, seed_seed),
                                     elements);
    if (sample.points.size() < 50) {
      detail = "batch " + std::to_string(batch) + " sample stuck below 50 points";
      return false;
    }

    for (std::size_t k = 0; k < elements.size(); ++k) {
      const PointMap& map = sample.maps[k];
      auto verdict = is_mobius<ExactScalar>(sample.space, map, ExactScalar(0));
      if (!verdict.mobius) {
        detail = "is_mobius failed for " + format_word(elements[k]);
        return false;
      }
      auto deriv = derivative_table(sample.space, map);
      auto mv = check_mean_value(sample.space, map, deriv);
      if (!mv.max_residual.is_zero()) {
        detail = "mean value residual nonzero for " + format_word(elements[k]);
        return false;
      }
      ++elements_checked;
    }

    // chain rule on a {g, h, gh}-closed sample
    ReducedWord g = elements[0], h = elements[1];
    BoundarySample triple = build_boundary_sample(
        kRank2, default_seed_points(kRank2, 8, seed_seed), {g, h, g * h});
    auto res = check_chain_rule(triple.space, triple.maps[0], triple.maps[1]);
    if (!res.max_residual.is_zero()) {
      detail = "chain rule residual nonzero in batch " + std::to_string(batch);
      return false;
    }
  }
  if (elements_checked != 100) {
    detail = "only " + std::to_string(elements_checked) + " elements checked";
    return false;
  }
  for (int t = 0; t < 100; ++t) {
    ReducedWord g = random_reduced_word(rng, kRank2, rng.below(7));   // |g| <= 6
    ReducedWord x = random_reduced_word(rng, kRank2, rng.below(7));   // |x| <= 6
    auto [lhs, rhs] = radon_nikodym_check(kRank2, g, x);
    if (lhs != rhs) {
      detail = "radon-nikodym, g=" + format_word(g) + " x=" + format_word(x);
      return false;
    }
  }
  return true;
}

// ----- criterion 6: inequality suite ----------------------------------------

bool crit_inequalities(std::string& detail) {
  SplitMix64 rng(0x496e6571);
  for (int batch = 0; batch < 4; ++batch) {
    std::vector<ReducedWord> elements;
    for (int k = 0; k < 8; ++k)
      elements.push_back(random_reduced_word(rng, kRank2, 1 + rng.below(5)));
    BoundarySample sample = build_boundary_sample(
        kRank2, default_seed_points(kRank2, 8, rng.next()), elements);
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (!lipschitz_bound_check(sample.space, sample.maps[k]).holds) {
        detail = "lipschitz failed for " + format_word(elements[k]);
        return false;
      }
      if (!cocycle_bound_check(sample.space, sample.maps[k]).holds) {
        detail = "cocycle bound failed for " + format_word(elements[k]);
        return false;
      }
      auto alpha = alpha_bound_check(sample.space, sample.maps[k]);
      if (alpha.applicable && !alpha.holds) {
        detail = "alpha bound failed for " + format_word(elements[k]);
        return false;
      }
    }
    // identity is always in the alpha regime
    auto id = alpha_bound_check(sample.space, PointMap::identity(sample.points.size()));
    if (!id.applicable || !id.holds) {
      detail = "alpha failed on the identity map";
      return false;
    }
  }

  // a displacement-q^{-8} transposition of deep twins: inside the regime
  ReducedWord stem;
  do {
    stem = random_reduced_word(rng, kRank2, 7);
  } while (stem.last() == 1 || stem.last() == 3);
  auto letters = stem.letters();
  letters.push_back(0);
  ReducedWord wdeep = ReducedWord::from_reduced(letters);
  BoundaryPoint twin_a(wdeep, ReducedWord::from_reduced({0}));
  BoundaryPoint twin_b(wdeep, ReducedWord::from_reduced({2}));
  std::vector<BoundaryPoint> pts = default_seed_points(kRank2, 6, rng.next());
  pts.push_back(twin_a);
  pts.push_back(twin_b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::string> labels;
  std::vector<ExactScalar> dist;
  for (const auto& p : pts) labels.push_back(format_boundary_point(p));
  for (const auto& p : pts)
    for (const auto& o : pts) dist.push_back(visual_distance(kRank2, p, o));
  MetricSpace<ExactScalar> space(labels, dist);
  std::size_t ia = static_cast<std::size_t>(
      std::lower_bound(pts.begin(), pts.end(), twin_a) - pts.begin());
  std::size_t ib = static_cast<std::size_t>(
      std::lower_bound(pts.begin(), pts.end(), twin_b) - pts.begin());
  auto twin = alpha_bound_check(space, PointMap::transposition(pts.size(), ia, ib));
  if (!twin.applicable || !twin.holds) {
    detail = "alpha failed on the deep-twin transposition";
    return false;
  }
  return true;
}

// ----- criterion 7: Besov bridge ---------------------------------------------

bool crit_besov_bridge(std::string& detail) {
  SplitMix64 rng(0x42657376);
  std::vector<ReducedWord> elements;
  for (int t = 0; t < 100; ++t)
    elements.push_back(random_reduced_word(rng, kRank2, 1 + rng.below(50)));
  for (long p : {2L, 3L}) {
    auto rows = properness_table(kRank2, elements, p, 51);
    for (const auto& row : rows) {
      if (row.ep != ExactScalar(row.length)) {
        detail = "ep != |g| for " + format_word(row.g) + " p=" + std::to_string(p);
        return false;
      }
      if (row.besov != cocycle_lp_norm_p(kRank2, row.length, p)) {
        detail = "bridge broken for " + format_word(row.g) + " p=" + std::to_string(p);
        return false;
      }
      if (!(row.lower <= row.besov && row.besov <= row.upper)) {
        detail = "bracket broken at length " + std::to_string(row.length);
        return false;
      }
    }
  }
  return true;
}

// ----- criterion 8: Ahlfors regularity and tails -----------------------------

bool crit_ahlfors(std::string& detail) {
  SplitMix64 rng(0x41686c66);
  long q = kRank2.q();
  for (int t = 0; t < 20; ++t) {
    BoundaryPoint om = random_boundary_point(rng, kRank2, 4, 5);
    for (long n = 1; n <= 30; ++n) {
      if (ball_measure(kRank2, om, n) * q_pow(q, n) != ExactScalar(q, q + 1)) {
        detail = "ball measure at n=" + std::to_string(n);
        return false;
      }
    }
  }
  for (long n = 1; n <= 30; ++n) {
    ExactScalar sum(0);
    for (long m = 0; m < n; ++m) sum += nu_levelset(kRank2, m);
    if (tail_distribution(kRank2, n) != sum) {
      detail = "tail at n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

// ----- criterion 9: determinism of the verify command ------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool crit_determinism(const std::string& fgb, std::string& detail) {
  if (fgb.empty()) {
    detail = "no CLI binary path supplied";
    return false;
  }
  std::string base = "\"" + fgb + "\" verify --seed 424242";
  std::string a = "/tmp/fgb_accept_a.txt", b = "/tmp/fgb_accept_b.txt",
              c = "/tmp/fgb_accept_c.txt";
  int rc1 = std::system((base + " > " + a + " 2>&1").c_str());
  int rc2 = std::system((base + " > " + b + " 2>&1").c_str());
  if (rc1 != 0 || rc2 != 0) {
    detail = "verify run exited nonzero";
    return false;
  }
  std::string ta = slurp(a), tb = slurp(b);
  if (ta.empty() || ta != tb) {
    detail = "reports differ between runs";
    return false;
  }
  int rc3 = std::system((base + " --perturb > " + c + " 2>&1").c_str());
  if (rc3 == 0) {
    detail = "perturbed run did not fail";
    return false;
  }
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c.c_str());
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string fgb = argc > 1 ? argv[1] : "";
  std::vector<Criterion> gates{
      {1, "level-set table exact for q in {3,5,9}, n = 0..20", 1.0, crit_levelsets},
      {2, "nu-invariance exact on 200 random (g, F)", 30.0, crit_invariance},
      {3, "key relation / Poisson cocycle / unit integral, 500 each", 10.0,
       crit_kernel_identities},
      {4, "norm growth brackets and S_N recurrence to length 2000", 60.0, crit_norm_growth},
      {5, "Mobius suite: 100 elements, residuals 0, Radon-Nikodym x100", 60.0, crit_mobius},
      {6, "inequality suite: Lipschitz, cocycle bound, alpha", 30.0, crit_inequalities},
      {7, "Besov bridge and ep = |g| for 100 elements, p in {2,3}", 60.0, crit_besov_bridge},
      {8, "Ahlfors regularity and tail distribution", 5.0, crit_ahlfors},
      {9, "determinism: byte-identical verify reports", 0.0,
       [&fgb](std::string& d) { return crit_determinism(fgb, d); }},
  };

  int failures = 0;
  for (auto& gate : gates) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = gate.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && gate.budget_s > 0 && secs > gate.budget_s) {
      ok = false;
      detail = "over budget of " + std::to_string(gate.budget_s) + " s";
    }
    char line[512];
    std::snprintf(line, sizeof(line), "%s criterion %d: %s (%.2f s)%s%s", ok ? "PASS" : "FAIL",
                  gate.id, gate.name.c_str(), secs, detail.empty() ? "" : " — ",
                  detail.c_str());
    std::cout << line << std::endl;
    if (!ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 9 criteria passed" << std::endl;
  return 0;
}
