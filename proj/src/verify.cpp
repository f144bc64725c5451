#include "fgb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fgb/besov.hpp"
#include "fgb/boundary.hpp"
#include "fgb/cylinders.hpp"
#include "fgb/measure.hpp"
#include "fgb/mobius.hpp"
#include "fgb/rng.hpp"
#include "fgb/sample.hpp"
#include "fgb/scalar.hpp"
#include "fgb/words.hpp"

namespace fgb {

namespace {

struct Reporter {
  std::ostream& os;
  int checks = 0;
  int failures = 0;

  void line(bool ok, const std::string& name, const std::string& detail) {
    ++checks;
    if (!ok) ++failures;
    os << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) os << "  " << detail;
    os << "\n";
  }
};

std::string plural(int n, const char* what) {
  return std::to_string(n) + " " + what + (n == 1 ? "" : "s");
}

ReducedWord rand_word(SplitMix64& rng, const Rank& rank, std::size_t max_len) {
  return random_reduced_word(rng, rank, 1 + rng.below(max_len));
}

BoundaryPoint rand_point(SplitMix64& rng, const Rank& rank) {
  return random_boundary_point(rng, rank, 3, 4);
}

BoundaryPoint rand_point_distinct(SplitMix64& rng, const Rank& rank, const BoundaryPoint& avoid) {
  for (;;) {
    BoundaryPoint xi = rand_point(rng, rank);
    if (!(xi == avoid)) return xi;
  }
}

std::string w(const ReducedWord& g) {
  return g.is_identity() ? std::string("e") : format_word(g);
}

// ----- words / boundary ----------------------------------------------------

void suite_words(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x776f726473ULL);
  const int n = opt.identity_checks;

  bool ok = true;
  std::string witness;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 12), h = rand_word(rng, rank, 12);
    long lhs = 2 * gromov_product(g, h);
    long rhs = static_cast<long>(g.length()) + static_cast<long>(h.length()) -
               static_cast<long>((g.inverse() * h).length());
    if (lhs != rhs) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h);
    }
  }
  rep.line(ok, "words.gromov-formula",
           ok ? "2(g,h) = |g|+|h|-|g^-1 h| on " + plural(n, "pair") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    BoundaryPoint xi = rand_point(rng, rank), eta = rand_point(rng, rank),
                  om = rand_point(rng, rank);
    auto as_long = [](const std::optional<long>& v) {
      return v ? *v : std::numeric_limits<long>::max();
    };
    long a = as_long(gromov_product(xi, om));
    long b = std::min(as_long(gromov_product(xi, eta)), as_long(gromov_product(eta, om)));
    if (a < b) {
      ok = false;
      witness = format_boundary_point(xi) + " " + format_boundary_point(eta) + " " +
                format_boundary_point(om);
    }
  }
  rep.line(ok, "words.ultrametric",
           ok ? "(xi,om) >= min((xi,eta),(eta,om)) on " + plural(n, "triple") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 8), h = rand_word(rng, rank, 8);
    BoundaryPoint xi = rand_point(rng, rank);
    if (!(act(g * h, xi) == act(g, act(h, xi))) || !(act(ReducedWord(), xi) == xi)) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h) + " xi=" + format_boundary_point(xi);
    }
  }
  rep.line(ok, "words.left-action",
           ok ? "(gh).xi = g.(h.xi) on " + plural(n, "triple") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    BoundaryPoint xi = rand_point(rng, rank);
    // respell the same infinite word with one period step unrolled and the
    // period rotated; canonicalization must recover xi exactly
    std::vector<Letter> pre = xi.preperiod().letters();
    pre.push_back(xi.period()[0]);
    std::vector<Letter> per(xi.period().letters().begin() + 1, xi.period().letters().end());
    per.push_back(xi.period()[0]);
    BoundaryPoint respelled(ReducedWord::from_reduced(std::move(pre)),
                            ReducedWord::from_reduced(std::move(per)));
    if (!(respelled == xi)) {
      ok = false;
      witness = format_boundary_point(xi);
    }
  }
  rep.line(ok, "words.canonical-form",
           ok ? "unrolled respelling recanonicalizes on " + plural(n, "point") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    BoundaryPoint xi = rand_point(rng, rank);
    BoundaryPoint om = rand_point_distinct(rng, rank, xi);
    std::optional<long> gp = gromov_product(xi, om);
    long scan = 0;
    while (xi.at(static_cast<std::size_t>(scan)) == om.at(static_cast<std::size_t>(scan))) ++scan;
    if (!gp || *gp != scan) {
      ok = false;
      witness = format_boundary_point(xi) + " " + format_boundary_point(om);
    }
  }
  rep.line(ok, "words.boundary-gromov-scan",
           ok ? "matches letterwise scan on " + plural(n, "distinct pair") : witness);
}

// ----- cylinder calculus ---------------------------------------------------

CylinderSet rand_cylinder_union(SplitMix64& rng, const Rank& rank) {
  std::vector<ReducedWord> words;
  int m = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < m; ++i) words.push_back(rand_word(rng, rank, 5));
  return CylinderSet::from_words(rank, std::move(words));
}

void suite_cylinders(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x63796c73ULL);
  const int n = opt.identity_checks;

  bool ok = true;
  std::string witness;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 7), h = rand_word(rng, rank, 7);
    ReducedWord x = rand_word(rng, rank, 5);
    CylinderSet once = image_of_cylinder(rank, g * h, x);
    CylinderSet twice = image_of_set(g, image_of_cylinder(rank, h, x));
    if (!(once == twice)) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h) + " x=" + w(x);
    }
  }
  rep.line(ok, "cylinders.image-composition",
           ok ? "(gh).Omega_x = g.(h.Omega_x) on " + plural(n, "triple") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    CylinderSet a = rand_cylinder_union(rng, rank);
    if (!(mu_set(a) + mu_set(a.complemented()) == ExactScalar(1))) {
      ok = false;
      witness = "terms=" + std::to_string(a.terms().size());
    }
  }
  rep.line(ok, "cylinders.complement-mass",
           ok ? "mu(A) + mu(A^c) = 1 on " + plural(n, "set") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord x = rand_word(rng, rank, 6);
    ExactScalar total(0);
    std::vector<ReducedWord> kids;
    for (Letter s = 0; static_cast<int>(s) < rank.alphabet(); ++s) {
      if (s == inverse_letter(x.last())) continue;
      std::vector<Letter> v = x.letters();
      v.push_back(s);
      kids.push_back(ReducedWord::from_reduced(std::move(v)));
      total += mu_cylinder(rank, kids.back());
    }
    bool coalesced = CylinderSet::from_words(rank, kids) == CylinderSet::cylinder(rank, x);
    if (!(total == mu_cylinder(rank, x)) || !coalesced) {
      ok = false;
      witness = "x=" + w(x);
    }
  }
  rep.line(ok, "cylinders.child-partition",
           ok ? "children coalesce and masses add on " + plural(n, "cylinder") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    CylinderSet a = rand_cylinder_union(rng, rank);
    BoundaryPoint xi = rand_point(rng, rank);
    if (a.contains(xi) == a.complemented().contains(xi)) {
      ok = false;
      witness = format_boundary_point(xi);
    }
  }
  rep.line(ok, "cylinders.membership-split",
           ok ? "xi in exactly one of A, A^c on " + plural(n, "instance") : witness);
}

// ----- level sets, tails, Ahlfors regularity -------------------------------

void suite_levelsets(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x6c766c73ULL);
  long q = rank.q();

  bool ok = true;
  std::string witness;
  for (long n = 0; n <= 2 && ok; ++n) {
    // indicator of K_n as depth-(n+1) rectangle cells, integrated against nu
    std::vector<KernelCell> cells;
    for (const auto& stem : words_of_length(rank, static_cast<std::size_t>(n))) {
      std::vector<ReducedWord> kids;
      for (Letter s = 0; static_cast<int>(s) < rank.alphabet(); ++s) {
        if (!stem.is_identity() && s == inverse_letter(stem.last())) continue;
        std::vector<Letter> v = stem.letters();
        v.push_back(s);
        kids.push_back(ReducedWord::from_reduced(std::move(v)));
      }
      for (const auto& a : kids)
        for (const auto& b : kids) {
          if (a == b) continue;
          cells.push_back(
              {CylinderSet::cylinder(rank, a), CylinderSet::cylinder(rank, b), ExactScalar(1)});
        }
    }
    ExactScalar integral = integrate_nu(CylinderKernel(rank, std::move(cells)));
    if (!(integral == nu_levelset(rank, n))) {
      ok = false;
      witness = "n=" + std::to_string(n) + " integral=" + integral.to_string();
    }
  }
  rep.line(ok, "levelsets.mass-oracle",
           ok ? "nu(K_n) matches cell-sum integration for n = 0..2" : witness);

  LevelSetTable table = levelset_table(rank, 20);
  ok = true;
  for (const auto& row : table.rows) {
    ExactScalar expect =
        row.n == 0 ? ExactScalar(q, q + 1) : ExactScalar(q - 1, q + 1) * q_pow(q, row.n);
    bool ratio = row.n < 2 || row.mass == nu_levelset(rank, row.n - 1) * ExactScalar(q);
    bool cumulative = row.cumulative == tail_distribution(rank, row.n + 1);
    if (!(row.mass == expect) || !ratio || !cumulative) {
      ok = false;
      witness = "n=" + std::to_string(row.n);
      break;
    }
  }
  rep.line(ok, "levelsets.closed-forms",
           ok ? "masses, q-fold growth, cumulative tails for n = 0..20" : witness);

  ok = true;
  for (long glen : {1L, 2L, 5L, 9L}) {
    ExactScalar total(0);
    for (long i = 0; i <= glen; ++i) total += gromov_level_measure(rank, glen, i);
    if (!(total == ExactScalar(1))) {
      ok = false;
      witness = "|g|=" + std::to_string(glen);
    }
  }
  // set-level oracle: {(g,.) = i} = Omega_{g_i} minus Omega_{g_{i+1}}
  for (int t = 0; t < 25 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 8);
    for (long i = 0; i <= static_cast<long>(g.length()) && ok; ++i) {
      CylinderSet level = CylinderSet::cylinder(rank, g.prefix(static_cast<std::size_t>(i)));
      if (i < static_cast<long>(g.length()))
        level = level.intersected(
            CylinderSet::cylinder(rank, g.prefix(static_cast<std::size_t>(i) + 1)).complemented());
      if (!(mu_set(level) == gromov_level_measure(rank, g, i))) {
        ok = false;
        witness = "g=" + w(g) + " i=" + std::to_string(i);
      }
    }
  }
  rep.line(ok, "levelsets.gromov-levels",
           ok ? "level measures sum to 1 and match set calculus" : witness);

  ok = true;
  for (int t = 0; t < 20 && ok; ++t) {
    BoundaryPoint xi = rand_point(rng, rank);
    for (long n = 1; n <= 12 && ok; ++n) {
      if (!(ball_measure(rank, xi, n) * q_pow(q, n) == ExactScalar(q, q + 1))) {
        ok = false;
        witness = format_boundary_point(xi) + " n=" + std::to_string(n);
      }
    }
  }
  rep.line(ok, "levelsets.ahlfors",
           ok ? "mu(B(xi, q^-n)) q^n = q/(q+1) on 20 points, n = 1..12" : witness);
}

// ----- Poisson kernel ------------------------------------------------------

void suite_poisson(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x706f6973ULL);
  const int n = opt.identity_checks;
  long q = rank.q();

  bool ok = true;
  std::string witness;
  for (int t = 0; t < 30 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 5);
    // partition oracle: P_g is constant on each depth-|g| cylinder
    ExactScalar total(0);
    for (const auto& x : words_of_length(rank, g.length()))
      total += q_pow(q, 2 * gromov_product(g, x) - static_cast<long>(g.length())) *
               mu_cylinder(rank, x);
    if (!(total == ExactScalar(1)) || !(poisson_integral(rank, g) == ExactScalar(1))) {
      ok = false;
      witness = "g=" + w(g) + " total=" + total.to_string();
    }
  }
  rep.line(ok, "poisson.unit-mass",
           ok ? "integral of P_g = 1, partition oracle on 30 words" : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 9), h = rand_word(rng, rank, 9);
    BoundaryPoint xi = rand_point(rng, rank);
    ExactScalar lhs = poisson_kernel(rank, g * h, xi);
    if (opt.perturb && t == 0) lhs *= ExactScalar(q);  // injected fault
    ExactScalar rhs = poisson_kernel(rank, g, xi) * poisson_kernel(rank, h, act(g.inverse(), xi));
    if (!(lhs == rhs)) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h) + " xi=" + format_boundary_point(xi) + " lhs=" +
                lhs.to_string() + " rhs=" + rhs.to_string();
    }
  }
  rep.line(ok, "poisson.cocycle",
           ok ? "P_gh = P_g (g.P_h) on " + plural(n, "instance") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 9);
    BoundaryPoint xi = rand_point(rng, rank);
    BoundaryPoint om = rand_point_distinct(rng, rank, xi);
    ExactScalar lhs = q_pow(q, -2 * *gromov_product(act(g, xi), act(g, om)));
    ExactScalar rhs = poisson_kernel(rank, g.inverse(), xi) * poisson_kernel(rank, g.inverse(), om) *
                      q_pow(q, -2 * *gromov_product(xi, om));
    if (!(lhs == rhs)) {
      ok = false;
      witness = "g=" + w(g) + " xi=" + format_boundary_point(xi) + " om=" +
                format_boundary_point(om);
    }
  }
  rep.line(ok, "poisson.key-relation",
           ok ? "q^-2(g xi, g om) = P_g-1(xi) P_g-1(om) q^-2(xi,om) on " + plural(n, "instance")
              : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 9);
    BoundaryPoint xi = rand_point(rng, rank);
    bool a = derivative_on_tree(rank, g, xi) == poisson_kernel(rank, g.inverse(), xi);
    bool b = gromov_product(g, xi) + gromov_product(g.inverse(), act(g.inverse(), xi)) ==
             static_cast<long>(g.length());
    ExactScalar dg = derivative_on_tree(rank, g, xi);
    bool c = derivative_on_tree(rank, g.inverse(), act(g, xi)) == ExactScalar(1) / dg;
    if (!a || !b || !c) {
      ok = false;
      witness = "g=" + w(g) + " xi=" + format_boundary_point(xi);
    }
  }
  rep.line(ok, "poisson.derivative-identities",
           ok ? "|g'| = P_g-1, (g,xi)+(g^-1,g^-1 xi)=|g|, inverse rule on " + plural(n, "instance")
              : witness);
}

// ----- Radon-Nikodym -------------------------------------------------------

void suite_radon_nikodym(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x726e636bULL);
  const int n = opt.identity_checks;

  bool ok = true;
  std::string witness;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 6), x = rand_word(rng, rank, 6);
    auto [lhs, rhs] = radon_nikodym_check(rank, g, x);
    if (!(lhs == rhs)) {
      ok = false;
      witness = "g=" + w(g) + " x=" + w(x) + " lhs=" + lhs.to_string() + " rhs=" + rhs.to_string();
    }
  }
  rep.line(ok, "radon-nikodym.identity",
           ok ? "mu(g.Omega_x) = integral of P_g-1 over Omega_x on " + plural(n, "pair") : witness);

  ok = true;
  for (int t = 0; t < 25 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 3), x = rand_word(rng, rank, 3);
    // refinement oracle: derivative is constant on each subcylinder of depth
    // |x| + |g| + 1
    std::size_t depth = x.length() + g.length() + 1;
    ExactScalar sum(0);
    ReducedWord ginv = g.inverse();
    for_each_word(rank, depth, [&](const ReducedWord& c) {
      if (!x.is_prefix_of(c)) return;
      sum += q_pow(rank.q(), 2 * gromov_product(ginv, c) - static_cast<long>(g.length())) *
             mu_cylinder(rank, c);
    });
    if (!(sum == mu_set(image_of_cylinder(rank, g, x)))) {
      ok = false;
      witness = "g=" + w(g) + " x=" + w(x);
    }
  }
  rep.line(ok, "radon-nikodym.refinement-oracle",
           ok ? "depth-(|x|+|g|+1) refinement sum matches on 25 pairs" : witness);
}

// ----- nu invariance -------------------------------------------------------

CylinderKernel rand_kernel(SplitMix64& rng, const Rank& rank) {
  std::size_t depth = 1 + rng.below(5);
  int m = 1 + static_cast<int>(rng.below(4));
  std::set<std::pair<ReducedWord, ReducedWord>> used;
  std::vector<KernelCell> cells;
  while (static_cast<int>(cells.size()) < m) {
    ReducedWord x = random_reduced_word(rng, rank, depth);
    ReducedWord y = random_reduced_word(rng, rank, depth);
    if (x == y || !used.insert({x, y}).second) continue;
    ExactScalar v = random_rational(rng, 20, 20);
    cells.push_back({CylinderSet::cylinder(rank, x), CylinderSet::cylinder(rank, y), v});
  }
  return CylinderKernel(rank, std::move(cells));
}

void suite_invariance(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x696e7672ULL);
  const int n = opt.kernel_checks;

  bool ok = true;
  std::string witness;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 8);
    CylinderKernel f = rand_kernel(rng, rank);
    ExactScalar before = integrate_nu(f);
    ExactScalar after = integrate_nu(pullback(g, f));
    if (!(before == after)) {
      ok = false;
      witness = "g=" + w(g) + " before=" + before.to_string() + " after=" + after.to_string();
    }
  }
  rep.line(ok, "invariance.nu-diagonal-action",
           ok ? "integral(g.F) = integral(F) on " + plural(n, "kernel") : witness);

  ok = true;
  for (int t = 0; t < n && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 6), h = rand_word(rng, rank, 6);
    CylinderKernel f = rand_kernel(rng, rank);
    CylinderKernel once = pullback(g * h, f);
    CylinderKernel twice = pullback(g, pullback(h, f));
    bool same = once.cells().size() == twice.cells().size();
    for (std::size_t i = 0; same && i < once.cells().size(); ++i)
      same = once.cells()[i].a == twice.cells()[i].a && once.cells()[i].b == twice.cells()[i].b &&
             once.cells()[i].value == twice.cells()[i].value;
    if (!same) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h);
    }
  }
  rep.line(ok, "invariance.pullback-composition",
           ok ? "(gh).F = g.(h.F) cellwise on " + plural(n, "kernel") : witness);

  ok = true;
  for (int t = 0; t < opt.identity_checks && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 9), h = rand_word(rng, rank, 9);
    BoundaryPoint xi = rand_point(rng, rank);
    BoundaryPoint om = rand_point_distinct(rng, rank, xi);
    auto c = [&](const ReducedWord& u, const BoundaryPoint& a, const BoundaryPoint& b) {
      return gromov_product(u, a) - gromov_product(u, b);
    };
    BoundaryPoint gxi = act(g.inverse(), xi), gom = act(g.inverse(), om);
    if (c(g * h, xi, om) != c(h, gxi, gom) + c(g, xi, om)) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h);
    }
  }
  rep.line(ok, "invariance.busemann-cocycle",
           ok ? "c_gh = g.c_h + c_g pointwise on " + plural(opt.identity_checks, "instance")
              : witness);
}

// ----- cocycle norms -------------------------------------------------------

void suite_norms(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  long q = rank.q();
  const long cap = opt.norm_length_cap;

  bool ok = true;
  std::string witness;
  for (long len = 0; len <= 40 && ok; ++len)
    for (long p : {1L, 2L, 3L}) {
      if (!(cocycle_lp_norm_p(rank, len, p) == cocycle_lp_norm_p_naive(rank, len, p))) {
        ok = false;
        witness = "N=" + std::to_string(len) + " p=" + std::to_string(p);
        break;
      }
    }
  if (ok && rank.n() == 2 && !(cocycle_lp_norm_p(rank, 1, 2) == ExactScalar(3, 8))) {
    ok = false;
    witness = "anchor N=1 p=2";
  }
  rep.line(ok, "norms.closed-form",
           ok ? "O(N) form matches the double sum for N <= 40, p in {1,2,3}" : witness);

  ExactScalar lb_coef = ExactScalar(q - 1, q + 1) * ExactScalar(q - 1, q + 1);
  ExactScalar ub_coef = ExactScalar(q, q + 1) * ExactScalar(q, q + 1);
  for (long p : {2L, 3L}) {
    std::vector<ExactScalar> s = s_sum_table(cap, p, q);
    ExactScalar moment = power_series_moment(p, q);

    ok = true;
    for (long len = 1; len <= cap && ok; ++len) {
      ExactScalar norm = cocycle_lp_norm_p(rank, len, p);
      if (!(lb_coef * s[static_cast<std::size_t>(len)] <= norm &&
            norm <= ub_coef * s[static_cast<std::size_t>(len)])) {
        ok = false;
        witness = "N=" + std::to_string(len);
      }
    }
    rep.line(ok, "norms.bracketing-p" + std::to_string(p),
             ok ? "((q-1)/(q+1))^2 S_N <= |c|_p^p <= (q/(q+1))^2 S_N for N <= " +
                      std::to_string(cap)
                : witness);

    ok = true;
    for (long len = 0; len + 1 <= cap && ok; ++len) {
      ExactScalar step = s[static_cast<std::size_t>(len) + 1] - s[static_cast<std::size_t>(len)];
      if (!(ExactScalar(2, q) <= step && step < ExactScalar(2) * moment)) {
        ok = false;
        witness = "N=" + std::to_string(len);
      }
    }
    if (ok && !(s[0] == ExactScalar(0) && s[1] == ExactScalar(2, q) &&
                s_sum(cap, p, q) == s[static_cast<std::size_t>(cap)] &&
                s_sum(7, p, q) == s[7])) {
      ok = false;
      witness = "table vs direct";
    }
    rep.line(ok, "norms.s-recurrence-p" + std::to_string(p),
             ok ? "S_N + 2/q <= S_N+1 < S_N + 2 Li(-p, 1/q), table = direct sum" : witness);

    ok = true;
    for (long len = 1; len <= cap && ok; ++len) {
      ExactScalar ratio = cocycle_lp_norm_p(rank, len, p) / ExactScalar(len);
      if (!(ExactScalar(2, q) * lb_coef <= ratio && ratio <= ExactScalar(2) * moment * ub_coef)) {
        ok = false;
        witness = "N=" + std::to_string(len);
      }
    }
    rep.line(ok, "norms.linear-growth-p" + std::to_string(p),
             ok ? "|c|_p^p / N inside the fixed bracket for N <= " + std::to_string(cap)
                : witness);
  }

  ok = true;
  {
    ExactScalar m1 = power_series_moment(1, q), m2 = power_series_moment(2, q),
                m3 = power_series_moment(3, q);
    ExactScalar d(q - 1);
    bool anchors = m1 == ExactScalar(q) / (d * d) &&
                   m2 == ExactScalar(q) * ExactScalar(q + 1) / (d * d * d) &&
                   m3 == ExactScalar(q * (q * q + 4 * q + 1)) / (d * d * d * d);
    ExactScalar partial(0);
    for (long i = 1; i <= 60; ++i) partial += ExactScalar(i).pow(4) * q_pow(q, -i);
    if (!anchors || !(partial < power_series_moment(4, q))) {
      ok = false;
      witness = "moment anchors";
    }
  }
  rep.line(ok, "norms.moments", ok ? "Li(-p, 1/q) anchors for p = 1,2,3; partial sums below" : witness);

  ok = true;
  for (long len : {1L, 10L, 100L}) {
    double exact2 = cocycle_lp_norm_p(rank, len, 2).to_double();
    double real2 = cocycle_lp_norm_real(rank, len, 2.0);
    if (!(std::abs(real2 - exact2) <= 1e-9 * exact2)) {
      ok = false;
      witness = "N=" + std::to_string(len) + " p=2.0";
    }
    double mid = cocycle_lp_norm_real(rank, len, 2.5);
    if (!(exact2 * (1 - 1e-9) <= mid && mid <= cocycle_lp_norm_p(rank, len, 3).to_double() * (1 + 1e-9))) {
      ok = false;
      witness = "N=" + std::to_string(len) + " p=2.5";
    }
  }
  rep.line(ok, "norms.real-exponent",
           ok ? "float path within 1e-9 of exact, monotone between integer p" : witness);

  SplitMix64 rng(opt.seed ^ 0x6e726d73ULL);
  ok = true;
  for (int t = 0; t < 20 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 30);
    if (!(cocycle_lp_norm_p(rank, g, 2) == cocycle_lp_norm_p(rank, g.inverse(), 2))) {
      ok = false;
      witness = "g=" + w(g);
    }
  }
  rep.line(ok, "norms.symmetry", ok ? "|c_g| = |c_g-1| on 20 words" : witness);
}

// ----- Mobius calculus on boundary samples ---------------------------------

std::vector<ReducedWord> rand_elements(SplitMix64& rng, const Rank& rank, int count,
                                       std::size_t max_len) {
  std::vector<ReducedWord> out;
  for (int i = 0; i < count; ++i) out.push_back(rand_word(rng, rank, max_len));
  return out;
}

void suite_mobius(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x6d6f6273ULL);

  BoundarySample sample = build_boundary_sample(
      rank, default_seed_points(rank, 7, rng.next()),
      rand_elements(rng, rank, opt.sample_elements, 4));

  bool ok = true;
  std::string witness;
  for (std::size_t k = 0; k < sample.elements.size() && ok; ++k) {
    auto verdict = is_mobius<ExactScalar>(sample.space, sample.maps[k], ExactScalar(0));
    if (!verdict.mobius) {
      ok = false;
      witness = "g=" + w(sample.elements[k]) + " deviation=" + verdict.max_deviation.to_string();
    }
  }
  rep.line(ok, "mobius.group-action",
           ok ? plural(static_cast<int>(sample.elements.size()), "element") +
                    " preserve cross-ratios exactly on a " +
                    std::to_string(sample.points.size()) + "-point sample"
              : witness);

  ok = true;
  for (std::size_t k = 0; k < sample.elements.size() && ok; ++k) {
    const PointMap& map = sample.maps[k];
    const auto& dom = map.domain();
    for (std::size_t idx = 0; idx < dom.size() && ok; ++idx) {
      std::size_t p = dom[idx];
      std::size_t u = dom[(idx + 1) % dom.size()], v = dom[(idx + 2) % dom.size()];
      if (u == p || v == p || u == v) continue;
      ExactScalar lhs = metric_derivative(sample.space, map, p, u, v);
      ExactScalar rhs = derivative_on_tree(rank, sample.elements[k], sample.points[p]);
      if (!(lhs == rhs)) {
        ok = false;
        witness = "g=" + w(sample.elements[k]) + " x=" + format_boundary_point(sample.points[p]);
      }
    }
  }
  rep.line(ok, "mobius.derivative-crosscheck",
           ok ? "metric derivative = q^(2(g^-1,xi)-|g|) at every domain point" : witness);

  ok = true;
  for (std::size_t k = 0; k < sample.elements.size() && ok; ++k) {
    auto table = derivative_table(sample.space, sample.maps[k]);
    auto mv = check_mean_value(sample.space, sample.maps[k], table);
    if (!mv.max_residual.is_zero()) {
      ok = false;
      witness = "g=" + w(sample.elements[k]) + " residual=" + mv.max_residual.to_string();
    }
  }
  rep.line(ok, "mobius.mean-value",
           ok ? "d^2(gx,gy) = |g'|(x)|g'|(y) d^2(x,y), residual 0" : witness);

  ok = true;
  for (int t = 0; t < 3 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 4), h = rand_word(rng, rank, 4);
    BoundarySample triple =
        build_boundary_sample(rank, default_seed_points(rank, 6, rng.next()), {g, h, g * h});
    auto res = check_chain_rule(triple.space, triple.maps[0], triple.maps[1]);
    if (!res.max_residual.is_zero()) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h) + " residual=" + res.max_residual.to_string();
    }
  }
  rep.line(ok, "mobius.chain-rule", ok ? "|(gh)'| = |g'|(h.) |h'|, residual 0 on 3 pairs" : witness);

  {
    // negative control: a transposition on a generic space is not Mobius
    std::size_t m = 6;
    std::vector<std::string> labels;
    std::vector<ExactScalar> dist(m * m, ExactScalar(0));
    for (std::size_t i = 0; i < m; ++i) labels.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        ExactScalar d = ExactScalar(1) + ExactScalar(1 + static_cast<long>(rng.below(997)), 2000);
        dist[i * m + j] = d;
        dist[j * m + i] = d;
      }
    MetricSpace<ExactScalar> generic(std::move(labels), std::move(dist));
    auto verdict = is_mobius<ExactScalar>(generic, PointMap::transposition(m, 0, 1), ExactScalar(0));
    bool broke = !verdict.mobius && verdict.max_deviation > ExactScalar(0);
    rep.line(broke, "mobius.negative-control",
             broke ? "transposition on a generic 6-point space breaks cross-ratios"
                   : "transposition unexpectedly preserved cross-ratios");
  }

  {
    // negative control: scaling one derivative value must show up
    const PointMap& map = sample.maps[0];
    auto table = derivative_table(sample.space, map);
    table[map.domain()[0]] *= ExactScalar(2);
    auto mv = check_mean_value(sample.space, map, table);
    bool caught = mv.max_residual > ExactScalar(0);
    rep.line(caught, "mobius.perturbed-derivative",
             caught ? "scaled derivative produces a positive mean-value residual"
                    : "perturbation went unnoticed");
  }

  {
    PointMap id = PointMap::identity(sample.points.size());
    auto table = derivative_table(sample.space, id);
    bool all_one = true;
    for (std::size_t p = 0; p < sample.points.size(); ++p)
      all_one = all_one && table[p] == ExactScalar(1);
    rep.line(all_one, "mobius.isometry",
             all_one ? "identity has |g'| = 1 everywhere (max <= 1: isometry test)"
                     : "identity derivative drifted");
  }
}

// ----- inequality suite ----------------------------------------------------

void suite_inequalities(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x696e6571ULL);
  BoundarySample sample = build_boundary_sample(
      rank, default_seed_points(rank, 7, rng.next()),
      rand_elements(rng, rank, opt.sample_elements, 4));

  bool ok = true;
  std::string witness;
  for (std::size_t k = 0; k < sample.elements.size() && ok; ++k) {
    auto res = lipschitz_bound_check(sample.space, sample.maps[k]);
    if (!res.holds) {
      ok = false;
      witness = "g=" + w(sample.elements[k]) + " pair=(" + sample.space.label(res.x) + ", " +
                sample.space.label(res.y) + ")";
    }
  }
  rep.line(ok, "inequalities.lipschitz",
           ok ? "sqrt|g'| Lipschitz bound holds for every element" : witness);

  ok = true;
  for (std::size_t k = 0; k < sample.elements.size() && ok; ++k) {
    auto res = cocycle_bound_check(sample.space, sample.maps[k]);
    if (!res.holds) {
      ok = false;
      witness = "g=" + w(sample.elements[k]);
    }
  }
  rep.line(ok, "inequalities.cocycle-bound",
           ok ? "(8/diam)(max/min) bound on the inverse derivative holds" : witness);

  {
    std::vector<std::string> labels{"p0", "p1", "p2", "p3"};
    std::vector<ExactScalar> dist(16, ExactScalar(0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) dist[static_cast<std::size_t>(i * 4 + j)] = ExactScalar(1);
    MetricSpace<ExactScalar> equilateral(std::move(labels), std::move(dist));
    bool eq_ok = kappa(equilateral) == ExactScalar(1);

    ExactScalar k = kappa(sample.space);
    bool power = false;
    ExactScalar probe(1);
    for (int e = 0; e <= 80 && !power; ++e) {
      power = k == probe;
      probe /= ExactScalar(rank.q());
    }
    rep.line(eq_ok && power, "inequalities.kappa",
             eq_ok && power ? "equilateral kappa = 1; sample kappa = " + k.to_string() +
                                  ", a power of 1/q"
                            : "kappa value off");
  }

  {
    PointMap id = PointMap::identity(sample.points.size());
    auto base = alpha_bound_check(sample.space, id);

    // two deep twin points swapped: tiny displacement, far below kappa/10
    std::vector<BoundaryPoint> pts = default_seed_points(rank, 6, 0x747769ULL);
    ReducedWord stem;
    for (;;) {
      stem = random_reduced_word(rng, rank, 7);
      if (stem.last() != static_cast<Letter>(1) && stem.last() != static_cast<Letter>(3)) break;
    }
    std::vector<Letter> deep = stem.letters();
    deep.push_back(0);  // ... a
    ReducedWord wdeep = ReducedWord::from_reduced(deep);
    BoundaryPoint twin_a(wdeep, ReducedWord::from_reduced({0}));   // w a^inf
    BoundaryPoint twin_b(wdeep, ReducedWord::from_reduced({2}));   // w b^inf
    pts.push_back(twin_a);
    pts.push_back(twin_b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::size_t m = pts.size();
    std::vector<std::string> labels;
    std::vector<ExactScalar> dist(m * m, ExactScalar(0));
    for (std::size_t i = 0; i < m; ++i) labels.push_back(format_boundary_point(pts[i]));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        ExactScalar d = visual_distance(rank, pts[i], pts[j]);
        dist[i * m + j] = d;
        dist[j * m + i] = d;
      }
    MetricSpace<ExactScalar> twin_space(std::move(labels), std::move(dist));
    std::size_t ia = static_cast<std::size_t>(
        std::lower_bound(pts.begin(), pts.end(), twin_a) - pts.begin());
    std::size_t ib = static_cast<std::size_t>(
        std::lower_bound(pts.begin(), pts.end(), twin_b) - pts.begin());
    auto near = alpha_bound_check(twin_space, PointMap::transposition(m, ia, ib));

    auto far = alpha_bound_check(sample.space, sample.maps[0]);

    bool ok3 = base.applicable && base.holds && near.applicable && near.holds && !far.applicable;
    rep.line(ok3, "inequalities.alpha-bound",
             ok3 ? "identity and deep-twin swap inside the bound; far map gated out"
                 : "alpha bound bookkeeping off (displacement " + near.displacement.to_string() +
                       ", kappa " + near.kappa_value.to_string() + ")");
  }
}

// ----- Besov / l^p bridge --------------------------------------------------

void suite_besov(Reporter& rep, const VerifyOptions& opt, const Rank& rank) {
  SplitMix64 rng(opt.seed ^ 0x62657376ULL);

  bool ok = true;
  std::string witness;
  for (int t = 0; t < 20 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 25);
    CayleyBall ball(rank, static_cast<long>(g.length()) + 1);
    for (long p : {2L, 3L}) {
      if (!(ep_seminorm_p(busemann_function(ball, g), p) ==
            ExactScalar(static_cast<long>(g.length())))) {
        ok = false;
        witness = "g=" + w(g) + " p=" + std::to_string(p);
        break;
      }
    }
  }
  rep.line(ok, "besov.ep-linear", ok ? "E_p(, g)^p = |g| on 20 words, p in {2,3}" : witness);

  ok = true;
  for (int t = 0; t < 8 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 20);
    CayleyBall ball(rank, static_cast<long>(g.length()) + 1);
    GroupFunction phi = busemann_function(ball, g);
    CylinderFunction f = boundary_extension(phi, static_cast<long>(g.length()));
    for (long p : {2L, 3L}) {
      if (!(besov_seminorm_p(f, p) == cocycle_lp_norm_p(rank, g, p))) {
        ok = false;
        witness = "g=" + w(g) + " p=" + std::to_string(p);
        break;
      }
    }
  }
  rep.line(ok, "besov.bridge",
           ok ? "Besov seminorm of the extension = |c_g|_p^p on 8 words, p in {2,3}" : witness);

  {
    CayleyBall ball(rank, 6);
    ExactScalar ind = ep_seminorm_p(GroupFunction::indicator_of_identity(ball), 2);
    ExactScalar cst = ep_seminorm_p(GroupFunction::constant(ball, ExactScalar(7, 3)), 3);
    std::map<ReducedWord, ExactScalar> sub;
    sub.emplace(ReducedWord(), ExactScalar(0));
    sub.emplace(random_reduced_word(rng, rank, 3), ExactScalar(1));
    ExactScalar bump = ep_seminorm_p(GroupFunction::structured(ball, std::move(sub), {}), 2);
    CylinderFunction flat = boundary_extension(GroupFunction::indicator_of_identity(ball), 3);
    bool zero_ext = besov_seminorm_p(flat, 2).is_zero();
    for (int t = 0; t < 10 && zero_ext; ++t)
      zero_ext = flat(rand_point(rng, rank)).is_zero();
    bool fine = ind == ExactScalar(rank.alphabet()) && cst.is_zero() && bump > ExactScalar(0) &&
                zero_ext;
    rep.line(fine, "besov.ep-anchors",
             fine ? "indicator = 2n, constants = 0, bumps > 0, indicator extends to 0"
                  : "anchor values off");
  }

  ok = true;
  for (int t = 0; t < 4 && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 6);
    ReducedWord h = rand_word(rng, rank, 10);
    CayleyBall ball(rank, static_cast<long>(h.length()) + 1);
    CylinderFunction f = boundary_extension(busemann_function(ball, h), static_cast<long>(h.length()));
    if (!(besov_seminorm_p(pullback(g, f), 2) == besov_seminorm_p(f, 2))) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h);
    }
  }
  rep.line(ok, "besov.pullback-invariance",
           ok ? "Besov seminorm invariant under f -> f(g^-1 .) on 4 instances" : witness);

  ok = true;
  for (int t = 0; t < opt.identity_checks && ok; ++t) {
    ReducedWord g = rand_word(rng, rank, 5), h = rand_word(rng, rank, 5);
    ReducedWord x1 = g * h * rand_word(rng, rank, 3) * random_reduced_word(rng, rank, 12);
    ReducedWord x2 = rand_word(rng, rank, 16);
    if (x1.length() < 12 || x2.length() < 12) continue;  // stay deep in the ball interior
    auto psi = [&](const ReducedWord& x) {
      return gromov_product(g * h, x) - gromov_product(h, g.inverse() * x) - gromov_product(g, x);
    };
    if (psi(x1) != psi(x2)) {
      ok = false;
      witness = "g=" + w(g) + " h=" + w(h) + " x=" + w(x2);
    }
  }
  rep.line(ok, "besov.busemann-cocycle-mod-constants",
           ok ? "(gh,x) - (h,g^-1 x) - (g,x) constant deep in the ball" : witness);
}

}  // namespace

bool run_verify(const VerifyOptions& opt, std::ostream& os) {
  Rank rank(opt.rank_n);
  os << "verify: rank n = " << opt.rank_n << " (q = " << rank.q() << "), seed = " << opt.seed
     << (opt.perturb ? ", fault injection ON" : "") << "\n";

  Reporter rep{os};
  suite_words(rep, opt, rank);
  suite_cylinders(rep, opt, rank);
  suite_levelsets(rep, opt, rank);
  suite_poisson(rep, opt, rank);
  suite_radon_nikodym(rep, opt, rank);
  suite_invariance(rep, opt, rank);
  suite_norms(rep, opt, rank);
  suite_mobius(rep, opt, rank);
  suite_inequalities(rep, opt, rank);
  suite_besov(rep, opt, rank);

  os << (rep.failures == 0 ? "PASS" : "FAIL") << ": " << (rep.checks - rep.failures) << "/"
     << rep.checks << " checks\n";
  return rep.failures == 0;
}

}  // namespace fgb
