#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "fgb/measure.hpp"

using namespace fgb;

namespace {
const Rank r2(2);  // q = 3
ReducedWord W(const char* s) { return parse_word(r2, s); }
BoundaryPoint P(const char* s) { return parse_boundary_point(r2, s); }
ExactScalar Q(const char* s) { return ExactScalar::from_string(s); }
}  // namespace

TEST_CASE("visual measure of cylinders") {
  CHECK(mu_cylinder(r2, ReducedWord()) == ExactScalar(1));
  CHECK(mu_cylinder(r2, W("a1")) == Q("1/4"));
  CHECK(mu_cylinder(r2, W("a1.a2")) == Q("1/12"));
  // additivity: the four letter cylinders partition Omega
  ExactScalar total(0);
  for (const char* s : {"a1", "A1", "a2", "A2"}) total += mu_cylinder(r2, W(s));
  CHECK(total == ExactScalar(1));
  CHECK(mu_set(CylinderSet::cylinder(r2, W("a1")).united(CylinderSet::cylinder(r2, W("a2")))) ==
        Q("1/2"));
  CHECK(mu_set(CylinderSet::whole(r2)) == ExactScalar(1));
  CHECK(mu_set(CylinderSet(r2)) == ExactScalar(0));
}

TEST_CASE("poisson kernel values and unit integral") {
  CHECK(poisson_kernel(r2, W("a1"), P("a1|(a2)^inf")) == ExactScalar(3));
  CHECK(poisson_kernel(r2, W("a1"), P("(a2)^inf")) == Q("1/3"));
  CHECK(poisson_kernel(r2, ReducedWord(), P("(a2)^inf")) == ExactScalar(1));
  for (const char* s : {"a1", "a1.a2", "a1.a2.A1", "a2.a1"})
    CHECK(poisson_integral(r2, W(s)) == ExactScalar(1));
  // kernel maximum q^{|g|} on the cylinder of g, minimum q^{-|g|} off it
  CHECK(poisson_kernel(r2, W("a1.a2"), P("a1|(a2)^inf")) == ExactScalar(9));
  CHECK(poisson_kernel(r2, W("a1.a2"), P("(A2)^inf")) == Q("1/9"));
}

TEST_CASE("derivative is the inverse kernel") {
  ReducedWord g = W("a1.a2");
  for (const char* s : {"(a1)^inf", "a1|(a2)^inf", "(a2.a1)^inf"}) {
    BoundaryPoint xi = P(s);
    CHECK(derivative_on_tree(r2, g, xi) == poisson_kernel(r2, g.inverse(), xi));
  }
}

TEST_CASE("radon-nikodym consistency") {
  auto [lhs, rhs] = radon_nikodym_check(r2, W("a1"), W("a2"));
  CHECK(lhs == Q("1/12"));  // mu(a1 . Omega_a2) = mu(Omega_{a1.a2})
  CHECK(rhs == Q("1/12"));
  // full cancellation case: A1 . Omega_a1 is the complement of Omega_A1
  auto [l2, r2v] = radon_nikodym_check(r2, W("A1"), W("a1"));
  CHECK(l2 == Q("3/4"));
  CHECK(l2 == r2v);
  // a few mixed cases
  for (const char* gs : {"a1", "A1.a2", "a2.a1.a2"})
    for (const char* xs : {"a1", "a2.a1", "A2"}) {
      auto [a, b] = radon_nikodym_check(r2, W(gs), W(xs));
      CHECK(a == b);
    }
}

TEST_CASE("gromov level measures") {
  // |g| = 2: masses (q/(q+1), (q-1)/(q+1) q^{-1}, q/(q+1) q^{-2})
  CHECK(gromov_level_measure(r2, 2, 0) == Q("3/4"));
  CHECK(gromov_level_measure(r2, 2, 1) == Q("1/6"));
  CHECK(gromov_level_measure(r2, 2, 2) == Q("1/12"));
  ExactScalar sum(0);
  for (long i = 0; i <= 5; ++i) sum += gromov_level_measure(r2, 5, i);
  CHECK(sum == ExactScalar(1));
  CHECK(gromov_level_measure(r2, W("a1.a2"), 1) == Q("1/6"));
}

TEST_CASE("nu of rectangles and level sets") {
  CHECK(nu_of_rectangle(r2, W("a1"), W("a2")) == Q("1/16"));
  CHECK(nu_of_rectangle(r2, W("a1.a2"), W("a1.a1")) == Q("9/144"));  // lcp 1
  CHECK(nu_of_rectangle(r2, W("a1"), W("a1")).is_infinite());        // nested
  CHECK(nu_of_rectangle(r2, W("a1"), W("a1.a2")).is_infinite());
  CHECK(nu_of_rectangle(r2, ReducedWord(), W("a1")).is_infinite());
  CHECK(nu_levelset(r2, 0) == Q("3/4"));
  CHECK(nu_levelset(r2, 1) == Q("3/2"));
  CHECK(nu_levelset(r2, 2) == Q("9/2"));
  CHECK(tail_distribution(r2, 1) == Q("3/4"));
  CHECK(tail_distribution(r2, 2) == Q("9/4"));
  auto table = levelset_table(r2, 6);
  CHECK(table.q == 3);
  REQUIRE(table.rows.size() == 7);
  ExactScalar cum(0);
  for (const auto& row : table.rows) {
    cum += row.mass;
    CHECK(row.mass == nu_levelset(r2, row.n));
    CHECK(row.cumulative == cum);
    CHECK(row.cumulative == tail_distribution(r2, row.n + 1));
  }
}

TEST_CASE("ball measure is Ahlfors regular") {
  BoundaryPoint xi = P("a1|(a2)^inf");
  CHECK(ball_measure(r2, xi, 0) == ExactScalar(1));
  for (long n = 1; n <= 10; ++n)
    CHECK(ball_measure(r2, xi, n) * q_pow(3, n) == Q("3/4"));
  // independent of the center
  CHECK(ball_measure(r2, P("(a1)^inf"), 4) == ball_measure(r2, P("(a2.A1)^inf"), 4));
}

TEST_CASE("cocycle norm closed form") {
  CHECK(cocycle_lp_norm_p(r2, 1, 2) == Q("3/8"));
  CHECK(cocycle_lp_norm_p(r2, W("a1"), 2) == Q("3/8"));
  // closed form against the O(N^2) double sum
  for (long p : {1L, 2L, 3L})
    for (long n = 1; n <= 12; ++n)
      CHECK(cocycle_lp_norm_p(r2, n, p) == cocycle_lp_norm_p_naive(r2, n, p));
  Rank r3(3);  // q = 5
  for (long n : {1L, 5L, 9L}) CHECK(cocycle_lp_norm_p(r3, n, 2) == cocycle_lp_norm_p_naive(r3, n, 2));
  // norm depends only on |g|
  CHECK(cocycle_lp_norm_p(r2, W("a1.a2.a1"), 2) == cocycle_lp_norm_p(r2, 3, 2));
}

TEST_CASE("S_N sums, recurrence and moments") {
  CHECK(s_sum(1, 2, 3) == Q("2/3"));
  auto table = s_sum_table(40, 2, 3);
  REQUIRE(table.size() == 41);
  CHECK(table[0] == ExactScalar(0));
  for (long n = 0; n <= 40; n += 8) CHECK(table[static_cast<std::size_t>(n)] == s_sum(n, 2, 3));
  // bracketing of the norm between ((q-1)/(q+1))^2 S and (q/(q+1))^2 S
  for (long n : {1L, 7L, 23L}) {
    ExactScalar norm = cocycle_lp_norm_p(r2, n, 2);
    ExactScalar s = table[static_cast<std::size_t>(n)];
    CHECK(Q("1/4") * s <= norm);
    CHECK(norm <= Q("9/16") * s);
  }
  CHECK(power_series_moment(1, 3) == Q("3/4"));
  CHECK(power_series_moment(2, 3) == Q("3/2"));
  CHECK(power_series_moment(3, 3) == Q("33/8"));
  // float path agrees with the exact one at integer p
  double exact = cocycle_lp_norm_p(r2, 20, 2).to_double();
  CHECK(cocycle_lp_norm_real(r2, 20, 2.0) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("cylinder functions evaluate, pull back and validate") {
  CylinderFunction ind = CylinderFunction::indicator(CylinderSet::cylinder(r2, W("a1")));
  CHECK(ind(P("a1|(a2)^inf")) == ExactScalar(1));
  CHECK(ind(P("(a2)^inf")) == ExactScalar(0));
  CylinderFunction g_ind = pullback(W("a2"), ind);
  // (g . f)(xi) = f(g^-1 xi): support moves to a2 Omega_a1 = Omega_{a2.a1}
  CHECK(g_ind(P("a2|(a1)^inf")) == ExactScalar(1));
  CHECK(g_ind(P("(a1)^inf")) == ExactScalar(0));
  for (const char* s : {"(a1)^inf", "a2|(a1)^inf", "(A2)^inf"}) {
    BoundaryPoint xi = P(s);
    CHECK(g_ind(xi) == ind(act(W("A2"), xi)));
  }
  // depth tables: 4 values at depth 1, lexicographic in the letter codes
  CylinderFunction f = CylinderFunction::from_depth_table(
      r2, 1, {ExactScalar(1), ExactScalar(2), ExactScalar(3), ExactScalar(4)});
  CHECK(f(P("(a1)^inf")) == ExactScalar(1));  // a1 < A1 < a2 < A2 in letter codes
  CHECK(f(P("(a2.a1)^inf")) == f(P("(a2.A1)^inf")));  // same first letter
  CHECK_THROWS_AS(CylinderFunction::from_depth_table(r2, 1, {ExactScalar(1)}),
                  std::invalid_argument);
  // pieces must partition the boundary
  std::vector<CylinderPiece> overlap{{CylinderSet::whole(r2), ExactScalar(1)},
                                     {CylinderSet::cylinder(r2, W("a1")), ExactScalar(2)}};
  CHECK_THROWS_AS(CylinderFunction(r2, overlap), std::invalid_argument);
  std::vector<CylinderPiece> gap{{CylinderSet::cylinder(r2, W("a1")), ExactScalar(1)}};
  CHECK_THROWS_AS(CylinderFunction(r2, gap), std::invalid_argument);
}

TEST_CASE("kernels integrate against nu") {
  // indicator of K_0 (distinct first letters): integral is nu(K_0) = 3/4
  std::vector<KernelCell> cells;
  for (const char* a : {"a1", "A1", "a2", "A2"})
    for (const char* b : {"a1", "A1", "a2", "A2"}) {
      if (std::string(a) == b) continue;
      cells.push_back({CylinderSet::cylinder(r2, W(a)), CylinderSet::cylinder(r2, W(b)),
                       ExactScalar(1)});
    }
  CylinderKernel k0(r2, cells);
  CHECK(integrate_nu(k0) == Q("3/4"));
  CHECK(k0(P("(a1)^inf"), P("(a2)^inf")) == ExactScalar(1));
  CHECK(k0(P("(a1)^inf"), P("a1|(a2)^inf")) == ExactScalar(0));
  CHECK(integrate_nu(CylinderKernel::zero(r2)) == ExactScalar(0));

  // a nonzero value on a nested rectangle is not integrable
  std::vector<KernelCell> bad{{CylinderSet::cylinder(r2, W("a1")),
                               CylinderSet::cylinder(r2, W("a1.a2")), ExactScalar(1)}};
  CHECK_THROWS_AS(integrate_nu(CylinderKernel(r2, bad)), std::domain_error);

  // overlapping cells are rejected
  std::vector<KernelCell> ov{{CylinderSet::whole(r2), CylinderSet::whole(r2), ExactScalar(1)},
                             {CylinderSet::cylinder(r2, W("a1")),
                              CylinderSet::cylinder(r2, W("a2")), ExactScalar(2)}};
  CHECK_THROWS_AS(CylinderKernel(r2, ov), std::invalid_argument);

  // difference kernel of the indicator: Besov p-seminorm is 2 nu(A x A^c) = 3/8
  CylinderFunction ind = CylinderFunction::indicator(CylinderSet::cylinder(r2, W("a1")));
  CHECK(integrate_nu(difference_kernel(ind, 2)) == Q("3/8"));
  CHECK(integrate_nu(difference_kernel(ind, 3)) == Q("3/8"));  // 0/1 valued
  CHECK(integrate_nu(difference_kernel(CylinderFunction::constant(r2, ExactScalar(7)), 2)) ==
        ExactScalar(0));

  // kernel pullback is the diagonal action
  CylinderKernel moved = pullback(W("a1"), k0);
  BoundaryPoint xi = P("(a2)^inf"), om = P("(A2)^inf");
  CHECK(moved(xi, om) == k0(act(W("A1"), xi), act(W("A1"), om)));
}
