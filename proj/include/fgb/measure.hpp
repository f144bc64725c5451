#pragma once

#include <utility>
#include <vector>

#include "fgb/boundary.hpp"
#include "fgb/cylinders.hpp"
#include "fgb/scalar.hpp"
#include "fgb/words.hpp"

namespace fgb {

// ----- the visual measure mu on the boundary ------------------------------
//
// mu is the unique measure with mu(Omega_x) = (q/(q+1)) q^{-|x|} for x != e
// and mu(Omega) = 1: mass splits evenly among the q (resp. 2n at the root)
// continuations at every vertex.

ExactScalar mu_cylinder(const Rank& rank, const ReducedWord& x);
ExactScalar mu_set(const CylinderSet& a);

// Poisson kernel P_g(xi) = q^{-|g| + 2 (g, xi)}.
ExactScalar poisson_kernel(const Rank& rank, const ReducedWord& g, const BoundaryPoint& xi);
// Exact value of the integral of P_g over the whole boundary (equals 1).
ExactScalar poisson_integral(const Rank& rank, const ReducedWord& g);

// Radon-Nikodym consistency data for the boundary action: returns the pair
//   ( mu(g . Omega_x),  integral over Omega_x of P_{g^{-1}} dmu ),
// which agree exactly; the second component is the derivative formula
// |g'| = P_{g^{-1}} integrated cylinder-wise.
std::pair<ExactScalar, ExactScalar> radon_nikodym_check(const Rank& rank, const ReducedWord& g,
                                                        const ReducedWord& x);

// Derivative of the boundary action at xi: q^{2 (g^{-1}, xi) - |g|}, i.e. the
// Poisson kernel of g^{-1}.
ExactScalar derivative_on_tree(const Rank& rank, const ReducedWord& g, const BoundaryPoint& xi);

// mu of one level set of xi -> (g, xi): for 0 <= i <= |g| (g != identity),
//   mu{(g, .) = i} = (q/(q+1)) q^{-i}          at i = 0 and i = |g|,
//                  = ((q-1)/(q+1)) q^{-i}      in between.
ExactScalar gromov_level_measure(const Rank& rank, long glen, long i);
ExactScalar gromov_level_measure(const Rank& rank, const ReducedWord& g, long i);

// ----- the invariant measure nu on Omega x Omega --------------------------
//
// d nu = q^{2 (xi, omega)} dmu dmu is invariant under the diagonal action.

// nu(Omega_x times Omega_y): q^{2 lcp} mu mu for non-nested labels, +inf when
// one label is a prefix of the other (the rectangle meets every level set).
ExactScalar nu_of_rectangle(const Rank& rank, const ReducedWord& x, const ReducedWord& y);

// nu of the level set K_n = {(xi, omega) = n}: q/(q+1) at n = 0,
// ((q-1)/(q+1)) q^n for n >= 1. Grows: nu is infinite but sigma-finite.
ExactScalar nu_levelset(const Rank& rank, long n);

struct LevelSetRow {
  long n;
  ExactScalar mass;         // nu(K_n)
  ExactScalar cumulative;   // nu(K_0 ... K_n)
};
struct LevelSetTable {
  long q;
  std::vector<LevelSetRow> rows;
};
LevelSetTable levelset_table(const Rank& rank, long n_max);

// nu(union of K_m over m < n) = q^n / (q+1) for n >= 1 (tail growth rate of
// the weak-L^1-type bound).
ExactScalar tail_distribution(const Rank& rank, long n);

// mu of the visual ball B(xi, q^{-n}) = {omega : (xi, omega) >= n}: equals
// mu(Omega_{xi|n}); for n >= 1 this is (q/(q+1)) q^{-n}, independent of xi
// (Ahlfors regularity of exponent 1 with constant q/(q+1)).
ExactScalar ball_measure(const Rank& rank, const BoundaryPoint& xi, long n);

// ----- cocycle L^p norms ---------------------------------------------------
//
// c_g(xi, omega) = (g, xi) - (g, omega) has
//   ||c_g||_p^p = sum over i != j of |i - j|^p q^{2 min(i,j)} mu_i mu_j,
// with mu_i the level masses above. The closed O(|g|) form groups pairs by
// the gap k = |i - j|:
//   ||c_g||_p^p = 2/(q+1)^2 * sum_{k=1}^{N} k^p q^{-k}
//                 [ (q-1)^2 (N-k+1) + 2(q-1) + [k = N] ],  N = |g|.

ExactScalar cocycle_lp_norm_p(const Rank& rank, long glen, long p);
ExactScalar cocycle_lp_norm_p(const Rank& rank, const ReducedWord& g, long p);
// Direct O(|g|^2) evaluation of the double sum; retained as a cross-check.
ExactScalar cocycle_lp_norm_p_naive(const Rank& rank, long glen, long p);
// Floating-point path for non-integer p (relative accuracy well inside 1e-9).
double cocycle_lp_norm_real(const Rank& rank, long glen, double p);

// S_N = sum_{i,j=0}^{N} |i-j|^p q^{-|i-j|}; the norm is bracketed by
//   ((q-1)/(q+1))^2 S_N <= ||c_g||_p^p <= (q/(q+1))^2 S_N.
ExactScalar s_sum(long n, long p, long q);
// S_0 .. S_n via the recurrence S_{N+1} = S_N + 2 sum_{i<=N+1} i^p q^{-i}.
std::vector<ExactScalar> s_sum_table(long n_max, long p, long q);
// sum_{i>=1} i^p q^{-i}, exact (Eulerian-polynomial form of Li_{-p}(1/q)).
ExactScalar power_series_moment(long p, long q);

// ----- locally constant functions and kernels ------------------------------

struct CylinderPiece {
  CylinderSet set;
  ExactScalar value;
};

// A locally constant function on the boundary: finitely many disjoint
// cylinder-set pieces covering Omega. Keeping pieces coarse (rather than
// expanding to a fixed depth) is what makes deep pullbacks and Besov
// integrals affordable.
class CylinderFunction {
 public:
  // Validates that the pieces partition the boundary; throws
  // std::invalid_argument if they overlap or leave a gap.
  CylinderFunction(Rank rank, std::vector<CylinderPiece> pieces);

  static CylinderFunction constant(Rank rank, ExactScalar v);
  static CylinderFunction indicator(const CylinderSet& a);
  // One value per reduced word of the given length, in lexicographic order.
  static CylinderFunction from_depth_table(const Rank& rank, std::size_t depth,
                                           const std::vector<ExactScalar>& values);

  Rank rank() const { return rank_; }
  const std::vector<CylinderPiece>& pieces() const { return pieces_; }
  std::size_t depth() const;
  ExactScalar operator()(const BoundaryPoint& xi) const;

 private:
  struct Trusted {};
  CylinderFunction(Trusted, Rank rank, std::vector<CylinderPiece> pieces);
  friend CylinderFunction pullback(const ReducedWord& g, const CylinderFunction& f);

  Rank rank_;
  std::vector<CylinderPiece> pieces_;
};

// (g . f)(xi) = f(g^{-1} xi); pieces map through the set-level action.
CylinderFunction pullback(const ReducedWord& g, const CylinderFunction& f);

struct KernelCell {
  CylinderSet a, b;
  ExactScalar value;
};

// A locally constant function on Omega x Omega with rectangle support cells.
// The function is 0 outside the listed cells; zero-valued and empty cells are
// dropped on construction. Cells must be pairwise disjoint rectangles.
class CylinderKernel {
 public:
  CylinderKernel(Rank rank, std::vector<KernelCell> cells);
  static CylinderKernel zero(Rank rank);

  Rank rank() const { return rank_; }
  const std::vector<KernelCell>& cells() const { return cells_; }
  ExactScalar operator()(const BoundaryPoint& xi, const BoundaryPoint& omega) const;

 private:
  struct Trusted {};
  CylinderKernel(Trusted, Rank rank, std::vector<KernelCell> cells);
  friend CylinderKernel pullback(const ReducedWord& g, const CylinderKernel& f);
  friend CylinderKernel difference_kernel(const CylinderFunction& f, long p);

  Rank rank_;
  std::vector<KernelCell> cells_;
};

// (g . F)(xi, omega) = F(g^{-1} xi, g^{-1} omega).
CylinderKernel pullback(const ReducedWord& g, const CylinderKernel& f);

// |f(xi) - f(omega)|^p as a kernel (off-diagonal cells of the piece grid);
// integrating it against nu is the Besov seminorm.
CylinderKernel difference_kernel(const CylinderFunction& f, long p);

// Integral against nu. Cells where the function vanishes contribute 0 even
// when their nu-measure is infinite (the 0 * inf convention); a nonzero value
// on a nested (infinite-measure) cell throws std::domain_error — the kernel
// is not nu-integrable at this resolution.
ExactScalar integrate_nu(const CylinderKernel& f);

}  // namespace fgb
