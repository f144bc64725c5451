#include "fgb/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fgb {

ExactScalar mu_cylinder(const Rank& rank, const ReducedWord& x) {
  if (x.is_identity()) return ExactScalar(1);
  long q = rank.q();
  return ExactScalar(q, q + 1) * q_pow(q, -static_cast<long>(x.length()));
}

ExactScalar mu_set(const CylinderSet& a) {
  ExactScalar m(0);
  for (const auto& t : a.terms()) m += mu_cylinder(a.rank(), t);
  return m;
}

ExactScalar poisson_kernel(const Rank& rank, const ReducedWord& g, const BoundaryPoint& xi) {
  long e = -static_cast<long>(g.length()) + 2 * gromov_product(g, xi);
  return q_pow(rank.q(), e);
}

ExactScalar gromov_level_measure(const Rank& rank, long glen, long i) {
  if (glen < 1) throw std::invalid_argument("gromov_level_measure: needs |g| >= 1");
  if (i < 0 || i > glen) throw std::invalid_argument("gromov_level_measure: level out of range");
  long q = rank.q();
  long num = (i == 0 || i == glen) ? q : q - 1;
  return ExactScalar(num, q + 1) * q_pow(q, -i);
}

ExactScalar gromov_level_measure(const Rank& rank, const ReducedWord& g, long i) {
  return gromov_level_measure(rank, static_cast<long>(g.length()), i);
}

ExactScalar poisson_integral(const Rank& rank, const ReducedWord& g) {
  if (g.is_identity()) return ExactScalar(1);
  long n = static_cast<long>(g.length());
  ExactScalar sum(0);
  for (long i = 0; i <= n; ++i)
    sum += q_pow(rank.q(), 2 * i - n) * gromov_level_measure(rank, n, i);
  return sum;
}

namespace {

// integral over Omega_x of q^{-|h| + 2 (h, xi)} dmu(xi), exact, by slicing
// Omega_x along the level sets of (h, .).
ExactScalar poisson_cylinder_integral(const Rank& rank, const ReducedWord& h,
                                      const ReducedWord& x) {
  long q = rank.q();
  long l = gromov_product(h, x);
  long hl = static_cast<long>(h.length());
  if (!(l == static_cast<long>(x.length()) && l < hl)) {
    // (h, xi) is constant (= l) on all of Omega_x.
    return q_pow(q, 2 * l - hl) * mu_cylinder(rank, x);
  }
  // x is a proper prefix of h: levels |x| .. |h| occur inside Omega_x.
  ExactScalar sum(0);
  for (long i = l; i <= hl; ++i) {
    ExactScalar slice = mu_cylinder(rank, h.prefix(static_cast<std::size_t>(i)));
    if (i < hl) slice -= mu_cylinder(rank, h.prefix(static_cast<std::size_t>(i) + 1));
    sum += q_pow(q, 2 * i - hl) * slice;
  }
  return sum;
}

}  // namespace

std::pair<ExactScalar, ExactScalar> radon_nikodym_check(const Rank& rank, const ReducedWord& g,
                                                        const ReducedWord& x) {
  ExactScalar lhs = mu_set(image_of_cylinder(rank, g, x));
  ExactScalar rhs = poisson_cylinder_integral(rank, g.inverse(), x);
  return {lhs, rhs};
}

ExactScalar derivative_on_tree(const Rank& rank, const ReducedWord& g, const BoundaryPoint& xi) {
  return poisson_kernel(rank, g.inverse(), xi);
}

ExactScalar nu_of_rectangle(const Rank& rank, const ReducedWord& x, const ReducedWord& y) {
  if (x.is_prefix_of(y) || y.is_prefix_of(x)) return ExactScalar::infinity();
  long lcp = gromov_product(x, y);
  return q_pow(rank.q(), 2 * lcp) * mu_cylinder(rank, x) * mu_cylinder(rank, y);
}

ExactScalar nu_levelset(const Rank& rank, long n) {
  if (n < 0) throw std::invalid_argument("nu_levelset: negative level");
  long q = rank.q();
  if (n == 0) return ExactScalar(q, q + 1);
  return ExactScalar(q - 1, q + 1) * q_pow(q, n);
}

LevelSetTable levelset_table(const Rank& rank, long n_max) {
  LevelSetTable table;
  table.q = rank.q();
  ExactScalar cum(0);
  for (long n = 0; n <= n_max; ++n) {
    ExactScalar m = nu_levelset(rank, n);
    cum += m;
    table.rows.push_back({n, m, cum});
  }
  return table;
}

ExactScalar tail_distribution(const Rank& rank, long n) {
  if (n < 1) throw std::invalid_argument("tail_distribution: needs n >= 1");
  long q = rank.q();
  return q_pow(q, n) / ExactScalar(q + 1);
}

ExactScalar ball_measure(const Rank& rank, const BoundaryPoint& xi, long n) {
  if (n < 0) throw std::invalid_argument("ball_measure: negative radius exponent");
  std::vector<Letter> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) prefix.push_back(xi.at(static_cast<std::size_t>(i)));
  return mu_cylinder(rank, ReducedWord::from_reduced(std::move(prefix)));
}

// ----- cocycle norms -------------------------------------------------------

ExactScalar cocycle_lp_norm_p(const Rank& rank, long glen, long p) {
  if (p < 1) throw std::invalid_argument("cocycle_lp_norm_p: needs integer p >= 1");
  if (glen < 0) throw std::invalid_argument("cocycle_lp_norm_p: negative length");
  if (glen == 0) return ExactScalar(0);
  long q = rank.q();
  // 2/(q+1)^2 sum_k k^p q^{-k} W_k over the common denominator (q+1)^2 q^N.
  mpz_class acc = 0, pw = 1;  // pw = q^{N-k}
  for (long k = glen; k >= 1; --k) {
    mpz_class kp;
    mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(p));
    mpz_class w = mpz_class(q - 1) * (q - 1) * (glen - k + 1) + 2 * (q - 1) + (k == glen ? 1 : 0);
    acc += kp * w * pw;
    if (k > 1) pw *= q;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(glen));
  den *= mpz_class(q + 1) * (q + 1);
  mpq_class r(2 * acc, den);
  r.canonicalize();
  return ExactScalar(std::move(r));
}

ExactScalar cocycle_lp_norm_p(const Rank& rank, const ReducedWord& g, long p) {
  return cocycle_lp_norm_p(rank, static_cast<long>(g.length()), p);
}

ExactScalar cocycle_lp_norm_p_naive(const Rank& rank, long glen, long p) {
  if (p < 1) throw std::invalid_argument("cocycle_lp_norm_p_naive: needs integer p >= 1");
  if (glen == 0) return ExactScalar(0);
  ExactScalar sum(0);
  for (long i = 0; i <= glen; ++i)
    for (long j = 0; j <= glen; ++j) {
      if (i == j) continue;
      sum += ExactScalar(std::labs(i - j)).pow(p) * q_pow(rank.q(), 2 * std::min(i, j)) *
             gromov_level_measure(rank, glen, i) * gromov_level_measure(rank, glen, j);
    }
  return sum;
}

double cocycle_lp_norm_real(const Rank& rank, long glen, double p) {
  if (p < 1.0) throw std::invalid_argument("cocycle_lp_norm_real: needs p >= 1");
  if (glen <= 0) return 0.0;
  long q = rank.q();
  long double lq = std::log(static_cast<long double>(q));
  long double acc = 0.0L;
  for (long k = 1; k <= glen; ++k) {
    long double w = static_cast<long double>(q - 1) * (q - 1) * (glen - k + 1) + 2.0L * (q - 1) +
                    (k == glen ? 1.0L : 0.0L);
    acc += std::pow(static_cast<long double>(k), static_cast<long double>(p)) *
           std::exp(-k * lq) * w;
  }
  long double qq = static_cast<long double>(q + 1) * (q + 1);
  return static_cast<double>(2.0L * acc / qq);
}

ExactScalar s_sum(long n, long p, long q) {
  if (q < 2) throw std::invalid_argument("s_sum: needs q >= 2");
  if (p < 1) throw std::invalid_argument("s_sum: needs integer p >= 1");
  if (n < 0) throw std::invalid_argument("s_sum: negative N");
  if (n == 0) return ExactScalar(0);
  mpz_class acc = 0, pw = 1;  // pw = q^{n-d}
  for (long d = n; d >= 1; --d) {
    mpz_class dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(p));
    acc += 2 * (n + 1 - d) * dp * pw;
    if (d > 1) pw *= q;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
  mpq_class r(acc, den);
  r.canonicalize();
  return ExactScalar(std::move(r));
}

std::vector<ExactScalar> s_sum_table(long n_max, long p, long q) {
  if (q < 2 || p < 1 || n_max < 0) throw std::invalid_argument("s_sum_table: bad parameters");
  std::vector<ExactScalar> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.push_back(ExactScalar(0));
  mpq_class s = 0, t = 0, qpow = 1;
  mpq_class qinv(1, q);
  for (long n = 1; n <= n_max; ++n) {
    qpow *= qinv;
    mpz_class np;
    mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(p));
    t += mpq_class(np) * qpow;
    s += 2 * t;
    out.push_back(ExactScalar(mpq_class(s)));
  }
  return out;
}

ExactScalar power_series_moment(long p, long q) {
  if (q < 2) throw std::invalid_argument("power_series_moment: needs q >= 2");
  if (p < 0) throw std::invalid_argument("power_series_moment: negative p");
  // Eulerian triangle row A(p, k), k = 0..p-1 (row {1} for p = 0).
  std::vector<mpz_class> row{1};
  for (long n = 1; n <= p; ++n) {
    std::vector<mpz_class> next(static_cast<std::size_t>(n), 0);
    for (long k = 0; k < n; ++k) {
      mpz_class a = (k < static_cast<long>(row.size())) ? row[static_cast<std::size_t>(k)] : mpz_class(0);
      mpz_class b = (k >= 1) ? row[static_cast<std::size_t>(k - 1)] : mpz_class(0);
      next[static_cast<std::size_t>(k)] = (k + 1) * a + (n - k) * b;
    }
    row = std::move(next);
  }
  // sum_{i>=1} i^p x^i = sum_k A(p,k) x^{k+1} / (1-x)^{p+1} at x = 1/q.
  mpq_class x(1, q), num = 0, xp = x;
  for (const auto& a : row) {
    num += mpq_class(a) * xp;
    xp *= x;
  }
  mpq_class one_minus_x = mpq_class(q - 1, q);
  mpq_class den = 1;
  for (long i = 0; i <= p; ++i) den *= one_minus_x;
  mpq_class r = num / den;
  return ExactScalar(std::move(r));
}

// ----- locally constant functions ------------------------------------------

CylinderFunction::CylinderFunction(Rank rank, std::vector<CylinderPiece> pieces)
    : rank_(rank), pieces_(std::move(pieces)) {
  std::erase_if(pieces_, [](const CylinderPiece& p) { return p.set.is_empty(); });
  ExactScalar total(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].set.rank() == rank_))
      throw std::invalid_argument("CylinderFunction: rank mismatch");
    if (pieces_[i].value.is_infinite())
      throw std::invalid_argument("CylinderFunction: values must be finite");
    total += mu_set(pieces_[i].set);
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (pieces_[i].set.intersects(pieces_[j].set))
        throw std::invalid_argument("CylinderFunction: pieces overlap");
  }
  if (!(total == ExactScalar(1)))
    throw std::invalid_argument("CylinderFunction: pieces do not partition the boundary");
}

CylinderFunction::CylinderFunction(Trusted, Rank rank, std::vector<CylinderPiece> pieces)
    : rank_(rank), pieces_(std::move(pieces)) {}

CylinderFunction CylinderFunction::constant(Rank rank, ExactScalar v) {
  std::vector<CylinderPiece> pieces;
  pieces.push_back({CylinderSet::whole(rank), std::move(v)});
  return CylinderFunction(Trusted{}, rank, std::move(pieces));
}

CylinderFunction CylinderFunction::indicator(const CylinderSet& a) {
  std::vector<CylinderPiece> pieces;
  if (!a.is_empty()) pieces.push_back({a, ExactScalar(1)});
  CylinderSet off = a.complemented();
  if (!off.is_empty()) pieces.push_back({off, ExactScalar(0)});
  return CylinderFunction(Trusted{}, a.rank(), std::move(pieces));
}

CylinderFunction CylinderFunction::from_depth_table(const Rank& rank, std::size_t depth,
                                                    const std::vector<ExactScalar>& values) {
  if (depth == 0) {
    if (values.size() != 1)
      throw std::invalid_argument("CylinderFunction: depth-0 table needs exactly one value");
    return constant(rank, values[0]);
  }
  std::vector<ReducedWord> words = words_of_length(rank, depth);
  if (words.size() != values.size())
    throw std::invalid_argument("CylinderFunction: table size does not match word count");
  std::vector<CylinderPiece> pieces;
  pieces.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (values[i].is_infinite())
      throw std::invalid_argument("CylinderFunction: values must be finite");
    pieces.push_back({CylinderSet::cylinder(rank, words[i]), values[i]});
  }
  return CylinderFunction(Trusted{}, rank, std::move(pieces));
}

std::size_t CylinderFunction::depth() const {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.set.depth());
  return d;
}

ExactScalar CylinderFunction::operator()(const BoundaryPoint& xi) const {
  for (const auto& p : pieces_)
    if (p.set.contains(xi)) return p.value;
  throw std::logic_error("CylinderFunction: point escaped the partition");
}

CylinderFunction pullback(const ReducedWord& g, const CylinderFunction& f) {
  std::vector<CylinderPiece> pieces;
  pieces.reserve(f.pieces().size());
  for (const auto& p : f.pieces())
    pieces.push_back({image_of_set(g, p.set), p.value});
  return CylinderFunction(CylinderFunction::Trusted{}, f.rank(), std::move(pieces));
}

// ----- kernels on Omega x Omega --------------------------------------------

CylinderKernel::CylinderKernel(Rank rank, std::vector<KernelCell> cells)
    : rank_(rank), cells_(std::move(cells)) {
  std::erase_if(cells_, [](const KernelCell& c) {
    return c.a.is_empty() || c.b.is_empty() || c.value.is_zero();
  });
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!(cells_[i].a.rank() == rank_) || !(cells_[i].b.rank() == rank_))
      throw std::invalid_argument("CylinderKernel: rank mismatch");
    if (cells_[i].value.is_infinite())
      throw std::invalid_argument("CylinderKernel: values must be finite");
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
      if (cells_[i].a.intersects(cells_[j].a) && cells_[i].b.intersects(cells_[j].b))
        throw std::invalid_argument("CylinderKernel: support cells overlap");
  }
}

CylinderKernel::CylinderKernel(Trusted, Rank rank, std::vector<KernelCell> cells)
    : rank_(rank), cells_(std::move(cells)) {}

CylinderKernel CylinderKernel::zero(Rank rank) {
  return CylinderKernel(Trusted{}, rank, {});
}

ExactScalar CylinderKernel::operator()(const BoundaryPoint& xi, const BoundaryPoint& omega) const {
  for (const auto& c : cells_)
    if (c.a.contains(xi) && c.b.contains(omega)) return c.value;
  return ExactScalar(0);
}

CylinderKernel pullback(const ReducedWord& g, const CylinderKernel& f) {
  std::vector<KernelCell> cells;
  cells.reserve(f.cells().size());
  for (const auto& c : f.cells())
    cells.push_back({image_of_set(g, c.a), image_of_set(g, c.b), c.value});
  return CylinderKernel(CylinderKernel::Trusted{}, f.rank(), std::move(cells));
}

CylinderKernel difference_kernel(const CylinderFunction& f, long p) {
  if (p < 1) throw std::invalid_argument("difference_kernel: needs integer p >= 1");
  const auto& pieces = f.pieces();
  std::vector<KernelCell> cells;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (i == j || pieces[i].value == pieces[j].value) continue;
      cells.push_back(
          {pieces[i].set, pieces[j].set, (pieces[i].value - pieces[j].value).abs().pow(p)});
    }
  return CylinderKernel(CylinderKernel::Trusted{}, f.rank(), std::move(cells));
}

ExactScalar integrate_nu(const CylinderKernel& f) {
  ExactScalar total(0);
  for (const auto& c : f.cells()) {
    // Construction dropped zero-valued cells, so a nested (infinite-measure)
    // term pair here cannot be cancelled by the 0 * inf convention.
    ExactScalar cell_measure(0);
    for (const auto& s : c.a.terms())
      for (const auto& t : c.b.terms()) {
        ExactScalar m = nu_of_rectangle(f.rank(), s, t);
        if (m.is_infinite())
          throw std::domain_error("integrate_nu: nonzero value on a nested cell — "
                                  "not nu-integrable at this resolution");
        cell_measure += m;
      }
    total += c.value * cell_measure;
  }
  return total;
}

}  // namespace fgb
