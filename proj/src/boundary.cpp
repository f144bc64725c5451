#include "fgb/boundary.hpp"

#include <numeric>
#include <stdexcept>

namespace fgb {

namespace {

// Smallest divisor d of |w| such that w is a power of its length-d prefix.
std::size_t primitive_root_length(const ReducedWord& w) {
  std::size_t m = w.length();
  for (std::size_t d = 1; d < m; ++d) {
    if (m % d) continue;
    bool pow = true;
    for (std::size_t i = d; i < m && pow; ++i) pow = (w[i] == w[i - d]);
    if (pow) return d;
  }
  return m;
}

ReducedWord rotate_right(const ReducedWord& w) {
  std::vector<Letter> v;
  v.reserve(w.length());
  v.push_back(w.last());
  for (std::size_t i = 0; i + 1 < w.length(); ++i) v.push_back(w[i]);
  return ReducedWord::from_reduced(std::move(v));
}

ReducedWord rotate_left(const ReducedWord& w, std::size_t k) {
  std::vector<Letter> v;
  v.reserve(w.length());
  for (std::size_t i = 0; i < w.length(); ++i) v.push_back(w[(i + k) % w.length()]);
  return ReducedWord::from_reduced(std::move(v));
}

}  // namespace

BoundaryPoint::BoundaryPoint(ReducedWord preperiod, ReducedWord period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.is_identity())
    throw std::invalid_argument("BoundaryPoint: empty period");
  if (per_.length() > 1 && per_.last() == inverse_letter(per_[0]))
    throw std::invalid_argument("BoundaryPoint: period is not cyclically reduced");
  if (!pre_.is_identity() && pre_.last() == inverse_letter(per_[0]))
    throw std::invalid_argument("BoundaryPoint: preperiod/period junction is not reduced");

  std::size_t root = primitive_root_length(per_);
  if (root < per_.length()) per_ = per_.prefix(root);

  while (!pre_.is_identity() && pre_.last() == per_.last()) {
    pre_ = pre_.prefix(pre_.length() - 1);
    per_ = rotate_right(per_);
  }
}

Letter BoundaryPoint::at(std::size_t i) const {
  if (i < pre_.length()) return pre_[i];
  return per_[(i - pre_.length()) % per_.length()];
}

BoundaryPoint BoundaryPoint::letter_power(Letter s) {
  return BoundaryPoint(ReducedWord(), ReducedWord::from_reduced({s}));
}

BoundaryPoint BoundaryPoint::shifted(std::size_t k) const {
  if (k <= pre_.length()) {
    std::vector<Letter> rest(pre_.letters().begin() + static_cast<long>(k), pre_.letters().end());
    return BoundaryPoint(ReducedWord::from_reduced(std::move(rest)), per_);
  }
  std::size_t r = (k - pre_.length()) % per_.length();
  return BoundaryPoint(ReducedWord(), rotate_left(per_, r));
}

BoundaryPoint act(const ReducedWord& g, const BoundaryPoint& xi) {
  // Cancellation depth: longest common prefix of g^{-1} and xi.
  ReducedWord ginv = g.inverse();
  std::size_t c = 0;
  while (c < ginv.length() && ginv[c] == xi.at(c)) ++c;

  BoundaryPoint tail = xi.shifted(c);
  std::vector<Letter> pre(g.letters().begin(),
                          g.letters().end() - static_cast<long>(c));
  pre.insert(pre.end(), tail.preperiod().letters().begin(), tail.preperiod().letters().end());
  return BoundaryPoint(ReducedWord::from_reduced(std::move(pre)), tail.period());
}

long gromov_product(const ReducedWord& g, const BoundaryPoint& xi) {
  std::size_t i = 0;
  while (i < g.length() && g[i] == xi.at(i)) ++i;
  return static_cast<long>(i);
}

std::optional<long> gromov_product(const BoundaryPoint& xi, const BoundaryPoint& omega) {
  if (xi == omega) return std::nullopt;
  std::size_t bound = std::max(xi.preperiod().length(), omega.preperiod().length()) +
                      std::lcm(xi.period().length(), omega.period().length());
  for (std::size_t i = 0; i < bound; ++i)
    if (xi.at(i) != omega.at(i)) return static_cast<long>(i);
  // Two eventually periodic words agreeing past max(pre) + lcm(per) agree
  // everywhere; distinct canonical forms cannot do that.
  throw std::logic_error("gromov_product: canonical boundary forms not unique");
}

std::string format_boundary_point(const BoundaryPoint& xi) {
  std::string out;
  if (!xi.preperiod().is_identity()) {
    out += format_word(xi.preperiod());
    out += '|';
  }
  out += '(';
  out += format_word(xi.period());
  out += ")^inf";
  return out;
}

BoundaryPoint parse_boundary_point(const Rank& rank, std::string_view s) {
  std::string_view pre_part, rest = s;
  std::size_t bar = s.find('|');
  if (bar != std::string_view::npos) {
    pre_part = s.substr(0, bar);
    rest = s.substr(bar + 1);
  }
  if (rest.size() < 6 || rest.front() != '(' || rest.substr(rest.size() - 5) != ")^inf")
    throw std::invalid_argument("parse_boundary_point: expected 'pre|(per)^inf', got '" +
                                std::string(s) + "'");
  std::string_view per_part = rest.substr(1, rest.size() - 6);
  return BoundaryPoint(parse_word(rank, pre_part), parse_word(rank, per_part));
}

}  // namespace fgb
