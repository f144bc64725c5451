#include "fgb/besov.hpp"

#include <set>
#include <stdexcept>

namespace fgb {

CayleyBall::CayleyBall(Rank r, long rad) : rank(r), radius(rad) {
  if (rad < 0) throw std::invalid_argument("CayleyBall: negative radius");
}

ExactScalar CayleyBall::vertex_count() const {
  if (radius == 0) return ExactScalar(1);
  long q = rank.q();
  return ExactScalar(1) +
         ExactScalar(q + 1) * (q_pow(q, radius) - ExactScalar(1)) / ExactScalar(q - 1);
}

void CayleyBall::require_enumerable(std::size_t limit) const {
  if (ExactScalar(static_cast<long>(limit)) < vertex_count())
    throw std::length_error("CayleyBall: radius " + std::to_string(radius) +
                            " ball is too large to enumerate");
}

namespace {

void check_key_in_ball(const CayleyBall& ball, const ReducedWord& key) {
  if (key.is_identity()) return;  // the root default never jumps
  if (static_cast<long>(key.length()) > ball.radius - 1)
    throw std::invalid_argument(
        "GroupFunction: structure key deeper than radius - 1 (its jumps would be invisible "
        "among ball edges)");
}

// Children of w inside the ball, as letters to append.
template <typename F>
void for_each_child_letter(const Rank& rank, const ReducedWord& w, F&& fn) {
  for (Letter s = 0; static_cast<int>(s) < rank.alphabet(); ++s) {
    if (!w.is_identity() && w.last() == inverse_letter(s)) continue;
    fn(s);
  }
}

ReducedWord child_of(const ReducedWord& w, Letter s) {
  std::vector<Letter> v = w.letters();
  v.push_back(s);
  return ReducedWord::from_reduced(std::move(v));
}

}  // namespace

GroupFunction GroupFunction::constant(const CayleyBall& ball, ExactScalar v) {
  std::map<ReducedWord, ExactScalar> sub;
  sub.emplace(ReducedWord(), std::move(v));
  return structured(ball, std::move(sub), {});
}

GroupFunction GroupFunction::indicator_of_identity(const CayleyBall& ball) {
  std::map<ReducedWord, ExactScalar> sub, over;
  sub.emplace(ReducedWord(), ExactScalar(0));
  over.emplace(ReducedWord(), ExactScalar(1));
  return structured(ball, std::move(sub), std::move(over));
}

GroupFunction GroupFunction::structured(const CayleyBall& ball,
                                        std::map<ReducedWord, ExactScalar> subtree,
                                        std::map<ReducedWord, ExactScalar> overrides) {
  if (subtree.find(ReducedWord()) == subtree.end())
    throw std::invalid_argument("GroupFunction: subtree defaults must cover the root");
  for (const auto& [k, v] : subtree) {
    check_key_in_ball(ball, k);
    if (v.is_infinite()) throw std::invalid_argument("GroupFunction: values must be finite");
  }
  for (const auto& [k, v] : overrides) {
    check_key_in_ball(ball, k);
    if (v.is_infinite()) throw std::invalid_argument("GroupFunction: values must be finite");
  }
  GroupFunction phi(ball, true);
  phi.subtree_ = std::move(subtree);
  phi.overrides_ = std::move(overrides);
  return phi;
}

GroupFunction GroupFunction::from_vertex_table(const CayleyBall& ball,
                                               std::map<ReducedWord, ExactScalar> values) {
  ball.require_enumerable(2000000);
  ExactScalar count(static_cast<long>(values.size()));
  if (!(count == ball.vertex_count()))
    throw std::invalid_argument("GroupFunction: table must define every ball vertex");
  for (const auto& [k, v] : values) {
    if (static_cast<long>(k.length()) > ball.radius)
      throw std::invalid_argument("GroupFunction: table key outside the ball");
    if (v.is_infinite()) throw std::invalid_argument("GroupFunction: values must be finite");
  }
  // Key count == vertex count and every key inside the ball means every
  // vertex is present (keys are distinct reduced words).
  GroupFunction phi(ball, false);
  phi.subtree_ = std::move(values);
  return phi;
}

std::size_t GroupFunction::structure_depth() const {
  std::size_t d = 0;
  for (const auto& [k, v] : subtree_) d = std::max(d, k.length());
  for (const auto& [k, v] : overrides_) d = std::max(d, k.length());
  return d;
}

ExactScalar GroupFunction::operator()(const ReducedWord& x) const {
  if (static_cast<long>(x.length()) > ball_.radius)
    throw std::invalid_argument("GroupFunction: vertex outside the ball");
  if (structured_) {
    auto over = overrides_.find(x);
    if (over != overrides_.end()) return over->second;
    for (std::size_t len = x.length() + 1; len-- > 0;) {
      auto it = subtree_.find(x.prefix(len));
      if (it != subtree_.end()) return it->second;
    }
    throw std::logic_error("GroupFunction: no subtree default matched");  // root always matches
  }
  auto it = subtree_.find(x);
  if (it == subtree_.end()) throw std::logic_error("GroupFunction: dense table missing a vertex");
  return it->second;
}

GroupFunction busemann_function(const CayleyBall& ball, const ReducedWord& g) {
  if (ball.radius < static_cast<long>(g.length()) + 1)
    throw std::invalid_argument("busemann_function: needs radius >= |g| + 1");
  std::map<ReducedWord, ExactScalar> sub;
  for (std::size_t i = 0; i <= g.length(); ++i)
    sub.emplace(g.prefix(i), ExactScalar(static_cast<long>(i)));
  return GroupFunction::structured(ball, std::move(sub), {});
}

ExactScalar ep_seminorm_p(const GroupFunction& phi, long p) {
  if (p < 1) throw std::invalid_argument("ep_seminorm_p: needs integer p >= 1");
  const Rank& rank = phi.ball().rank;
  ExactScalar sum(0);

  if (phi.is_structured()) {
    // Candidate edges: the parent edge of every structure key, plus the child
    // edges of every override (overrides are single-vertex spikes). Everywhere
    // else both endpoints share the same subtree default.
    std::set<ReducedWord> candidates;
    for (const auto& [k, v] : phi.subtree_defaults())
      if (!k.is_identity()) candidates.insert(k);
    for (const auto& [k, v] : phi.overrides()) {
      if (!k.is_identity()) candidates.insert(k);
      for_each_child_letter(rank, k, [&](Letter s) { candidates.insert(child_of(k, s)); });
    }
    for (const auto& c : candidates)
      sum += (phi(c) - phi(c.prefix(c.length() - 1))).abs().pow(p);
    return sum;
  }

  for (const auto& [w, v] : phi.subtree_defaults()) {
    if (static_cast<long>(w.length()) == phi.ball().radius) continue;
    for_each_child_letter(rank, w, [&](Letter s) {
      sum += (phi(child_of(w, s)) - v).abs().pow(p);
    });
  }
  return sum;
}

namespace {

// Deepest subtree key prefixing w.
const ExactScalar& subtree_match(const GroupFunction& phi, const ReducedWord& w) {
  const auto& sub = phi.subtree_defaults();
  for (std::size_t len = w.length() + 1; len-- > 0;) {
    auto it = sub.find(w.prefix(len));
    if (it != sub.end()) return it->second;
  }
  throw std::logic_error("subtree_match: root default missing");
}

bool has_key_strictly_below(const std::map<ReducedWord, ExactScalar>& keys, const ReducedWord& w) {
  for (const auto& [k, v] : keys)
    if (k.length() > w.length() && w.is_prefix_of(k)) return true;
  return false;
}

// Values the subtree defaults stabilize to along branches under w.
void gather_limit_values(const GroupFunction& phi, const ReducedWord& w,
                         std::vector<const ExactScalar*>& flat) {
  if (!has_key_strictly_below(phi.subtree_defaults(), w)) {
    flat.push_back(&subtree_match(phi, w));
    return;
  }
  for_each_child_letter(phi.ball().rank, w, [&](Letter s) {
    gather_limit_values(phi, child_of(w, s), flat);
  });
}

ExactScalar stabilized_value(const GroupFunction& phi, const ReducedWord& w) {
  std::vector<const ExactScalar*> flat;
  gather_limit_values(phi, w, flat);
  for (std::size_t i = 1; i < flat.size(); ++i)
    if (!(*flat[i] == *flat[0]))
      throw std::domain_error(
          "boundary_extension: branches disagree inside one cylinder — extension undefined "
          "at this depth");
  return *flat[0];
}

// Dense mode: the common limit of phi below x, requiring the last ball level
// to witness stabilization.
ExactScalar dense_limit_below(const GroupFunction& phi, const ReducedWord& x) {
  const Rank& rank = phi.ball().rank;
  if (static_cast<long>(x.length()) == phi.ball().radius - 1) {
    ExactScalar v = phi(x);
    for_each_child_letter(rank, x, [&](Letter s) {
      if (!(phi(child_of(x, s)) == v))
        throw std::domain_error(
            "boundary_extension: branch still moving at the last ball level — stabilization "
            "not witnessed");
    });
    return v;
  }
  ExactScalar common(0);
  bool first = true;
  for_each_child_letter(rank, x, [&](Letter s) {
    ExactScalar v = dense_limit_below(phi, child_of(x, s));
    if (first) {
      common = std::move(v);
      first = false;
    } else if (!(v == common)) {
      throw std::domain_error(
          "boundary_extension: branches disagree inside one cylinder — extension undefined "
          "at this depth");
    }
  });
  return common;
}

}  // namespace

CylinderFunction boundary_extension(const GroupFunction& phi, long depth) {
  const Rank& rank = phi.ball().rank;
  if (depth < 0) throw std::invalid_argument("boundary_extension: negative depth");
  long max_depth = phi.is_structured() ? phi.ball().radius : phi.ball().radius - 1;
  if (depth > max_depth)
    throw std::invalid_argument("boundary_extension: depth exceeds what the ball determines");

  std::vector<CylinderPiece> pieces;
  if (phi.is_structured()) {
    auto extend = [&](auto&& self, const ReducedWord& w) -> void {
      if (static_cast<long>(w.length()) == depth) {
        pieces.push_back({CylinderSet::cylinder(rank, w), stabilized_value(phi, w)});
        return;
      }
      if (!has_key_strictly_below(phi.subtree_defaults(), w)) {
        // constant default below w: emit one coarse piece and stop descending
        pieces.push_back({CylinderSet::cylinder(rank, w), subtree_match(phi, w)});
        return;
      }
      for_each_child_letter(rank, w, [&](Letter s) { self(self, child_of(w, s)); });
    };
    extend(extend, ReducedWord());
  } else {
    auto extend = [&](auto&& self, const ReducedWord& w) -> void {
      if (static_cast<long>(w.length()) == depth) {
        pieces.push_back({CylinderSet::cylinder(rank, w), dense_limit_below(phi, w)});
        return;
      }
      for_each_child_letter(rank, w, [&](Letter s) { self(self, child_of(w, s)); });
    };
    extend(extend, ReducedWord());
  }
  return CylinderFunction(rank, std::move(pieces));
}

ExactScalar besov_seminorm_p(const CylinderFunction& f, long p) {
  return integrate_nu(difference_kernel(f, p));
}

std::vector<PropernessRow> properness_table(const Rank& rank,
                                            const std::vector<ReducedWord>& elements, long p,
                                            long radius) {
  if (p < 2)
    throw std::invalid_argument(
        "properness_table: needs p >= 2 (boundary seminorms converge only above the critical "
        "exponent)");
  long max_len = 0;
  for (const auto& g : elements) max_len = std::max(max_len, static_cast<long>(g.length()));
  if (radius < max_len + 1)
    throw std::invalid_argument("properness_table: needs radius >= max element length + 1");

  CayleyBall ball(rank, radius);
  long q = rank.q();
  ExactScalar lb_coef = ExactScalar(q - 1, q + 1) * ExactScalar(q - 1, q + 1);
  ExactScalar ub_coef = ExactScalar(q, q + 1) * ExactScalar(q, q + 1);
  std::vector<ExactScalar> s_table = s_sum_table(max_len, p, q);

  std::vector<PropernessRow> rows;
  rows.reserve(elements.size());
  for (const auto& g : elements) {
    long len = static_cast<long>(g.length());
    GroupFunction phi = busemann_function(ball, g);
    ExactScalar ep = ep_seminorm_p(phi, p);
    ExactScalar besov = besov_seminorm_p(boundary_extension(phi, len), p);
    rows.push_back({g, len, ep, besov, lb_coef * s_table[static_cast<std::size_t>(len)],
                    ub_coef * s_table[static_cast<std::size_t>(len)]});
  }
  return rows;
}

}  // namespace fgb
