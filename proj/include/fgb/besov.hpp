#pragma once

#include <map>
#include <vector>

#include "fgb/measure.hpp"

namespace fgb {

// Ball of the given radius in the Cayley graph of F_n (regular tree of
// branching q = 2n-1). Vertex counts explode — radius 51 at rank 2 is ~10^24
// vertices — so nothing here may ever enumerate a large ball.
struct CayleyBall {
  Rank rank;
  long radius;

  CayleyBall(Rank r, long rad);
  // 1 + (q+1)(q^R - 1)/(q-1), exact.
  ExactScalar vertex_count() const;
  // Throws std::length_error when the ball has more than `limit` vertices.
  void require_enumerable(std::size_t limit) const;
};

// A function on the vertices of a Cayley ball. Two storage modes:
//
//  - structured: a longest-prefix-match trie of subtree defaults plus
//    finitely many per-vertex overrides. phi(x) is the override at x if one
//    exists, else the default of the deepest trie key prefixing x. Defined on
//    balls of any radius; this is what makes radius-51 workloads feasible.
//  - dense: an explicit value for every ball vertex (ingested tables);
//    restricted to enumerable balls.
//
// Busemann functions, constants and indicators are structured.
class GroupFunction {
 public:
  static GroupFunction constant(const CayleyBall& ball, ExactScalar v);
  static GroupFunction indicator_of_identity(const CayleyBall& ball);
  // Structured mode from explicit trie data; `subtree` must contain the empty
  // word (a default must exist everywhere) and all keys must fit strictly
  // inside the ball (|key| <= R - 1), so that every jump of the function is
  // visible among ball edges.
  static GroupFunction structured(const CayleyBall& ball,
                                  std::map<ReducedWord, ExactScalar> subtree,
                                  std::map<ReducedWord, ExactScalar> overrides);
  // Dense mode: one value per ball vertex, all of them present.
  static GroupFunction from_vertex_table(const CayleyBall& ball,
                                         std::map<ReducedWord, ExactScalar> values);

  const CayleyBall& ball() const { return ball_; }
  bool is_structured() const { return structured_; }
  // Deepest structure key (structured mode).
  std::size_t structure_depth() const;
  // Value at a ball vertex; throws std::invalid_argument outside the ball.
  ExactScalar operator()(const ReducedWord& x) const;

  const std::map<ReducedWord, ExactScalar>& subtree_defaults() const { return subtree_; }
  const std::map<ReducedWord, ExactScalar>& overrides() const { return overrides_; }

 private:
  GroupFunction(CayleyBall ball, bool structured) : ball_(ball), structured_(structured) {}

  CayleyBall ball_;
  bool structured_;
  std::map<ReducedWord, ExactScalar> subtree_;    // structured: defaults; dense: every vertex
  std::map<ReducedWord, ExactScalar> overrides_;  // structured only
};

// The Busemann-type function x -> (g, x) on the given ball (requires
// radius >= |g| + 1). Structured: subtree defaults {g_i -> i}.
GroupFunction busemann_function(const CayleyBall& ball, const ReducedWord& g);

// E_p(phi)^p = sum over ball edges (x, xs) of |phi(xs) - phi(x)|^p. For
// structured functions only the finitely many candidate edges where the value
// can jump are visited; dense functions enumerate the ball.
ExactScalar ep_seminorm_p(const GroupFunction& phi, long p);

// The locally constant boundary function whose value on each depth-N cylinder
// is phi's stabilized value along the branches into that cylinder. Vertex
// overrides are invisible at infinity and are ignored; if branches inside one
// cylinder stabilize to different values the extension does not exist at this
// depth and std::domain_error is thrown. Structured mode accepts N <= R;
// dense mode needs N <= R - 1 (the last level is the stabilization witness).
CylinderFunction boundary_extension(const GroupFunction& phi, long depth);

// Besov seminorm: integral of |f(xi) - f(omega)|^p against nu.
ExactScalar besov_seminorm_p(const CylinderFunction& f, long p);

struct PropernessRow {
  ReducedWord g;
  long length;
  ExactScalar ep;      // E_p(busemann)^p = |g|
  ExactScalar besov;   // Besov seminorm^p of the boundary extension
  ExactScalar lower;   // ((q-1)/(q+1))^2 S_{|g|}
  ExactScalar upper;   // (q/(q+1))^2 S_{|g|}
};

// One row per element: the discrete seminorm, the boundary seminorm and the
// S_N bracket certifying linear growth. Requires p >= 2 (the boundary
// integrals only converge above the critical exponent) and
// radius >= max length + 1.
std::vector<PropernessRow> properness_table(const Rank& rank,
                                            const std::vector<ReducedWord>& elements, long p,
                                            long radius);

}  // namespace fgb
