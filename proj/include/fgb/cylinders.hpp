#pragma once

#include <vector>

#include "fgb/boundary.hpp"
#include "fgb/words.hpp"

namespace fgb {

// A finite union of boundary cylinders Omega_x, stored as a normalized
// antichain: terms sorted lexicographically, no term a prefix of another,
// and full sibling families coalesced into their parent (2n children at the
// root, q = 2n-1 elsewhere). Normalization is canonical, so set equality is
// structural equality. The empty antichain is the empty set; the single term
// epsilon is the whole boundary.
//
// Coalescing needs the branching factor, so a CylinderSet carries its Rank.
class CylinderSet {
 public:
  explicit CylinderSet(Rank rank) : rank_(rank) {}  // empty set

  static CylinderSet whole(Rank rank);
  static CylinderSet cylinder(Rank rank, ReducedWord x);
  static CylinderSet from_words(Rank rank, std::vector<ReducedWord> words);

  Rank rank() const { return rank_; }
  bool is_empty() const { return terms_.empty(); }
  bool is_whole() const { return terms_.size() == 1 && terms_[0].is_identity(); }
  const std::vector<ReducedWord>& terms() const { return terms_; }
  // Length of the longest term.
  std::size_t depth() const;

  CylinderSet united(const CylinderSet& o) const;
  CylinderSet intersected(const CylinderSet& o) const;
  CylinderSet complemented() const;

  bool contains(const BoundaryPoint& xi) const;
  bool contains_cylinder(const ReducedWord& x) const;  // Omega_x subset of this
  bool intersects(const CylinderSet& o) const;

  friend bool operator==(const CylinderSet& a, const CylinderSet& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

 private:
  Rank rank_;
  std::vector<ReducedWord> terms_;
  void normalize();
};

// The image g . Omega_x as a cylinder set. With c = (|g| + |x| - |gx|)/2 the
// number of cancelled letters: if c < |x| the image is the single cylinder
// Omega_{gx'} (x' the surviving part of x); if c = |x| (x cancels entirely)
// it is the complement of Omega_{g_0 xbar} where g_0 = g minus its last |x|
// letters and xbar = inverse of x's last letter. Omega_epsilon maps to the
// whole boundary.
CylinderSet image_of_cylinder(const Rank& rank, const ReducedWord& g, const ReducedWord& x);
CylinderSet image_of_set(const ReducedWord& g, const CylinderSet& a);

}  // namespace fgb
