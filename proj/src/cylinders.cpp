#include "fgb/cylinders.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fgb {

CylinderSet CylinderSet::whole(Rank rank) {
  CylinderSet s(rank);
  s.terms_.push_back(ReducedWord());
  return s;
}

CylinderSet CylinderSet::cylinder(Rank rank, ReducedWord x) {
  CylinderSet s(rank);
  s.terms_.push_back(std::move(x));
  return s;
}

CylinderSet CylinderSet::from_words(Rank rank, std::vector<ReducedWord> words) {
  CylinderSet s(rank);
  s.terms_ = std::move(words);
  s.normalize();
  return s;
}

std::size_t CylinderSet::depth() const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.length());
  return d;
}

void CylinderSet::normalize() {
  std::sort(terms_.begin(), terms_.end());
  // Drop duplicates and anything below an earlier term. In lex order a
  // covering prefix is always the closest kept predecessor, so one lookback
  // suffices.
  std::vector<ReducedWord> kept;
  for (auto& w : terms_) {
    if (!kept.empty() && kept.back().is_prefix_of(w)) continue;
    kept.push_back(std::move(w));
  }
  terms_ = std::move(kept);

  // Coalesce full sibling families into their parent, cascading upward.
  // Same-parent terms need not be adjacent in lex order (a longer term can
  // sort between two siblings), so group through a map.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<ReducedWord, std::vector<std::size_t>> families;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!terms_[i].is_identity())
        families[terms_[i].prefix(terms_[i].length() - 1)].push_back(i);
    std::vector<char> drop(terms_.size(), 0);
    std::vector<ReducedWord> parents;
    for (auto& [parent, idx] : families) {
      std::size_t full = parent.is_identity() ? static_cast<std::size_t>(rank_.alphabet())
                                              : static_cast<std::size_t>(rank_.q());
      if (idx.size() == full) {
        for (std::size_t i : idx) drop[i] = 1;
        parents.push_back(parent);
        changed = true;
      }
    }
    if (changed) {
      std::vector<ReducedWord> next;
      for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!drop[i]) next.push_back(std::move(terms_[i]));
      next.insert(next.end(), parents.begin(), parents.end());
      std::sort(next.begin(), next.end());
      terms_ = std::move(next);
    }
  }
}

CylinderSet CylinderSet::united(const CylinderSet& o) const {
  if (!(rank_ == o.rank_)) throw std::invalid_argument("CylinderSet: rank mismatch");
  std::vector<ReducedWord> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return from_words(rank_, std::move(all));
}

CylinderSet CylinderSet::intersected(const CylinderSet& o) const {
  if (!(rank_ == o.rank_)) throw std::invalid_argument("CylinderSet: rank mismatch");
  std::vector<ReducedWord> out;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      if (a.is_prefix_of(b))
        out.push_back(b);
      else if (b.is_prefix_of(a))
        out.push_back(a);
    }
  return from_words(rank_, std::move(out));
}

CylinderSet CylinderSet::complemented() const {
  std::vector<ReducedWord> out;
  std::vector<Letter> path;
  auto rec = [&](auto&& self) -> void {
    ReducedWord p = ReducedWord::from_reduced(path);
    bool covered = false, extended = false;
    for (const auto& t : terms_) {
      if (t.is_prefix_of(p)) covered = true;
      if (p.is_prefix_of(t) && t.length() > p.length()) extended = true;
    }
    if (covered) return;
    if (!extended) {
      out.push_back(p);
      return;
    }
    for (Letter s = 0; static_cast<int>(s) < rank_.alphabet(); ++s) {
      if (!path.empty() && path.back() == inverse_letter(s)) continue;
      path.push_back(s);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  return from_words(rank_, std::move(out));
}

bool CylinderSet::contains(const BoundaryPoint& xi) const {
  for (const auto& t : terms_) {
    bool pre = true;
    for (std::size_t i = 0; i < t.length() && pre; ++i) pre = (t[i] == xi.at(i));
    if (pre) return true;
  }
  return false;
}

bool CylinderSet::contains_cylinder(const ReducedWord& x) const {
  // On the coalesced antichain, Omega_x is covered iff one term is a prefix
  // of x (a full-sibling cover would have been merged into the parent).
  for (const auto& t : terms_)
    if (t.is_prefix_of(x)) return true;
  return false;
}

bool CylinderSet::intersects(const CylinderSet& o) const {
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      if (a.is_prefix_of(b) || b.is_prefix_of(a)) return true;
  return false;
}

CylinderSet image_of_cylinder(const Rank& rank, const ReducedWord& g, const ReducedWord& x) {
  if (x.is_identity()) return CylinderSet::whole(rank);
  ReducedWord gx = g * x;
  std::size_t c = (g.length() + x.length() - gx.length()) / 2;
  if (c < x.length()) return CylinderSet::cylinder(rank, gx);
  // x cancels entirely: g = g0 . x^{-1}. The image is everything except the
  // branch where the continuation undoes g0's last surviving letter.
  ReducedWord g0 = g.prefix(g.length() - x.length());
  Letter xbar = inverse_letter(x.last());
  std::vector<Letter> w(g0.letters());
  w.push_back(xbar);
  return CylinderSet::cylinder(rank, ReducedWord::from_reduced(std::move(w))).complemented();
}

CylinderSet image_of_set(const ReducedWord& g, const CylinderSet& a) {
  CylinderSet out(a.rank());
  for (const auto& t : a.terms())
    out = out.united(image_of_cylinder(a.rank(), g, t));
  return out;
}

}  // namespace fgb
