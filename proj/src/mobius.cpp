#include "fgb/mobius.hpp"

#include <algorithm>
#include <stdexcept>

namespace fgb {

PointMap::PointMap(std::vector<std::int64_t> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    std::int64_t im = images_[i];
    if (im < -1 || im >= static_cast<std::int64_t>(images_.size()))
      throw std::invalid_argument("PointMap: image index out of range");
    if (im >= 0) {
      if (hit[static_cast<std::size_t>(im)])
        throw std::invalid_argument("PointMap: not injective");
      hit[static_cast<std::size_t>(im)] = 1;
      domain_.push_back(i);
    }
  }
}

PointMap PointMap::identity(std::size_t n) {
  std::vector<std::int64_t> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<std::int64_t>(i);
  return PointMap(std::move(im));
}

PointMap PointMap::transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n || i == j)
    throw std::invalid_argument("PointMap: bad transposition indices");
  std::vector<std::int64_t> im(n);
  for (std::size_t k = 0; k < n; ++k) im[k] = static_cast<std::int64_t>(k);
  std::swap(im[i], im[j]);
  return PointMap(std::move(im));
}

std::size_t PointMap::at(std::size_t i) const {
  if (i >= images_.size() || images_[i] < 0)
    throw std::invalid_argument("PointMap: point outside domain");
  return static_cast<std::size_t>(images_[i]);
}

PointMap PointMap::inverted() const {
  std::vector<std::int64_t> inv(images_.size(), -1);
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] >= 0) inv[static_cast<std::size_t>(images_[i])] = static_cast<std::int64_t>(i);
  return PointMap(std::move(inv));
}

PointMap compose(const PointMap& g, const PointMap& h) {
  if (g.size() != h.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<std::int64_t> im(h.size(), -1);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.defined(i) && g.defined(h.at(i)))
      im[i] = static_cast<std::int64_t>(g.at(h.at(i)));
  return PointMap(std::move(im));
}

}  // namespace fgb
