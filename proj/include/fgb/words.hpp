#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fgb {

// Letters of F_n are encoded as 2k (the k-th generator) and 2k+1 (its
// inverse), k = 0..n-1. Inversion is a bit flip, which keeps free reduction
// branch-light.
using Letter = std::uint16_t;

constexpr Letter inverse_letter(Letter s) { return static_cast<Letter>(s ^ 1u); }

// Rank of the free group. q = 2n - 1 is the forward branching factor of the
// Cayley tree: the root has q + 1 = 2n children, every other vertex has q.
class Rank {
 public:
  explicit Rank(int n);
  int n() const { return n_; }
  long q() const { return 2L * n_ - 1; }
  int alphabet() const { return 2 * n_; }
  friend bool operator==(Rank a, Rank b) { return a.n_ == b.n_; }

 private:
  int n_;
};

// A freely reduced word: no letter is followed by its inverse. The empty word
// is the group identity. Ordering is lexicographic on letter codes, so a
// proper prefix sorts before its extensions (cylinder antichains rely on
// this).
class ReducedWord {
 public:
  ReducedWord() = default;

  // Free reduction of an arbitrary letter string; validates codes against the
  // alphabet (throws std::invalid_argument on an unknown letter).
  static ReducedWord reduce(const Rank& rank, const std::vector<Letter>& raw);
  // Wraps a string that is already reduced; throws if it is not.
  static ReducedWord from_reduced(std::vector<Letter> letters);

  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter last() const { return letters_.back(); }
  const std::vector<Letter>& letters() const { return letters_; }

  ReducedWord inverse() const;
  ReducedWord prefix(std::size_t k) const;
  // Group product with cancellation.
  friend ReducedWord operator*(const ReducedWord& a, const ReducedWord& b);

  bool is_prefix_of(const ReducedWord& w) const;

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) = default;
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

// Length of the longest common prefix; equals the Gromov product
// (|a| + |b| - |a^{-1} b|) / 2 with basepoint at the identity.
long gromov_product(const ReducedWord& a, const ReducedWord& b);

// Token serialization: generator k (1-based) prints as "ak", its inverse as
// "Ak"; letters are joined with '.'; the identity is the empty string.
std::string format_word(const ReducedWord& w);
// Parses the token form and freely reduces it. Throws std::invalid_argument
// on unknown letters or malformed tokens.
ReducedWord parse_word(const Rank& rank, std::string_view s);

// Calls fn once for every reduced word of exactly the given length, in
// lexicographic order.
void for_each_word(const Rank& rank, std::size_t length,
                   const std::function<void(const ReducedWord&)>& fn);
std::vector<ReducedWord> words_of_length(const Rank& rank, std::size_t length);

}  // namespace fgb
