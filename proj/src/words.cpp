#include "fgb/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace fgb {

Rank::Rank(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("Rank: free group rank must be >= 2");
}

ReducedWord ReducedWord::reduce(const Rank& rank, const std::vector<Letter>& raw) {
  ReducedWord w;
  w.letters_.reserve(raw.size());
  for (Letter s : raw) {
    if (static_cast<int>(s) >= rank.alphabet())
      throw std::invalid_argument("ReducedWord: unknown letter code " + std::to_string(s));
    if (!w.letters_.empty() && w.letters_.back() == inverse_letter(s))
      w.letters_.pop_back();
    else
      w.letters_.push_back(s);
  }
  return w;
}

ReducedWord ReducedWord::from_reduced(std::vector<Letter> letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i] == inverse_letter(letters[i + 1]))
      throw std::invalid_argument("ReducedWord: letter string is not reduced");
  ReducedWord w;
  w.letters_ = std::move(letters);
  return w;
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (Letter& s : inv) s = inverse_letter(s);
  ReducedWord w;
  w.letters_ = std::move(inv);
  return w;
}

ReducedWord ReducedWord::prefix(std::size_t k) const {
  if (k > letters_.size()) throw std::out_of_range("ReducedWord::prefix: too long");
  ReducedWord w;
  w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<long>(k));
  return w;
}

ReducedWord operator*(const ReducedWord& a, const ReducedWord& b) {
  ReducedWord w = a;
  for (Letter s : b.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == inverse_letter(s))
      w.letters_.pop_back();
    else
      w.letters_.push_back(s);
  }
  return w;
}

bool ReducedWord::is_prefix_of(const ReducedWord& w) const {
  if (length() > w.length()) return false;
  return std::equal(letters_.begin(), letters_.end(), w.letters_.begin());
}

long gromov_product(const ReducedWord& a, const ReducedWord& b) {
  std::size_t m = std::min(a.length(), b.length());
  std::size_t i = 0;
  while (i < m && a[i] == b[i]) ++i;
  return static_cast<long>(i);
}

std::string format_word(const ReducedWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += '.';
    Letter s = w[i];
    out += (s & 1) ? 'A' : 'a';
    out += std::to_string(s / 2 + 1);
  }
  return out;
}

namespace {

Letter token_to_letter(const Rank& rank, std::string_view tok) {
  if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'A'))
    throw std::invalid_argument("parse_word: bad token '" + std::string(tok) + "'");
  long idx = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9')
      throw std::invalid_argument("parse_word: bad token '" + std::string(tok) + "'");
    idx = idx * 10 + (tok[i] - '0');
    if (idx > rank.n()) break;
  }
  if (idx < 1 || idx > rank.n())
    throw std::invalid_argument("parse_word: unknown letter '" + std::string(tok) +
                                "' for rank " + std::to_string(rank.n()));
  return static_cast<Letter>((idx - 1) * 2 + (tok[0] == 'A' ? 1 : 0));
}

}  // namespace

ReducedWord parse_word(const Rank& rank, std::string_view s) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t dot = s.find('.', pos);
    if (dot == std::string_view::npos) dot = s.size();
    letters.push_back(token_to_letter(rank, s.substr(pos, dot - pos)));
    pos = dot + 1;
    if (pos == s.size())  // trailing '.'
      throw std::invalid_argument("parse_word: trailing separator");
  }
  return ReducedWord::reduce(rank, letters);
}

void for_each_word(const Rank& rank, std::size_t length,
                   const std::function<void(const ReducedWord&)>& fn) {
  std::vector<Letter> stack;
  auto rec = [&](auto&& self) -> void {
    if (stack.size() == length) {
      fn(ReducedWord::from_reduced(stack));
      return;
    }
    for (Letter s = 0; static_cast<int>(s) < rank.alphabet(); ++s) {
      if (!stack.empty() && stack.back() == inverse_letter(s)) continue;
      stack.push_back(s);
      self(self);
      stack.pop_back();
    }
  };
  rec(rec);
}

std::vector<ReducedWord> words_of_length(const Rank& rank, std::size_t length) {
  std::vector<ReducedWord> out;
  for_each_word(rank, length, [&](const ReducedWord& w) { out.push_back(w); });
  return out;
}

}  // namespace fgb
