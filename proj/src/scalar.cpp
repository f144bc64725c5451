#include "fgb/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace fgb {

ExactScalar::ExactScalar(long num, long den) {
  if (den == 0) throw std::domain_error("ExactScalar: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

ExactScalar ExactScalar::infinity() {
  ExactScalar s;
  s.inf_ = true;
  return s;
}

ExactScalar ExactScalar::from_string(std::string_view s) {
  if (s == "inf" || s == "+inf") return infinity();
  if (s.empty()) throw std::invalid_argument("ExactScalar: empty literal");
  // Validate by hand: mpq_class's string constructor is lenient about
  // whitespace and would accept bases we do not want.
  std::size_t i = 0;
  auto digits = [&](std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos > start;
  };
  if (s[i] == '-' || s[i] == '+') ++i;
  if (!digits(i)) throw std::invalid_argument("ExactScalar: bad literal '" + std::string(s) + "'");
  if (i < s.size() && s[i] == '/') {
    ++i;
    if (!digits(i) || i != s.size())
      throw std::invalid_argument("ExactScalar: bad literal '" + std::string(s) + "'");
  } else if (i != s.size()) {
    throw std::invalid_argument("ExactScalar: bad literal '" + std::string(s) + "'");
  }
  mpq_class v(std::string(s), 10);
  if (v.get_den() == 0) throw std::invalid_argument("ExactScalar: zero denominator");
  v.canonicalize();
  return ExactScalar(std::move(v));
}

const mpq_class& ExactScalar::value() const {
  if (inf_) throw std::domain_error("ExactScalar: infinity has no rational value");
  return v_;
}

ExactScalar ExactScalar::operator-() const {
  if (inf_) throw std::domain_error("ExactScalar: negating infinity");
  ExactScalar r;
  r.v_ = -v_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (inf_ || o.inf_) {
    inf_ = true;
    v_ = 0;
    return *this;
  }
  v_ += o.v_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  if (o.inf_) throw std::domain_error("ExactScalar: subtracting infinity");
  if (inf_) return *this;
  v_ -= o.v_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (inf_ || o.inf_) {
    // 0 * inf = 0; positive * inf = inf; negative * inf is undefined here
    // (never meaningful for the measures and kernels this library handles).
    int s = inf_ ? (o.inf_ ? 1 : o.sign()) : sign();
    if (s == 0) {
      inf_ = false;
      v_ = 0;
    } else if (s > 0) {
      inf_ = true;
      v_ = 0;
    } else {
      throw std::domain_error("ExactScalar: negative * infinity");
    }
    return *this;
  }
  v_ *= o.v_;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.inf_) {
    if (inf_) throw std::domain_error("ExactScalar: infinity / infinity");
    inf_ = false;
    v_ = 0;
    return *this;
  }
  if (o.v_ == 0) throw std::domain_error("ExactScalar: division by zero");
  if (inf_) {
    if (o.v_ < 0) throw std::domain_error("ExactScalar: infinity / negative");
    return *this;
  }
  v_ /= o.v_;
  return *this;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
  return a.v_ == b.v_;
}

bool operator<(const ExactScalar& a, const ExactScalar& b) {
  if (a.inf_) return false;
  if (b.inf_) return true;
  return a.v_ < b.v_;
}

ExactScalar ExactScalar::abs() const {
  if (inf_) return *this;
  ExactScalar r;
  r.v_ = ::abs(v_);
  return r;
}

ExactScalar ExactScalar::pow(long e) const {
  if (inf_) {
    if (e > 0) return *this;
    if (e == 0) return ExactScalar(1);
    return ExactScalar(0);
  }
  if (e == 0) return ExactScalar(1);
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), k);
  if (invert) {
    if (num == 0) throw std::domain_error("ExactScalar: 0^negative");
    std::swap(num, den);
  }
  mpq_class r(num);
  r /= mpq_class(den);
  return ExactScalar(std::move(r));
}

double ExactScalar::to_double() const {
  if (inf_) return HUGE_VAL;
  return v_.get_d();
}

std::string ExactScalar::to_string() const {
  if (inf_) return "inf";
  return v_.get_str();  // canonical: "3", "-3", "3/4"
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) {
  return os << s.to_string();
}

ExactScalar q_pow(long q, long e) {
  if (q < 2) throw std::domain_error("q_pow: q must be >= 2");
  return ExactScalar(q).pow(e);
}

}  // namespace fgb
