#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fgb {

// Exact rational scalar with a distinguished +infinity.
//
// Infinity shows up as a genuine value in this code base (Gromov products of a
// point with itself, nu-measures of nested rectangles), so it is part of the
// scalar type rather than an error path. Conventions:
//
//   inf + x = inf            inf * x = inf   (x > 0)
//   inf - finite = inf       0 * inf = 0     (measure-theoretic convention)
//   finite / inf = 0         inf * negative, inf - inf, x / 0  ->  domain_error
//
// The 0 * inf = 0 rule is what lets integrals of functions vanishing on
// infinite-measure cells come out finite.
class ExactScalar {
 public:
  ExactScalar() : v_(0) {}
  ExactScalar(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit on purpose
  ExactScalar(long num, long den);
  explicit ExactScalar(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static ExactScalar infinity();
  // Accepts "inf", "-3", "7/4", "7/1". Decimal notation is rejected: exact
  // inputs must be rational literals. Throws std::invalid_argument.
  static ExactScalar from_string(std::string_view s);

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }
  // -1, 0, +1 (infinity is positive).
  int sign() const { return inf_ ? 1 : sgn(v_); }

  // Finite value accessor; throws std::domain_error on infinity.
  const mpq_class& value() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend bool operator<(const ExactScalar& a, const ExactScalar& b);
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
  friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return b < a; }
  friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return !(b < a); }
  friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return !(a < b); }

  ExactScalar abs() const;
  // Integer power; e < 0 inverts (throws on 0^negative). inf^e = inf for e > 0,
  // 1 for e = 0, 0 for e < 0.
  ExactScalar pow(long e) const;

  double to_double() const;  // infinity -> +HUGE_VAL
  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

 private:
  bool inf_ = false;
  mpq_class v_;
};

// q^e for integer e of either sign (q >= 2).
ExactScalar q_pow(long q, long e);

}  // namespace fgb
