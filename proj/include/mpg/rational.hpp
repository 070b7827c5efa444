#pragma once

#include <gmpxx.h>

#include <string>

namespace mpg {

// Exact rational arithmetic for scores and game values.  Thin layer over
// GMP's mpq_class so parsing and formatting stay under our control.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // implicit by design, mirrors integer literals
  Rational(long num, long den);

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  // nearest double; GMP's own conversion truncates, which loses the last ulp
  double to_double() const;
  // Canonical form: "a" when the denominator is 1, otherwise "a/b" with b > 0.
  std::string str() const;

  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

 private:
  mpq_class q_;
};

Rational abs(const Rational& r);

// Largest integer <= r and smallest integer >= r, as exact integers.
mpz_class floor_z(const Rational& r);
mpz_class ceil_z(const Rational& r);

// Accepts integers ("-3"), fractions ("7/4", denominator nonzero) and finite
// decimals with optional exponent ("0.25", "-1.5e2").  Throws
// std::invalid_argument on anything else; never falls back to floating point.
Rational parse_rational(const std::string& text);

}  // namespace mpg
