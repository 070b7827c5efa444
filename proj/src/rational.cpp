#include "mpg/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpg {

double Rational::to_double() const {
  double d = q_.get_d();  // truncated toward zero, so at most one ulp shy
  if (!std::isfinite(d)) return d;
  mpq_class e1 = q_ - mpq_class(d);
  if (e1 == 0) return d;
  double d2 = std::nextafter(d, e1 > 0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity());
  if (!std::isfinite(d2)) return d;
  if (e1 < 0) e1 = -e1;
  mpq_class e2 = q_ - mpq_class(d2);
  if (e2 < 0) e2 = -e2;
  return e2 < e1 ? d2 : d;
}

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw std::invalid_argument("division by zero rational");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const { return q_.get_str(); }

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

mpz_class floor_z(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

mpz_class ceil_z(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(const std::string& text) {
  throw std::invalid_argument("not a rational literal: '" + text + "'");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  // strip surrounding whitespace
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) bad(text);
  s = s.substr(b, e - b + 1);

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) bad(text);

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds)) bad(text);
    // base 10 always: the default base 0 would read leading zeros as octal
    mpz_class n(ns, 10), d(ds, 10);
    if (d == 0) bad(text);
    mpq_class q(n, d);
    q.canonicalize();
    if (neg) q = -q;
    return Rational(q);
  }

  // decimal: digits [. digits] [e[+-]digits], all parts exact
  std::string mantissa = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = s.substr(0, epos);
    std::string es = s.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es = es.substr(1);
    }
    if (!all_digits(es) || es.size() > 6) bad(text);
    exp10 = std::stol(es);
    if (eneg) exp10 = -exp10;
  }

  std::string digits = mantissa;
  auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exp10 -= static_cast<long>(mantissa.size() - dot - 1);
  }
  if (!all_digits(digits)) bad(text);

  mpz_class n(digits, 10);
  mpq_class q(n);
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0)
    q /= mpq_class(pow);
  else
    q *= mpq_class(pow);
  q.canonicalize();
  if (neg) q = -q;
  return Rational(q);
}

}  // namespace mpg
