#pragma once

// Exact numbers r + (1/π)·Σ c_p log p with rational r, c_p. Equality is
// structural (logs of primes are linearly independent over ℚ); ordering and
// decimal display go through MPFR.

#include "abcml/scalar.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace abcml {

/// Prime factorization n = Π p^e for n ≥ 1 (trial division, then Pollard rho).
inline std::map<Integer, int> factorize(Integer n) {
  if (n < 1) throw std::domain_error("factorize needs a positive integer");
  std::map<Integer, int> out;
  for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2))
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  if (n == 1) return out;
  // remaining cofactor has no prime factors below 10^4
  auto rho = [](const Integer& m) {
    for (unsigned long c = 1;; ++c) {
      Integer x = 2, y = 2, d = 1;
      auto f = [&](const Integer& v) { return Integer((v * v + c) % m); };
      while (d == 1) {
        x = f(x);
        y = f(f(y));
        Integer diff = abs(x - y);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
      }
      if (d != m) return d;
    }
  };
  std::vector<Integer> stack{n};
  while (!stack.empty()) {
    Integer m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
      ++out[m];
      continue;
    }
    Integer d = rho(m);
    stack.push_back(d);
    stack.push_back(Integer(m / d));
  }
  return out;
}

class LogValue {
 public:
  LogValue() = default;
  explicit LogValue(Rational r) : rational_(std::move(r)) {}

  /// (c/π)·log p for a prime p.
  static LogValue log_prime(const Integer& p, const Rational& c) {
    LogValue v;
    if (!abcml::is_zero(c)) v.logs_[p] = c;
    return v;
  }
  /// (c/π)·log q for a positive rational q.
  static LogValue log_rational(const Rational& q, const Rational& c = 1) {
    if (sgn(q) <= 0) throw std::domain_error("log of a non-positive rational");
    LogValue v;
    for (const auto& [p, e] : factorize(q.get_num())) v += log_prime(p, Rational(c * e));
    for (const auto& [p, e] : factorize(q.get_den())) v -= log_prime(p, Rational(c * e));
    return v;
  }

  const Rational& rational_part() const { return rational_; }
  const std::map<Integer, Rational>& log_part() const { return logs_; }
  bool is_zero() const { return abcml::is_zero(rational_) && logs_.empty(); }

  LogValue& operator+=(const LogValue& o) {
    rational_ += o.rational_;
    for (const auto& [p, c] : o.logs_) {
      Rational& mine = logs_[p];
      mine += c;
      if (abcml::is_zero(mine)) logs_.erase(p);
    }
    return *this;
  }
  LogValue& operator-=(const LogValue& o) { return *this += -o; }
  LogValue& operator*=(const Rational& a) {
    if (abcml::is_zero(a)) return *this = LogValue();
    rational_ *= a;
    for (auto& [p, c] : logs_) c *= a;
    return *this;
  }
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
  friend LogValue operator*(const Rational& a, LogValue v) { return v *= a; }
  friend LogValue operator*(LogValue v, const Rational& a) { return v *= a; }
  LogValue operator-() const {
    LogValue v = *this;
    return v *= Rational(-1);
  }
  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.rational_ == b.rational_ && a.logs_ == b.logs_;
  }

  /// "(log 2)/π", "1/2 + (log 3 - 2 log 5)/π", "0".
  std::string symbolic() const {
    std::string out;
    if (!abcml::is_zero(rational_) || logs_.empty()) out = to_string(rational_);
    if (logs_.empty()) return out;
    std::string inner;
    for (const auto& [p, c] : logs_) {
      Rational a = abs(c);
      std::string term = (a == 1 ? "" : to_string(a) + " ") + "log " + p.get_str();
      if (inner.empty()) inner = sgn(c) < 0 ? "-" + term : term;
      else inner += (sgn(c) < 0 ? " - " : " + ") + term;
    }
    std::string logs = "(" + inner + ")/π";
    if (out.empty()) return logs;
    return out + " + " + logs;
  }

  /// Fixed-point decimal with `digits` digits after the point, correctly rounded.
  std::string decimal(int digits) const {
    if (digits < 0 || digits > 10000) throw std::invalid_argument("decimal digits out of range");
    const mpfr_prec_t bits = static_cast<mpfr_prec_t>(digits * 3.33 + 64 + 8 * logs_.size());
    Mpfr v(bits);
    evaluate(v);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNf", digits, v.x);
    std::string s(buf);
    mpfr_free_str(buf);
    if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
  }

  /// Sign, decided by evaluating at increasing precision until the value
  /// clears the error bound. A nonzero canonical form is never 0.
  int sign() const {
    if (is_zero()) return 0;
    if (logs_.empty()) return sgn(rational_);
    for (mpfr_prec_t bits = 64; bits <= (1 << 20); bits *= 2) {
      Mpfr v(bits);
      evaluate(v);
      Mpfr bound(bits);
      mpfr_set_ui_2exp(bound.x, 1, -(bits - 16 - static_cast<mpfr_prec_t>(2 * logs_.size())), MPFR_RNDU);
      mpfr_mul_d(bound.x, bound.x, magnitude(), MPFR_RNDU);
      if (mpfr_cmpabs(v.x, bound.x) > 0) return mpfr_sgn(v.x);
    }
    throw std::runtime_error("could not resolve the sign of " + symbolic());
  }

  LogValue abs_value() const { return sign() < 0 ? -*this : *this; }

 private:
  struct Mpfr {
    mpfr_t x;
    explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(x, bits); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
  };

  double magnitude() const {
    double m = 1 + std::abs(rational_.get_d());
    for (const auto& [p, c] : logs_) m += std::abs(c.get_d()) * (mpz_sizeinbase(p.get_mpz_t(), 2) + 1);
    return m;
  }

  void evaluate(Mpfr& out) const {
    const mpfr_prec_t bits = mpfr_get_prec(out.x);
    Mpfr sum(bits), term(bits), pi(bits);
    mpfr_set_zero(sum.x, 1);
    for (const auto& [p, c] : logs_) {
      mpfr_set_z(term.x, p.get_mpz_t(), MPFR_RNDN);
      mpfr_log(term.x, term.x, MPFR_RNDN);
      mpfr_mul_q(term.x, term.x, c.get_mpq_t(), MPFR_RNDN);
      mpfr_add(sum.x, sum.x, term.x, MPFR_RNDN);
    }
    mpfr_const_pi(pi.x, MPFR_RNDN);
    mpfr_div(sum.x, sum.x, pi.x, MPFR_RNDN);
    mpfr_set_q(out.x, rational_.get_mpq_t(), MPFR_RNDN);
    mpfr_add(out.x, out.x, sum.x, MPFR_RNDN);
  }

  Rational rational_;
  std::map<Integer, Rational> logs_;
};

/// (1/π)·log|z| = (1/2π)·log(re² + im²).
inline LogValue log_abs(const GaussianRational& z) {
  if (z.is_zero()) throw std::domain_error("log|z| of z = 0");
  return LogValue::log_rational(z.norm(), Rational(1, 2));
}

}  // namespace abcml
