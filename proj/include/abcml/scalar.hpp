#pragma once

// Exact scalars: big-integer rationals (GMP) and Gaussian rationals.

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace abcml {

using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Parses "a", "-a", "a/b" (integers of any size). Result is canonical.
inline Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && t[0] == '-') i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : trim(s.substr(0, slash));
  std::string den = slash == std::string::npos ? "1" : trim(s.substr(slash + 1));
  if (!valid_int(num, true) || !valid_int(den, false))
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// re + im·i with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integer literals
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, Rational(-im_)}; }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }

/// "3/2", "-i", "1/2+3/4i", "2-1/3 i". The imaginary unit is a trailing 'i'.
inline GaussianRational parse_gaussian(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty scalar literal");
  GaussianRational out;
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    bool neg = false;
    if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      neg = term[0] == '-';
      term.erase(0, 1);
    }
    if (term.empty()) throw ParseError("malformed scalar literal '" + std::string(text) + "'");
    bool imag = term.back() == 'i';
    if (imag) {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
    }
    Rational v = term.empty() ? Rational(1) : parse_rational(term);
    if (neg) v = -v;
    out += imag ? GaussianRational(Rational(0), v) : GaussianRational(v);
    any = true;
  }
  if (!any) throw ParseError("malformed scalar literal '" + std::string(text) + "'");
  return out;
}

inline std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re());
  std::ostringstream os;
  auto imag_part = [](const Rational& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return to_string(v) + "i";
  };
  if (is_zero(z.re())) return imag_part(z.im());
  os << to_string(z.re());
  if (sgn(z.im()) > 0) os << '+';
  os << imag_part(z.im());
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

}  // namespace abcml
