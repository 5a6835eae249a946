#pragma once

// Linear expressions over the basis of a model, e.g. "E_L1+E_L2+E_R",
// "2*G^2 - 1/2 E_P^2", "(1+i)*dz*dzbar". A term is an optional coefficient
// followed by a basis id; if the id is unknown it is read as a product of
// ids separated by '*', each optionally raised to a power with '^'.

#include "abcml/cbba.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abcml {

/// Looks up names that are not basis ids (e.g. registered divisor classes).
using NameResolver = std::function<std::optional<Vector>(const std::string&)>;

namespace detail {

inline std::vector<std::pair<int, std::string>> split_terms(std::string_view text) {
  std::vector<std::pair<int, std::string>> terms;
  std::string cur;
  int sign = 1, depth = 0;
  auto flush = [&] {
    std::string t = trim(cur);
    if (t.empty()) throw ParseError("empty term in expression '" + std::string(text) + "'");
    terms.emplace_back(sign, t);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')' in expression");
    bool at_term_start = trim(cur).empty();
    if (depth == 0 && (ch == '+' || ch == '-')) {
      // a sign after '^' or '*' or at the start of a term belongs to the term
      std::string t = trim(cur);
      if (!t.empty() && t.back() != '^' && t.back() != '*') {
        flush();
        sign = ch == '-' ? -1 : 1;
        continue;
      }
      if (at_term_start) {
        if (ch == '-') sign = -sign;
        continue;
      }
    }
    cur += ch;
  }
  if (depth != 0) throw ParseError("unbalanced '(' in expression");
  flush();
  return terms;
}

inline bool is_coefficient_start(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '('; }

inline std::optional<Vector> lookup(const CbbaModel& m, const std::string& name, const NameResolver& resolve) {
  if (auto i = m.find(name)) return m.unit_vector(*i);
  if (resolve) return resolve(name);
  return std::nullopt;
}

inline Vector power_of(const CbbaModel& m, const std::string& factor, const NameResolver& resolve) {
  if (auto v = lookup(m, factor, resolve)) return *v;
  auto caret = factor.rfind('^');
  if (caret == std::string::npos) throw ParseError("unknown basis id '" + factor + "'");
  std::string base = trim(factor.substr(0, caret)), exp = trim(factor.substr(caret + 1));
  if (exp.empty() || !std::all_of(exp.begin(), exp.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad exponent in '" + factor + "'");
  auto b = lookup(m, base, resolve);
  if (!b) throw ParseError("unknown basis id '" + base + "'");
  Vector out = m.unit_vector(m.unit());
  for (int k = std::stoi(exp); k > 0; --k) out = m.multiply(out, *b);
  return out;
}

inline Vector monomial(const CbbaModel& m, const std::string& text, const NameResolver& resolve) {
  if (auto v = lookup(m, text, resolve)) return *v;
  Vector out = m.unit_vector(m.unit());
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t star = text.find('*', start);
    std::string f = trim(text.substr(start, star == std::string::npos ? std::string::npos : star - start));
    if (f.empty()) throw ParseError("empty factor in '" + text + "'");
    out = m.multiply(out, power_of(m, f, resolve));
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return out;
}

}  // namespace detail

/// Coefficient vector of a linear expression in the model's basis ids.
inline Vector parse_vector(const CbbaModel& m, std::string_view text, const NameResolver& resolve = {}) {
  if (trim(text).empty()) throw ParseError("empty expression");
  Vector v = m.zero();
  for (auto& [sign, term] : detail::split_terms(text)) {
    Scalar coeff(sign);
    std::string rest = term;
    if (detail::is_coefficient_start(rest[0]) && !detail::lookup(m, rest, resolve)) {
      std::size_t end = 0;
      if (rest[0] == '(') {
        end = rest.find(')');
        coeff *= parse_gaussian(rest.substr(1, end - 1));
        ++end;
      } else {
        while (end < rest.size() && (std::isdigit(static_cast<unsigned char>(rest[end])) || rest[end] == '/')) ++end;
        coeff *= Scalar(parse_rational(rest.substr(0, end)));
      }
      rest = trim(rest.substr(end));
      if (!rest.empty() && rest[0] == '*') rest = trim(rest.substr(1));
      if (rest.empty()) rest = m.basis(m.unit()).id;
    }
    axpy(v, coeff, detail::monomial(m, rest, resolve));
  }
  return v;
}

inline Element parse_element(const ValidatedModel& vm, std::string_view text) {
  return Element(vm.shared(), parse_vector(vm.model(), text));
}

/// Renders a vector as "c1*id1 + c2*id2 ..." using basis ids.
inline std::string format_vector(const CbbaModel& m, const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const Scalar& c = v[i];
    std::string id = m.basis(i).id;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    Scalar a = negative ? -c : c;
    std::string term;
    if (a == Scalar(1)) term = id;
    else if (a.is_real()) term = to_string(a) + "*" + id;
    else term = "(" + to_string(a) + ")*" + id;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace abcml
