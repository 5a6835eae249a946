#pragma once

// Free graded-commutative bigraded algebras on weighted generators, truncated
// above a weight (and optionally a bidegree box). When ∂ and ∂̄ never lower
// weight, the truncation ideal is closed under both differentials, so the
// quotient is again a cbba. Used to build small test models with
// nontrivial products.

#include "abcml/cbba.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace abcml {

struct Term {
  Scalar coeff;
  std::vector<std::string> factors;  // empty = unit
};

using Polynomial = std::vector<Term>;

class FreeModelBuilder {
 public:
  FreeModelBuilder& generator(std::string name, Bidegree degree, int weight = 1) {
    if (weight < 1) throw std::invalid_argument("generator weight must be positive");
    if (index_.count(name)) throw std::invalid_argument("duplicate generator '" + name + "'");
    index_[name] = gens_.size();
    gens_.push_back({std::move(name), degree, weight, {}, {}, std::nullopt});
    return *this;
  }
  FreeModelBuilder& del(const std::string& g, Polynomial p) {
    gens_.at(idx(g)).del = std::move(p);
    return *this;
  }
  FreeModelBuilder& delbar(const std::string& g, Polynomial p) {
    gens_.at(idx(g)).delbar = std::move(p);
    return *this;
  }
  /// conj(g) = coeff · target
  FreeModelBuilder& conjugate(const std::string& g, const std::string& target, Scalar coeff = Scalar(1)) {
    gens_.at(idx(g)).conj = std::make_pair(idx(target), coeff);
    return *this;
  }

  /// max_p / max_q < 0 means unbounded.
  CbbaModel build(int max_weight, int max_p = -1, int max_q = -1) const {
    const std::size_t ng = gens_.size();
    auto in_range = [&](const Mono& m) {
      Bidegree d = degree_of(m);
      return weight_of(m) <= max_weight && (max_p < 0 || d.p <= max_p) && (max_q < 0 || d.q <= max_q);
    };

    // enumerate monomials by increasing generator index
    std::vector<Mono> monos{Mono(ng, 0)};
    for (std::size_t g = 0; g < ng; ++g) {
      std::vector<Mono> next;
      for (const auto& m : monos) {
        Mono cur = m;
        next.push_back(cur);
        const int cap = odd(g) ? 1 : max_weight;
        for (int e = 1; e <= cap; ++e) {
          cur[g] = e;
          if (!in_range(cur)) break;
          next.push_back(cur);
        }
      }
      monos = std::move(next);
    }
    std::sort(monos.begin(), monos.end(), [&](const Mono& a, const Mono& b) {
      auto ka = std::make_tuple(degree_of(a).total(), degree_of(a), weight_of(a));
      auto kb = std::make_tuple(degree_of(b).total(), degree_of(b), weight_of(b));
      if (ka != kb) return ka < kb;
      return a > b;
    });

    std::map<Mono, std::size_t> pos;
    std::vector<BasisElement> basis;
    for (const auto& m : monos) {
      pos[m] = basis.size();
      basis.push_back({name_of(m), degree_of(m)});
    }
    CbbaModel out(std::move(basis), "1");

    auto to_vector = [&](const std::map<Mono, Scalar>& poly) {
      Vector v = out.zero();
      for (const auto& [m, c] : poly) {
        auto it = pos.find(m);
        if (it != pos.end()) v[it->second] += c;
      }
      return v;
    };

    for (const auto& a : monos)
      for (const auto& b : monos) {
        auto [sign, m] = mono_product(a, b);
        if (sign == 0 || !pos.count(m)) continue;
        out.set_product(pos[a], pos[b], SparseVector{{pos[m], Scalar(sign)}});
      }

    for (const auto& g : gens_)
      for (const auto* p : {&g.del, &g.delbar})
        for (const auto& t : *p)
          if (weight_of(mono_of(t.factors)) < g.weight)
            throw std::invalid_argument("differential of '" + g.name + "' lowers weight");

    for (const auto& m : monos) {
      out.set_del(pos[m], to_vector(apply(m, true)));
      out.set_delbar(pos[m], to_vector(apply(m, false)));
    }

    bool has_conj = std::all_of(gens_.begin(), gens_.end(), [](const Gen& g) { return g.conj.has_value(); });
    if (has_conj) {
      std::vector<std::pair<std::size_t, Scalar>> conj(monos.size());
      for (const auto& m : monos) {
        std::map<Mono, Scalar> poly{{Mono(ng, 0), Scalar(1)}};
        for (std::size_t g = 0; g < ng; ++g)
          for (int e = 0; e < m[g]; ++e) {
            Mono single(ng, 0);
            single[gens_[g].conj->first] = 1;
            poly = poly_times(poly, {{single, gens_[g].conj->second}});
          }
        if (poly.size() != 1 || !pos.count(poly.begin()->first))
          throw std::invalid_argument("conjugation does not preserve the truncation");
        conj[pos[m]] = {pos[poly.begin()->first], poly.begin()->second};
      }
      out.set_conjugation(std::move(conj));
    }
    return out;
  }

 private:
  using Mono = std::vector<int>;
  struct Gen {
    std::string name;
    Bidegree degree;
    int weight;
    Polynomial del;
    Polynomial delbar;
    std::optional<std::pair<std::size_t, Scalar>> conj;
  };

  std::size_t idx(const std::string& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) throw std::out_of_range("unknown generator '" + g + "'");
    return it->second;
  }
  bool odd(std::size_t g) const { return gens_[g].degree.total() % 2 != 0; }
  Bidegree degree_of(const Mono& m) const {
    Bidegree d{0, 0};
    for (std::size_t g = 0; g < m.size(); ++g) d = d + Bidegree{gens_[g].degree.p * m[g], gens_[g].degree.q * m[g]};
    return d;
  }
  int weight_of(const Mono& m) const {
    int w = 0;
    for (std::size_t g = 0; g < m.size(); ++g) w += gens_[g].weight * m[g];
    return w;
  }
  std::string name_of(const Mono& m) const {
    std::string s;
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (m[g] == 0) continue;
      if (!s.empty()) s += "*";
      s += gens_[g].name;
      if (m[g] > 1) s += "^" + std::to_string(m[g]);
    }
    return s.empty() ? "1" : s;
  }
  Mono mono_of(const std::vector<std::string>& factors) const {
    Mono m(gens_.size(), 0);
    for (const auto& f : factors) m[idx(f)] += 1;
    return m;
  }

  /// Sign and canonical monomial of a·b (sign 0 when an odd generator repeats).
  std::pair<int, Mono> mono_product(const Mono& a, const Mono& b) const {
    Mono m(a.size());
    int sign = 1;
    for (std::size_t g = 0; g < a.size(); ++g) {
      m[g] = a[g] + b[g];
      if (odd(g) && m[g] > 1) return {0, m};
    }
    // each odd generator of b passes the odd generators of a with larger index
    for (std::size_t gb = 0; gb < b.size(); ++gb) {
      if (!b[gb] || !odd(gb)) continue;
      for (std::size_t ga = gb + 1; ga < a.size(); ++ga)
        if (a[ga] && odd(ga)) sign = -sign;
    }
    return {sign, m};
  }

  std::map<Mono, Scalar> poly_times(const std::map<Mono, Scalar>& p, const std::map<Mono, Scalar>& q) const {
    std::map<Mono, Scalar> out;
    for (const auto& [a, ca] : p)
      for (const auto& [b, cb] : q) {
        auto [s, m] = mono_product(a, b);
        if (s == 0) continue;
        out[m] += Scalar(s) * ca * cb;
      }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  std::map<Mono, Scalar> poly_of(const Polynomial& p) const {
    std::map<Mono, Scalar> out{};
    for (const auto& t : p) {
      std::map<Mono, Scalar> term{{Mono(gens_.size(), 0), t.coeff}};
      for (const auto& f : t.factors) {
        Mono single(gens_.size(), 0);
        single[idx(f)] = 1;
        term = poly_times(term, {{single, Scalar(1)}});
      }
      for (const auto& [m, c] : term) out[m] += c;
    }
    return out;
  }

  /// D(g·m') = D(g)·m' + (−1)^{|g|} g·D(m'), peeling the lowest generator.
  std::map<Mono, Scalar> apply(const Mono& m, bool is_del) const {
    std::size_t g = 0;
    while (g < m.size() && m[g] == 0) ++g;
    if (g == m.size()) return {};
    Mono rest = m;
    rest[g] -= 1;
    Mono single(m.size(), 0);
    single[g] = 1;
    const Polynomial& dg = is_del ? gens_[g].del : gens_[g].delbar;
    auto out = poly_times(poly_of(dg), {{rest, Scalar(1)}});
    Scalar s(odd(g) ? -1 : 1);
    for (const auto& [mm, c] : poly_times({{single, s}}, apply(rest, is_del))) out[mm] += c;
    return out;
  }

  std::vector<Gen> gens_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace abcml
