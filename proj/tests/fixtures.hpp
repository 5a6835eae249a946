#pragma once

// Small cbba models shared by the unit and acceptance suites.

#include "abcml/cbba.hpp"
#include "abcml/free_model.hpp"

#include <random>

namespace abcml::fixtures {

inline Scalar I() { return Scalar::i(); }

/// Λ(dz, dz̄) with zero differentials.
inline CbbaModel torus() {
  return FreeModelBuilder()
      .generator("dz", {1, 0})
      .generator("dzbar", {0, 1})
      .conjugate("dz", "dzbar")
      .conjugate("dzbar", "dz")
      .build(2);
}

/// Square-zero extension of a bicomplex (all products of positive-degree
/// elements vanish). `basis` lists ids with bidegrees; unit "1" is added.
inline CbbaModel square_zero(std::vector<BasisElement> basis,
                             const std::vector<std::tuple<std::string, std::string, Scalar>>& del,
                             const std::vector<std::tuple<std::string, std::string, Scalar>>& delbar) {
  basis.insert(basis.begin(), BasisElement{"1", {0, 0}});
  CbbaModel m(std::move(basis), "1");
  for (std::size_t i = 0; i < m.dim(); ++i) {
    m.set_product(m.unit(), i, m.unit_vector(i));
    m.set_product(i, m.unit(), m.unit_vector(i));
  }
  auto fill = [&](const auto& entries, bool is_del) {
    std::vector<Vector> cols(m.dim(), m.zero());
    for (const auto& [src, dst, c] : entries) cols[m.index_of(src)][m.index_of(dst)] += c;
    for (std::size_t j = 0; j < m.dim(); ++j) is_del ? m.set_del(j, cols[j]) : m.set_delbar(j, cols[j]);
  };
  fill(del, true);
  fill(delbar, false);
  return m;
}

/// ∂̄u = w: [w] is a nonzero Bott-Chern class that is d-exact, so the
/// ∂∂̄-Lemma fails.
inline CbbaModel non_ddbar() {
  return square_zero({{"u", {1, 0}}, {"w", {1, 1}}}, {}, {{"u", "w", Scalar(1)}});
}

/// A function f with ∂∂̄f = c ≠ 0 plus an extra closed (1,1)-class e.
inline CbbaModel ddbar_exact_11() {
  return square_zero({{"f", {0, 0}}, {"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}, {"e", {1, 1}}},
                     {{"f", "a", Scalar(1)}, {"b", "c", Scalar(1)}},
                     {{"f", "b", Scalar(1)}, {"a", "c", Scalar(-1)}});
}

/// 13-dimensional model with a nontrivial ABC-Massey product ⟨a,b,c⟩ of
/// three real (1,1)-classes: ab = i∂∂̄x, bc = i∂∂̄y and ay = t survives in H_A^{2,2}.
inline CbbaModel abc_nontrivial() {
  std::vector<BasisElement> basis{{"1", {0, 0}},  {"a", {1, 1}},  {"b", {1, 1}},  {"c", {1, 1}}, {"x", {1, 1}},
                                  {"y", {1, 1}},  {"x1", {2, 1}}, {"y1", {2, 1}}, {"x2", {1, 2}}, {"y2", {1, 2}},
                                  {"u", {2, 2}},  {"v", {2, 2}},  {"t", {2, 2}}};
  CbbaModel m(basis, "1");
  auto e = [&](const char* id) { return m.unit_vector(m.index_of(id)); };
  auto set = [&](const char* p, const char* q, const char* r) {
    m.set_product(m.index_of(p), m.index_of(q), e(r));
    m.set_product(m.index_of(q), m.index_of(p), e(r));
  };
  for (std::size_t i = 0; i < m.dim(); ++i) {
    m.set_product(m.unit(), i, m.unit_vector(i));
    m.set_product(i, m.unit(), m.unit_vector(i));
  }
  set("a", "b", "u");
  set("b", "c", "v");
  set("a", "y", "t");
  // ∂∂̄x = −i·u, ∂∂̄y = −i·v
  m.set_del(m.index_of("x"), e("x1"));
  m.set_delbar(m.index_of("x"), e("x2"));
  m.set_del(m.index_of("y"), e("y1"));
  m.set_delbar(m.index_of("y"), e("y2"));
  m.set_del(m.index_of("x2"), scaled(-I(), e("u")));
  m.set_delbar(m.index_of("x1"), scaled(I(), e("u")));
  m.set_del(m.index_of("y2"), scaled(-I(), e("v")));
  m.set_delbar(m.index_of("y1"), scaled(I(), e("v")));
  std::vector<std::pair<std::size_t, Scalar>> conj(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) conj[i] = {i, Scalar(1)};
  conj[m.index_of("x1")] = {m.index_of("x2"), Scalar(1)};
  conj[m.index_of("x2")] = {m.index_of("x1"), Scalar(1)};
  conj[m.index_of("y1")] = {m.index_of("y2"), Scalar(1)};
  conj[m.index_of("y2")] = {m.index_of("y1"), Scalar(1)};
  m.set_conjugation(std::move(conj));
  return m;
}

/// Invariant forms of the Kodaira-Thurston surface: dφ1 = 0, ∂̄φ2 = φ1φ̄1.
/// ⟨φ1, φ1, φ̄1⟩ is a nontrivial ordinary Massey product.
inline CbbaModel kodaira_thurston() {
  return FreeModelBuilder()
      .generator("phi1", {1, 0})
      .generator("phi2", {1, 0})
      .generator("phibar1", {0, 1})
      .generator("phibar2", {0, 1})
      .delbar("phi2", {{Scalar(1), {"phi1", "phibar1"}}})
      .del("phibar2", {{Scalar(1), {"phibar1", "phi1"}}})
      .conjugate("phi1", "phibar1")
      .conjugate("phibar1", "phi1")
      .conjugate("phi2", "phibar2")
      .conjugate("phibar2", "phi2")
      .build(4);
}

/// Weight-truncated free model on closed (1,1)-classes a, b, c with
/// i∂∂̄x = ab and i∂∂̄y = bc. Both ⟨a,b,c⟩_ABC and ⟨a,b,c⟩ are defined;
/// the ∂∂̄-Lemma fails so d^c does not kill the ABC product.
inline CbbaModel free_abc(int max_weight = 3) {
  return FreeModelBuilder()
      .generator("a", {1, 1})
      .generator("b", {1, 1})
      .generator("c", {1, 1})
      .generator("x", {1, 1}, 2)
      .generator("y", {1, 1}, 2)
      .generator("x1", {2, 1}, 2)
      .generator("x2", {1, 2}, 2)
      .generator("y1", {2, 1}, 2)
      .generator("y2", {1, 2}, 2)
      .del("x", {{Scalar(1), {"x1"}}})
      .delbar("x", {{Scalar(1), {"x2"}}})
      .del("y", {{Scalar(1), {"y1"}}})
      .delbar("y", {{Scalar(1), {"y2"}}})
      .del("x2", {{-I(), {"a", "b"}}})
      .delbar("x1", {{I(), {"a", "b"}}})
      .del("y2", {{-I(), {"b", "c"}}})
      .delbar("y1", {{I(), {"b", "c"}}})
      .conjugate("a", "a")
      .conjugate("b", "b")
      .conjugate("c", "c")
      .conjugate("x", "x")
      .conjugate("y", "y")
      .conjugate("x1", "x2")
      .conjugate("x2", "x1")
      .conjugate("y1", "y2")
      .conjugate("y2", "y1")
      .build(max_weight);
}

/// Random bicomplex assembled from squares, zigzags and dots, hidden behind
/// a random bidegree-preserving change of basis; products are square-zero.
/// Dimension is at most max_dim.
inline CbbaModel random_model(std::mt19937_64& rng, std::size_t max_dim = 12) {
  std::uniform_int_distribution<int> small(0, 2), kind(0, 4), coef(-3, 3);
  std::vector<BasisElement> basis{{"1", {0, 0}}};
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> del, delbar;  // (src, dst, c)
  auto add = [&](Bidegree d) {
    basis.push_back({"e" + std::to_string(basis.size()), d});
    return basis.size() - 1;
  };
  while (true) {
    int k = kind(rng);
    std::size_t need = k == 0 ? 4 : (k == 1 || k == 2) ? 2 : 1;
    if (basis.size() + need > max_dim) break;
    Bidegree d{small(rng), small(rng)};
    if (k == 0) {  // square x, ∂x, ∂̄x, ∂∂̄x
      auto x = add(d), dx = add(d + kDelShift), bx = add(d + kDelbarShift), ddx = add(d + Bidegree{1, 1});
      del.emplace_back(x, dx, Scalar(1));
      delbar.emplace_back(x, bx, Scalar(1));
      del.emplace_back(bx, ddx, Scalar(1));
      delbar.emplace_back(dx, ddx, Scalar(-1));
    } else if (k == 1) {
      auto x = add(d), y = add(d + kDelShift);
      del.emplace_back(x, y, Scalar(1));
    } else if (k == 2) {
      auto x = add(d), y = add(d + kDelbarShift);
      delbar.emplace_back(x, y, Scalar(1));
    } else {
      add(d);
    }
  }
  const std::size_t n = basis.size();
  CbbaModel plain(basis, "1");
  std::vector<Vector> dcols(n, plain.zero()), bcols(n, plain.zero());
  for (auto& [s, t, c] : del) dcols[s][t] += c;
  for (auto& [s, t, c] : delbar) bcols[s][t] += c;
  ScalarMatrix D = ScalarMatrix::from_columns(n, dcols), B = ScalarMatrix::from_columns(n, bcols);

  // random invertible block change of basis per bidegree (unit fixed)
  ScalarMatrix P = ScalarMatrix::identity(n), Pinv = ScalarMatrix::identity(n);
  for (Bidegree d : plain.bidegrees()) {
    auto idx = plain.indices_of(d);
    idx.erase(std::remove(idx.begin(), idx.end(), plain.unit()), idx.end());
    if (idx.size() < 2) continue;
    // unitriangular blocks are always invertible
    ScalarMatrix U = ScalarMatrix::identity(idx.size()), L = ScalarMatrix::identity(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        U(i, j) = Scalar(coef(rng));
        L(j, i) = Scalar(Rational(coef(rng)), Rational(coef(rng) % 2));
      }
    ScalarMatrix block = L * U;
    auto inv = [&] {
      ScalarMatrix aug(idx.size(), 2 * idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) {
          aug(i, j) = block(i, j);
          aug(i, idx.size() + j) = i == j ? Scalar(1) : Scalar(0);
        }
      auto e = rref(aug);
      ScalarMatrix r(idx.size(), idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = e.reduced(i, idx.size() + j);
      return r;
    }();
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) {
        P(idx[i], idx[j]) = block(i, j);
        Pinv(idx[i], idx[j]) = inv(i, j);
      }
  }
  ScalarMatrix D2 = P * D * Pinv, B2 = P * B * Pinv;
  CbbaModel out(basis, "1");
  for (std::size_t i = 0; i < n; ++i) {
    out.set_product(out.unit(), i, out.unit_vector(i));
    out.set_product(i, out.unit(), out.unit_vector(i));
    out.set_del(i, D2.column(i));
    out.set_delbar(i, B2.column(i));
  }
  return out;
}

}  // namespace abcml::fixtures
