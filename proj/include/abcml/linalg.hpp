#pragma once

// Dense exact linear algebra over a field (Rational or GaussianRational).
// Subspaces are kept in reduced row-echelon form so equality is structural.

#include "abcml/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace abcml {

template <class F>
using Vec = std::vector<F>;

template <class F>
Vec<F> zero_vec(std::size_t n) {
  return Vec<F>(n, F(0));
}

template <class F>
bool is_zero_vec(std::span<const F> v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}
template <class F>
bool is_zero_vec(const Vec<F>& v) {
  return is_zero_vec(std::span<const F>(v));
}

template <class F>
Vec<F>& axpy(Vec<F>& y, const F& a, const Vec<F>& x) {
  assert(x.size() == y.size());
  if (is_zero(a)) return y;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!is_zero(x[i])) y[i] += a * x[i];
  return y;
}

template <class F>
Vec<F> scaled(const F& a, Vec<F> v) {
  for (auto& x : v) x *= a;
  return v;
}

template <class F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b) {
  return axpy(a, F(1), b);
}
template <class F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b) {
  return axpy(a, F(-1), b);
}

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<Vec<F>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<Vec<F>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const F> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec<F> column(std::size_t j) const {
    Vec<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Vec<F> operator*(const Vec<F>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec<F> out = zero_vec<F>(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!abcml::is_zero(v[j]) && !abcml::is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const F& a = (*this)(i, k);
        if (abcml::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (!abcml::is_zero(o(k, j))) out(i, j) += a * o(k, j);
      }
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    Matrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
    return out;
  }
  Matrix operator-(const Matrix& o) const { return *this + o.scaled(F(-1)); }
  Matrix scaled(const F& a) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= a;
    return out;
  }
  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return abcml::is_zero(x); });
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
struct EchelonForm {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination; rows beyond pivots.size() are zero.
template <class F>
EchelonForm<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// A linear subspace of F^n with canonical (RREF) basis.
template <class F>
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(std::size_t ambient, const std::vector<Vec<F>>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    auto e = rref(Matrix<F>::from_rows(ambient, vectors));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      auto row = e.reduced.row(i);
      s.basis_.emplace_back(row.begin(), row.end());
    }
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace full(std::size_t n) {
    std::vector<Vec<F>> vs;
    for (std::size_t i = 0; i < n; ++i) {
      Vec<F> v = zero_vec<F>(n);
      v[i] = F(1);
      vs.push_back(std::move(v));
    }
    return span(n, vs);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<F>>& basis() const { return basis_; }

  /// v minus its reduction against the canonical basis; zero iff v ∈ span.
  Vec<F> reduce(Vec<F> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("ambient dimension mismatch");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      F c = v[pivots_[i]];
      if (!is_zero(c)) axpy(v, F(-c), basis_[i]);
    }
    return v;
  }
  bool contains(const Vec<F>& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& o) const {
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const Vec<F>& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  std::vector<Vec<F>> basis_;
  std::vector<std::size_t> pivots_;
};

template <class F>
bool contains(const Subspace<F>& s, const Vec<F>& v) {
  return s.contains(v);
}

/// Basis of {v : m v = 0}.
template <class F>
Subspace<F> kernel_basis(const Matrix<F>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> vs;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v = zero_vec<F>(m.cols());
    v[free] = F(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    vs.push_back(std::move(v));
  }
  return Subspace<F>::span(m.cols(), vs);
}

/// Basis of the column span.
template <class F>
Subspace<F> image_basis(const Matrix<F>& m) {
  std::vector<Vec<F>> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace<F>::span(m.rows(), cols);
}

template <class F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: ambient dimension mismatch");
  std::vector<Vec<F>> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace<F>::span(a.ambient_dim(), vs);
}

template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: ambient dimension mismatch");
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace<F>(n);
  // Σ c_i a_i − Σ d_j b_j = 0
  std::vector<Vec<F>> cols = a.basis();
  for (const auto& v : b.basis()) cols.push_back(scaled(F(-1), v));
  auto ker = kernel_basis(Matrix<F>::from_columns(n, cols));
  std::vector<Vec<F>> out;
  for (const auto& k : ker.basis()) {
    Vec<F> v = zero_vec<F>(n);
    for (std::size_t i = 0; i < a.dim(); ++i) axpy(v, k[i], a.basis()[i]);
    out.push_back(std::move(v));
  }
  return Subspace<F>::span(n, out);
}

/// Vectors that extend a basis of `small` to a basis of `big`, chosen from
/// big's canonical basis.
template <class F>
std::vector<Vec<F>> quotient_basis(const Subspace<F>& big, const Subspace<F>& small) {
  if (big.ambient_dim() != small.ambient_dim())
    throw std::invalid_argument("quotient_basis: ambient dimension mismatch");
  if (!big.contains(small)) throw std::invalid_argument("quotient_basis: subspace not contained");
  std::vector<Vec<F>> out;
  Subspace<F> running = small;
  for (const auto& v : big.basis()) {
    if (running.contains(v)) continue;
    out.push_back(v);
    running = sum(running, Subspace<F>::span(big.ambient_dim(), {v}));
  }
  return out;
}

/// Some x with m x = rhs, or nullopt when rhs ∉ im m.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  auto e = rref(std::move(aug));
  Vec<F> x = zero_vec<F>(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

/// Coordinates of v in the (independent) list `basis`, if v lies in its span.
template <class F>
std::optional<Vec<F>> coordinates(std::size_t ambient, const std::vector<Vec<F>>& basis, const Vec<F>& v) {
  if (basis.empty()) return is_zero_vec(v) ? std::optional<Vec<F>>(Vec<F>{}) : std::nullopt;
  return solve(Matrix<F>::from_columns(ambient, basis), v);
}

}  // namespace abcml
