#include "abcml/linalg.hpp"
#include "abcml/scalar.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace abcml;
using RMat = Matrix<Rational>;
using RV = Vec<Rational>;

namespace {

RMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int spread = 3) {
  std::uniform_int_distribution<int> d(-spread, spread);
  RMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rational(d(rng), 1 + std::abs(d(rng)));
      m(i, j).canonicalize();
    }
  return m;
}

RV random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-4, 4);
  RV v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::size_t oracle_rank(const RMat& m) {
  oracle::Dense d(m.rows(), std::vector<Scalar>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = Scalar(m(i, j));
  return oracle::naive_rank(d);
}

/// Product of a random r×k and k×c matrix: rank at most k.
RMat low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k) * random_matrix(rng, k, c);
}

}  // namespace

TEST(Scalar, ParsesRationalsAndGaussians) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_gaussian("1/2-3i"), GaussianRational(Rational(1, 2), Rational(-3)));
  EXPECT_EQ(parse_gaussian("i"), GaussianRational::i());
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_gaussian("2+x"), ParseError);
}

TEST(Scalar, GaussianFieldOperations) {
  GaussianRational a(Rational(1), Rational(2)), b(Rational(-3, 4), Rational(1, 3));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(a * a.conj(), GaussianRational(a.norm()));
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
}

TEST(Kernel, TrivialCases) {
  EXPECT_EQ(kernel_basis(RMat(3, 3)).dim(), 3u);
  EXPECT_EQ(kernel_basis(RMat::identity(4)).dim(), 0u);
  EXPECT_EQ(image_basis(RMat(3, 3)).dim(), 0u);
  EXPECT_EQ(image_basis(RMat::identity(4)), Subspace<Rational>::full(4));
}

TEST(Kernel, RandomMatricesAgainstOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    RMat m = t % 2 ? random_matrix(rng, 6, 4) : low_rank(rng, 6, 4, 1 + t % 3);
    auto k = kernel_basis(m);
    for (const auto& v : k.basis()) EXPECT_TRUE(is_zero_vec(m * v));
    std::size_t r = oracle_rank(m);
    EXPECT_EQ(rank(m), r);
    EXPECT_EQ(k.dim() + r, m.cols());
    EXPECT_EQ(image_basis(m).dim(), r);
  }
}

TEST(Image, OuterProductSum) {
  RV u{1, 2, 0, -1}, v{0, 1, 1, 3}, a{1, 0, 2}, b{2, -1, 0};
  RMat m(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = u[i] * a[j] + v[i] * b[j];
  auto im = image_basis(m);
  EXPECT_EQ(im.dim(), 2u);
  EXPECT_TRUE(im.contains(u));
  EXPECT_TRUE(im.contains(v));
}

TEST(Subspace, IntersectAndSum) {
  auto x = Subspace<Rational>::span(2, {RV{1, 0}}), y = Subspace<Rational>::span(2, {RV{0, 1}});
  EXPECT_EQ(intersect(x, y).dim(), 0u);
  EXPECT_EQ(intersect(x, x), x);
  EXPECT_EQ(sum(x, y), Subspace<Rational>::full(2));
}

TEST(Subspace, DimensionFormulaOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    std::vector<RV> va, vb;
    for (int k = 0; k < 1 + t % 5; ++k) va.push_back(random_vec(rng, 8));
    for (int k = 0; k < 1 + (t / 5) % 5; ++k) vb.push_back(random_vec(rng, 8));
    // share a vector now and then
    if (t % 3 == 0) vb.push_back(va[0]);
    auto a = Subspace<Rational>::span(8, va), b = Subspace<Rational>::span(8, vb);
    auto i = intersect(a, b), s = sum(a, b);
    EXPECT_EQ(a.dim() + b.dim(), i.dim() + s.dim());
    for (const auto& v : i.basis()) EXPECT_TRUE(a.contains(v) && b.contains(v));
    // oracle: a ∩ b from the kernel of [A | −B]
    RMat joint(8, va.size() + vb.size());
    for (std::size_t k = 0; k < va.size(); ++k)
      for (std::size_t r = 0; r < 8; ++r) joint(r, k) = va[k][r];
    for (std::size_t k = 0; k < vb.size(); ++k)
      for (std::size_t r = 0; r < 8; ++r) joint(r, va.size() + k) = -vb[k][r];
    std::vector<RV> inter;
    auto joint_kernel = kernel_basis(joint);
    for (const auto& z : joint_kernel.basis()) {
      RV w(8);
      for (std::size_t k = 0; k < va.size(); ++k)
        for (std::size_t r = 0; r < 8; ++r) w[r] += z[k] * va[k][r];
      inter.push_back(w);
    }
    EXPECT_EQ(Subspace<Rational>::span(8, inter), i);
  }
}

TEST(Subspace, CanonicalFormDecidesEquality) {
  auto a = Subspace<Rational>::span(3, {RV{1, 1, 0}, RV{0, 1, 1}});
  auto b = Subspace<Rational>::span(3, {RV{1, 2, 1}, RV{1, 0, -1}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.basis(), b.basis());
  EXPECT_NE(a, Subspace<Rational>::span(3, {RV{1, 0, 0}, RV{0, 1, 0}}));
}

TEST(Subspace, QuotientBasis) {
  auto full = Subspace<Rational>::full(4);
  EXPECT_TRUE(quotient_basis(full, full).empty());
  auto small = Subspace<Rational>::span(4, {RV{1, 1, 0, 0}});
  auto q = quotient_basis(full, small);
  EXPECT_EQ(q.size(), 3u);
  std::vector<RV> all = q;
  all.push_back(RV{1, 1, 0, 0});
  EXPECT_EQ(Subspace<Rational>::span(4, all), full);
}

TEST(Solve, ZeroRhsAndRandomConsistency) {
  std::mt19937_64 rng(5);
  RMat m = random_matrix(rng, 5, 3);
  auto z = solve(m, RV(5));
  ASSERT_TRUE(z.has_value());
  EXPECT_TRUE(is_zero_vec(m * *z));
  for (int t = 0; t < 30; ++t) {
    RMat a = low_rank(rng, 6, 5, 1 + t % 4);
    RV rhs = a * random_vec(rng, 5);
    auto x = solve(a, rhs);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, rhs);
  }
}

TEST(Solve, InconsistentSystemHasNoSolution) {
  RMat m(2, 1);
  m(0, 0) = 1;
  m(1, 0) = 1;
  EXPECT_FALSE(solve(m, RV{1, 2}).has_value());
}
