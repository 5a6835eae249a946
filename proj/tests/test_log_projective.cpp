#include "abcml/log_value.hpp"
#include "abcml/p3_example.hpp"
#include "abcml/projective.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace abcml;

namespace {

GaussianRational random_gaussian(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

ProjectivePoint pt(long v) { return ProjectivePoint(GaussianRational(v)); }

}  // namespace

TEST(Factorize, SmallAndLarge) {
  EXPECT_EQ(factorize(Integer(360)), (std::map<Integer, int>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_TRUE(factorize(Integer(1)).empty());
  auto big = factorize(Integer("1000000016000000063"));
  EXPECT_EQ(big, (std::map<Integer, int>{{Integer("1000000007"), 1}, {Integer("1000000009"), 1}}));
}

TEST(LogValue, ExactArithmetic) {
  EXPECT_TRUE(log_abs(GaussianRational(1)).is_zero());
  EXPECT_TRUE(log_abs(GaussianRational::i()).is_zero());
  EXPECT_EQ(log_abs(GaussianRational(2)), LogValue::log_prime(Integer(2), 1));
  // |3 + 4i| = 5
  EXPECT_EQ(log_abs(GaussianRational(Rational(3), Rational(4))), LogValue::log_prime(Integer(5), 1));
  EXPECT_EQ(LogValue::log_rational(Rational(6)) - LogValue::log_rational(Rational(2)), LogValue::log_rational(Rational(3)));
  EXPECT_THROW(LogValue::log_rational(Rational(0)), std::domain_error);
  EXPECT_THROW(log_abs(GaussianRational(0)), std::domain_error);
}

TEST(LogValue, RenderingAndSign) {
  auto v = log_abs(GaussianRational(2));
  EXPECT_EQ(v.symbolic(), "(log 2)/π");
  EXPECT_EQ(v.decimal(10), "0.2206356002");
  EXPECT_EQ(v.sign(), 1);
  EXPECT_NEAR(std::stod(v.decimal(15)), std::log(2.0) / M_PI, 1e-15);
  EXPECT_EQ(LogValue().symbolic(), "0");
  EXPECT_EQ(LogValue().sign(), 0);
  // log(3/2)/π ≈ 0.129 > 1/10
  auto w = LogValue::log_rational(Rational(3, 2)) - LogValue(Rational(1, 10));
  EXPECT_EQ(w.sign(), 1);
  EXPECT_EQ((-w).abs_value(), w);
}

TEST(LogValue, SignNeedsHighPrecision) {
  // a rational within 10^-40 below (log 2)/π
  std::string digits = log_abs(GaussianRational(2)).decimal(40);
  ASSERT_EQ(digits.substr(0, 2), "0.");
  Rational below(Integer(digits.substr(2)), Integer("1" + std::string(40, '0')));
  below -= Rational(1, Integer("1" + std::string(40, '0')));
  auto diff = log_abs(GaussianRational(2)) - LogValue(below);
  EXPECT_EQ(diff.sign(), 1);
  EXPECT_EQ((-diff).sign(), -1);
}

TEST(CrossRatio, KnownValues) {
  auto inf = ProjectivePoint::infinity();
  EXPECT_EQ(cross_ratio(pt(0), inf, pt(2), pt(1)), GaussianRational(2));
  EXPECT_EQ(cross_ratio(pt(0), inf, pt(1), pt(-1)), GaussianRational(-1));
  EXPECT_EQ(cross_ratio(pt(0), inf, pt(1), pt(2)), GaussianRational(Rational(1, 2)));
  EXPECT_THROW(cross_ratio(pt(0), inf, pt(1), pt(1)), std::invalid_argument);
  EXPECT_THROW(ProjectivePoint(GaussianRational(0), GaussianRational(0)), std::invalid_argument);
}

TEST(CrossRatio, MobiusInvariance) {
  Mobius sigma(2, 1, 1, 3);
  std::vector<ProjectivePoint> ps{pt(0), ProjectivePoint::infinity(), pt(2), pt(1)};
  EXPECT_EQ(cross_ratio(sigma(ps[0]), sigma(ps[1]), sigma(ps[2]), sigma(ps[3])),
            cross_ratio(ps[0], ps[1], ps[2], ps[3]));
  std::mt19937_64 rng(7);
  int tested = 0;
  while (tested < 100) {
    GaussianRational a = random_gaussian(rng), b = random_gaussian(rng), c = random_gaussian(rng),
                     d = random_gaussian(rng);
    if ((a * d - b * c).is_zero()) continue;
    std::vector<ProjectivePoint> q;
    for (int k = 0; k < 4; ++k) q.emplace_back(random_gaussian(rng));
    bool distinct = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) distinct = distinct && !(q[i] == q[j]);
    if (!distinct) continue;
    Mobius m(a, b, c, d);
    EXPECT_EQ(cross_ratio(m(q[0]), m(q[1]), m(q[2]), m(q[3])), cross_ratio(q[0], q[1], q[2], q[3]));
    ++tested;
  }
}

TEST(MasseyValue, ClosedForm) {
  auto v = p3::massey_value(ProjectivePoint(GaussianRational(Rational(3, 2))), pt(5));
  auto expected = LogValue::log_prime(Integer(3), 1) - LogValue::log_prime(Integer(2), 1) -
                  LogValue::log_prime(Integer(5), 1);
  EXPECT_EQ(v, expected);
  EXPECT_EQ(p3::massey_value(pt(2), pt(1)).symbolic(), "(log 2)/π");
  // harmonic quadruple: |χ| = 1
  EXPECT_TRUE(p3::massey_value(pt(1), pt(-1)).is_zero());
}

TEST(MasseyValue, AntisymmetryAndScaling) {
  std::mt19937_64 rng(11);
  int tested = 0;
  while (tested < 100) {
    GaussianRational s1 = random_gaussian(rng), s2 = random_gaussian(rng), t = random_gaussian(rng);
    if (s1.is_zero() || s2.is_zero() || t.is_zero() || s1 == s2) continue;
    ProjectivePoint p1(s1), p2(s2);
    EXPECT_EQ(p3::massey_value(p1, p2), -p3::massey_value(p2, p1));
    // z ↦ tz fixes 0 and ∞
    EXPECT_EQ(p3::massey_value(ProjectivePoint(t * s1), ProjectivePoint(t * s2)), p3::massey_value(p1, p2));
    ++tested;
  }
}
