#include "abcml/blowup.hpp"
#include "abcml/p3_example.hpp"

#include <gtest/gtest.h>

using namespace abcml;

namespace {

Rational triple(const IntersectionRing& r, const RVec& a, const RVec& b, const RVec& c) {
  return r.integrate(r.multiply(r.multiply(a, b), c));
}

std::vector<std::size_t> betti(const IntersectionRing& r) {
  std::vector<std::size_t> out;
  for (int k = 0; k <= r.dimension(); ++k) out.push_back(r.indices_of(k).size());
  return out;
}

CenterSpec line_center(std::string name, std::map<std::string, long> pairing) {
  CenterSpec c;
  c.kind = CenterSpec::Curve;
  c.name = name;
  c.curve.name = name;
  c.curve.pairing = std::move(pairing);
  return c;
}

}  // namespace

TEST(ProjectiveSpace, PoincareDualityAndTopPower) {
  for (int n : {2, 3, 4}) {
    auto r = projective_space(n);
    EXPECT_TRUE(r.poincare_duality()) << n;
    RVec g = r.registered("G"), p = r.unit_vector(r.unit());
    for (int k = 0; k < n; ++k) p = r.multiply(p, g);
    EXPECT_EQ(r.integrate(p), 1);
    EXPECT_TRUE(is_zero_vec(r.multiply(p, g)));
    EXPECT_EQ(r.c1()[1], n + 1);
  }
  EXPECT_THROW(projective_space(0), std::invalid_argument);
}

TEST(PointBlowup, IntersectionNumbers) {
  auto r = blow_up_point(projective_space(3), "P");
  RVec g = r.registered("G"), e = r.registered("E_P");
  EXPECT_EQ(triple(r, g, g, g), 1);
  EXPECT_EQ(triple(r, e, e, e), 1);
  EXPECT_TRUE(is_zero_vec(r.multiply(g, e)));
  EXPECT_TRUE(r.poincare_duality());
  EXPECT_EQ(betti(r), (std::vector<std::size_t>{1, 2, 2, 1}));
  // c1 = 4G − 2E
  RVec c1 = r.parse("4*G-2*E_P");
  EXPECT_EQ(r.c1(), c1);
}

TEST(PointBlowup, SurfaceSelfIntersection) {
  auto r = blow_up_point(projective_space(2), "P");
  RVec e = r.registered("E_P");
  EXPECT_EQ(r.integrate(r.multiply(e, e)), -1);
}

TEST(PointBlowup, StrictTransformsOfPlanes) {
  auto base = projective_space(3);
  base.register_class("H", base.parse("G"));
  auto r = blow_up_point(base, "P", {{"H", 1}});
  RVec h = r.registered("H");
  EXPECT_EQ(h, r.parse("G-E_P"));
  // three general planes through P meet only at P, which the blow-up separates
  EXPECT_EQ(triple(r, h, h, h), 0);
}

TEST(PointBlowup, OrderIndependenceForDisjointPoints) {
  auto pq = blow_up_point(blow_up_point(projective_space(3), "P"), "Q");
  auto qp = blow_up_point(blow_up_point(projective_space(3), "Q"), "P");
  std::vector<std::string> names{"G", "E_P", "E_Q"};
  for (const auto& a : names)
    for (const auto& b : names)
      for (const auto& c : names)
        EXPECT_EQ(integrate_triple(pq, a, b, c), integrate_triple(qp, a, b, c)) << a << b << c;
}

TEST(CurveBlowup, LineInProjectiveSpace) {
  BlowupConfig cfg;
  cfg.centers = {line_center("C", {{"G", 1}})};
  auto r = build(cfg);
  RVec g = r.registered("G"), e = r.registered("E_C");
  EXPECT_EQ(triple(r, g, g, g), 1);
  EXPECT_EQ(triple(r, g, g, e), 0);
  EXPECT_EQ(triple(r, g, e, e), -1);
  EXPECT_EQ(triple(r, e, e, e), -2);
  EXPECT_TRUE(r.poincare_duality());
  EXPECT_EQ(betti(r), (std::vector<std::size_t>{1, 2, 2, 1}));
  EXPECT_EQ(r.centers().back().normal_degree, 2);
}

TEST(CurveBlowup, PairingErrors) {
  BlowupConfig unknown;
  unknown.centers = {line_center("C", {{"G", 1}, {"H", 2}})};
  EXPECT_THROW(build(unknown), std::invalid_argument);
  BlowupConfig missing;
  missing.divisors = {{"A", "G"}};
  missing.centers = {line_center("C", {{"G", 1}})};
  EXPECT_THROW(build(missing), std::invalid_argument);
  BlowupConfig inconsistent;
  inconsistent.divisors = {{"A", "G"}};
  inconsistent.centers = {line_center("C", {{"G", 1}, {"A", 2}})};
  EXPECT_THROW(build(inconsistent), std::invalid_argument);
  BlowupConfig wrong_c1;
  wrong_c1.centers = {line_center("C", {{"G", 1}})};
  wrong_c1.centers[0].curve.ambient_c1_degree = 3;
  EXPECT_THROW(build(wrong_c1), std::invalid_argument);
}

TEST(CurveBlowup, CurveDisjointFromRegisteredDivisors) {
  // a line missing E_P: pairing 0 with the exceptional divisor
  BlowupConfig cfg;
  cfg.centers = {CenterSpec{CenterSpec::Point, "P", {}, {}}, line_center("C", {{"G", 1}, {"E_P", 0}})};
  auto r = build(cfg);
  RVec ep = r.registered("E_P"), ec = r.registered("E_C");
  EXPECT_TRUE(is_zero_vec(r.multiply(ep, ec)));
  EXPECT_EQ(betti(r), (std::vector<std::size_t>{1, 3, 3, 1}));
}

TEST(BlownUpP3, BettiAndDuality) {
  const auto& x = p3::ring_X();
  EXPECT_EQ(x.dimension(), 3);
  EXPECT_TRUE(x.poincare_duality());
  // one divisor per blow-up plus G
  EXPECT_EQ(x.indices_of(1).size(), 7u);
  EXPECT_EQ(x.indices_of(2).size(), 7u);
}

TEST(BlownUpP3, MultiplicationTableMatchesGolden) {
  const auto& x = p3::ring_X();
  EXPECT_TRUE(p3::table_mismatches(x).empty());
  auto t = multiplication_table(x);
  EXPECT_EQ(t.labels, p3::table_labels());
  auto g = p3::expected_table();
  for (std::size_t i = 0; i < t.labels.size(); ++i)
    for (std::size_t j = 0; j < t.labels.size(); ++j)
      EXPECT_EQ(t.entries[i][j], g[i][j] == "0" ? x.zero() : x.parse(g[i][j])) << t.labels[i] << "*" << t.labels[j];
}

TEST(BlownUpP3, TableIsSymmetric) {
  auto t = multiplication_table(p3::ring_X());
  for (std::size_t i = 0; i < t.labels.size(); ++i)
    for (std::size_t j = 0; j < t.labels.size(); ++j) EXPECT_EQ(t.entries[i][j], t.entries[j][i]);
}

TEST(BlownUpP3, TripleIntersections) {
  const auto& x = p3::ring_X();
  EXPECT_EQ(integrate_triple(x, "A1", "E_C", "E_L1"), 1);
  EXPECT_EQ(integrate_triple(x, "A2", "E_C", "E_L1"), 0);
  EXPECT_EQ(integrate_triple(x, "A1", "E_C", "E_L2"), 0);
  EXPECT_EQ(integrate_triple(x, "A2", "E_C", "E_L2"), 1);
  EXPECT_EQ(integrate_triple(x, "G", "G", "G"), 1);
  EXPECT_THROW(integrate_triple(x, "G", "G", "F1"), std::invalid_argument);
}

TEST(BlownUpP3, ConfigJsonRoundTrip) {
  auto cfg = paper_config();
  auto back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(config_to_json(back), config_to_json(cfg));
  auto r = build(back);
  EXPECT_TRUE(p3::table_mismatches(r).empty());
}

TEST(BlownUpP3, ConfigJsonErrors) {
  EXPECT_THROW(config_from_json(json::parse(R"({"centers": [{"plane": "P"}]})")), ParseError);
  EXPECT_THROW(config_from_json(json::parse(R"({"divisors": 3})")), ParseError);
  EXPECT_THROW(config_from_json(json::parse(R"({"centers": [{"curve": "C"}]})")), ParseError);
}
