#pragma once

// The ABC-Massey product ⟨E_L1+E_L2+E_R, E_P−E_Q, E_C−E_R⟩ on the blown-up ℙ³:
// its indeterminacy in H^{2,2}, the functional x ↦ ∫_{A1−A2} x that kills it,
// and the value (1/π)·log|χ(0, ∞, S1, S2)| on the representative
// (1/π)(log|S1|·F1 + log|S2|·F2).

#include "abcml/blowup.hpp"
#include "abcml/cohomology.hpp"
#include "abcml/log_value.hpp"
#include "abcml/massey.hpp"
#include "abcml/projective.hpp"

#include <string>
#include <utility>
#include <vector>

namespace abcml::p3 {

inline const char* const kAlpha = "E_L1+E_L2+E_R";
inline const char* const kBeta = "E_P-E_Q";
inline const char* const kGamma = "E_C-E_R";

/// The ring built once from paper_config().
inline const IntersectionRing& ring_X() {
  static const IntersectionRing x = build_paper_X();
  return x;
}

inline void require_X(const IntersectionRing& x) {
  if (x.dimension() != 3) throw std::invalid_argument("expected the blown-up P^3 (complex dimension 3)");
  for (const char* n : {"G", "E_P", "E_Q", "E_R", "E_C", "E_L1", "E_L2", "A1", "A2", "F1", "F2"})
    if (!x.has_class(n)) throw std::invalid_argument(std::string("expected the blown-up P^3: no class '") + n + "'");
}

/// Coordinates of a class in the basis of H^{2,2}.
inline RVec coords22(const IntersectionRing& x, const RVec& v) {
  RVec out;
  for (auto i : x.indices_of(2)) out.push_back(v[i]);
  return out;
}
inline RVec from_coords22(const IntersectionRing& x, const RVec& c) {
  RVec v = x.zero();
  auto idx = x.indices_of(2);
  for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = c.at(k);
  return v;
}

/// Degree-(2,2) part of the submodule generated by α and γ: α·H^{1,1} + H^{1,1}·γ.
inline Subspace<Rational> indeterminacy_22(const IntersectionRing& x) {
  require_X(x);
  RVec a = x.parse(kAlpha), g = x.parse(kGamma);
  std::vector<RVec> vs;
  for (auto h : x.indices_of(1)) {
    vs.push_back(coords22(x, x.multiply(a, x.unit_vector(h))));
    vs.push_back(coords22(x, x.multiply(x.unit_vector(h), g)));
  }
  return Subspace<Rational>::span(x.indices_of(2).size(), vs);
}

/// The five classes listed as spanning I^{2,2}.
inline std::vector<std::string> listed_generators() {
  return {"GE_C", "E_R^2", "E_P^2+E_Q^2", "GE_L1+GE_L2", "G^2"};
}

inline Subspace<Rational> listed_indeterminacy(const IntersectionRing& x) {
  std::vector<RVec> vs;
  for (const auto& e : listed_generators()) vs.push_back(coords22(x, x.parse(e)));
  return Subspace<Rational>::span(x.indices_of(2).size(), vs);
}

/// The same subspace through the cbba engine: [α]H_A + H_A[γ] in bidegree
/// (2,2) of the ring viewed as a model with zero differentials.
inline Subspace<Rational> indeterminacy_22_via_model(const IntersectionRing& x) {
  require_X(x);
  auto vm = ValidatedModel::validate(x.to_model());
  Element a = parse_element(vm, kAlpha), g = parse_element(vm, kGamma);
  auto ind = abc_indeterminacy(vm, a, g, Bidegree{2, 2});
  std::vector<RVec> vs;
  for (const auto& b : ind.subspace.basis()) {
    Vector v = ind.target.include(b);
    RVec r = x.zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_real()) throw std::logic_error("non-real indeterminacy vector");
      r[i] = v[i].re();
    }
    vs.push_back(coords22(x, r));
  }
  return Subspace<Rational>::span(x.indices_of(2).size(), vs);
}

/// x ↦ ∫ (A1 − A2)·x.
inline Rational pairing_functional(const IntersectionRing& x, const RVec& cls) {
  require_X(x);
  RVec d = x.registered("A1") - x.registered("A2");
  return x.integrate(x.multiply(d, cls));
}

/// Σ w_k·c_k with LogValue weights and classes in H^{2,2}.
struct WeightedClass {
  std::vector<std::pair<LogValue, RVec>> terms;
};

inline LogValue pairing_functional(const IntersectionRing& x, const WeightedClass& w) {
  LogValue out;
  for (const auto& [weight, cls] : w.terms) out += pairing_functional(x, cls) * weight;
  return out;
}

inline void require_points(const ProjectivePoint& s1, const ProjectivePoint& s2) {
  const ProjectivePoint zero(GaussianRational(0));
  for (const auto* s : {&s1, &s2})
    if (s->is_infinity() || *s == zero) throw std::invalid_argument("S1, S2 must differ from P = 0 and Q = inf");
  if (s1 == s2) throw std::invalid_argument("S1 and S2 must be distinct");
}

/// (1/π)(log|S1|·F1 + log|S2|·F2).
inline WeightedClass massey_representative(const IntersectionRing& x, const ProjectivePoint& s1,
                                           const ProjectivePoint& s2) {
  require_X(x);
  require_points(s1, s2);
  return {{{log_abs(s1.value()), x.registered("F1")}, {log_abs(s2.value()), x.registered("F2")}}};
}

inline LogValue massey_value_via_ring(const IntersectionRing& x, const ProjectivePoint& s1,
                                      const ProjectivePoint& s2) {
  return pairing_functional(x, massey_representative(x, s1, s2));
}

/// (1/π)·log|χ(0, ∞, S1, S2)|.
inline LogValue massey_value_via_cross_ratio(const ProjectivePoint& s1, const ProjectivePoint& s2) {
  require_points(s1, s2);
  return log_abs(cross_ratio(ProjectivePoint(GaussianRational(0)), ProjectivePoint::infinity(), s1, s2));
}

/// Both computations; they must agree exactly.
inline LogValue massey_value(const IntersectionRing& x, const ProjectivePoint& s1, const ProjectivePoint& s2) {
  LogValue ring = massey_value_via_ring(x, s1, s2);
  LogValue chi = massey_value_via_cross_ratio(s1, s2);
  if (!(ring == chi))
    throw std::logic_error("ring pairing " + ring.symbolic() + " disagrees with cross-ratio " + chi.symbolic());
  return ring;
}
inline LogValue massey_value(const ProjectivePoint& s1, const ProjectivePoint& s2) {
  return massey_value(ring_X(), s1, s2);
}

struct Configuration {
  ProjectivePoint s1;
  ProjectivePoint s2;
};

/// |(1/π)·log|χ||, unchanged by swapping E_P ↔ E_Q or E_L1 ↔ E_L2.
inline LogValue distinguishing_invariant(const ProjectivePoint& s1, const ProjectivePoint& s2) {
  return massey_value(s1, s2).abs_value();
}

/// True when the invariants differ, which rules out a biholomorphism. False
/// only means this invariant does not tell the two apart.
inline bool configurations_distinguished(const Configuration& a, const Configuration& b) {
  return !(distinguishing_invariant(a.s1, a.s2) == distinguishing_invariant(b.s1, b.s2));
}

inline Configuration configuration_from_json(const json& j) {
  try {
    return {parse_point(j.at("S1").get<std::string>()), parse_point(j.at("S2").get<std::string>())};
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed configuration: ") + e.what());
  }
}

/// The expected H^{1,1} × H^{1,1} → H^{2,2} table, row and column order
/// G, E_P, E_Q, E_R, E_C, E_L1, E_L2.
inline std::vector<std::string> table_labels() { return {"G", "E_P", "E_Q", "E_R", "E_C", "E_L1", "E_L2"}; }

inline std::vector<std::vector<std::string>> expected_table() {
  return {
      {"G^2", "0", "0", "0", "GE_C", "GE_L1", "GE_L2"},
      {"0", "E_P^2", "0", "0", "GE_C", "0", "0"},
      {"0", "0", "E_Q^2", "0", "GE_C", "0", "0"},
      {"0", "0", "0", "E_R^2", "0", "GE_L1", "GE_L2"},
      {"GE_C", "GE_C", "GE_C", "0", "-2GE_C-G^2-E_P^2-E_Q^2", "GE_L1", "GE_L2"},
      {"GE_L1", "0", "0", "GE_L1", "GE_L1", "-GE_L1-G^2-E_R^2+GE_C", "0"},
      {"GE_L2", "0", "0", "GE_L2", "GE_L2", "0", "-GE_L2-G^2-E_R^2+GE_C"},
  };
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Mismatching entries of the computed table against expected_table().
inline std::vector<std::string> table_mismatches(const IntersectionRing& x) {
  std::vector<std::string> bad;
  auto labels = table_labels();
  auto expected = expected_table();
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      RVec got = x.product(x.index_of(labels[i]), x.index_of(labels[j]));
      RVec want = expected[i][j] == "0" ? x.zero() : x.parse(expected[i][j]);
      if (got != want) bad.push_back(labels[i] + "*" + labels[j] + " = " + x.format(got) + ", expected " + expected[i][j]);
    }
  return bad;
}

inline std::vector<Check> verify(const IntersectionRing& x) {
  std::vector<Check> out;
  auto add = [&](std::string name, bool ok, std::string detail) { out.push_back({std::move(name), ok, std::move(detail)}); };

  auto bad = table_mismatches(x);
  add("multiplication table (49 entries)", bad.empty(), bad.empty() ? "all entries match" : bad.front());

  std::vector<std::string> names;
  for (auto i : x.indices_of(2)) names.push_back(x.basis()[i].name);
  std::vector<std::string> want22{"G^2", "E_P^2", "E_Q^2", "E_R^2", "GE_C", "GE_L1", "GE_L2"};
  std::string joined;
  for (const auto& n : names) joined += (joined.empty() ? "" : ", ") + n;
  add("H^{2,2} basis", names == want22, joined);

  const auto& c = x.center("C");
  bool adj = c.normal_degree == -2 && c.cls == x.parse("G^2+E_P^2+E_Q^2");
  add("adjunction for C", adj, "deg N_C = " + to_string(c.normal_degree) + ", [C] = " + x.format(c.cls));

  RVec a = x.parse(kAlpha), b = x.parse(kBeta), g = x.parse(kGamma);
  bool defined = is_zero_vec(x.multiply(a, b)) && is_zero_vec(x.multiply(b, g));
  add("Massey product defined", defined, "alpha*beta = " + x.format(x.multiply(a, b)) + ", beta*gamma = " +
                                             x.format(x.multiply(b, g)));

  auto ind = indeterminacy_22(x);
  bool ind_ok = ind.dim() == 5 && ind == listed_indeterminacy(x) && ind == indeterminacy_22_via_model(x);
  add("indeterminacy I^{2,2}", ind_ok, "dim " + std::to_string(ind.dim()));

  bool kills = true;
  for (const auto& v : ind.basis()) kills = kills && is_zero(pairing_functional(x, from_coords22(x, v)));
  add("integral over A1-A2 vanishes on I^{2,2}", kills, kills ? "all 5 basis vectors map to 0" : "nonzero value");

  Rational f1 = pairing_functional(x, x.registered("F1")), f2 = pairing_functional(x, x.registered("F2"));
  add("pairing with F1, F2", f1 == 1 && f2 == -1, "F1 -> " + to_string(f1) + ", F2 -> " + to_string(f2));

  ProjectivePoint s1(GaussianRational(2)), s2(GaussianRational(1));
  LogValue ring = massey_value_via_ring(x, s1, s2), chi = massey_value_via_cross_ratio(s1, s2);
  bool value_ok = ring == chi && ring == LogValue::log_prime(2, 1) && !ring.is_zero();
  add("Massey value for S1=2, S2=1", value_ok, ring.symbolic() + " (cross-ratio path: " + chi.symbolic() + ")");

  Configuration c21{s1, s2}, c31{ProjectivePoint(GaussianRational(3)), s2}, c12{s2, s1};
  bool dist = configurations_distinguished(c21, c31) && !configurations_distinguished(c21, c12);
  add("non-biholomorphism invariant", dist, "(2,1) vs (3,1) distinguished, (2,1) vs (1,2) not");
  return out;
}

}  // namespace abcml::p3
