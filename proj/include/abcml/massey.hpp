#pragma once

// Triple Massey products and Aeppli-Bott-Chern-Massey (ABC) products on
// validated cbba models. Defining systems are found by one exact linear
// solve; results are cosets modulo the indeterminacy [α]H + H[γ].

#include "abcml/cbba.hpp"
#include "abcml/cohomology.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace abcml {

enum class Flavor { Ordinary, ABC };

inline std::string to_string(Flavor f) { return f == Flavor::ABC ? "abc" : "ordinary"; }

/// Total degree of an element whose nonzero components share one total degree.
inline int total_degree(const Element& e) {
  if (e.degree()) return e.degree()->total();
  std::optional<int> t;
  for (std::size_t i = 0; i < e.coeffs().size(); ++i) {
    if (e.coeffs()[i].is_zero()) continue;
    int k = e.model().degree(i).total();
    if (t && *t != k) throw std::invalid_argument("element is not of pure total degree");
    t = k;
  }
  if (!t) throw std::invalid_argument("zero element without a declared degree");
  return *t;
}

/// A subspace of the target group, in its class coordinates.
struct IndeterminacySubspace {
  CohomologyGroup target;
  Subspace<Scalar> subspace;

  std::size_t dim() const { return subspace.dim(); }
  bool contains_class(const Vector& coords) const { return subspace.contains(coords); }
  /// Membership for a target cocycle given as an ambient vector.
  bool contains_cocycle(const Vector& v) const { return subspace.contains(target.project(v)); }
};

struct MasseyCoset {
  Flavor flavor;
  IndeterminacySubspace indeterminacy;
  Vector representative;   // class coordinates in indeterminacy.target
  Vector cocycle;          // ambient representative α y − x γ (or its ordinary analogue)
  Vector x;                // primitives of the defining system
  Vector y;

  const CohomologyGroup& target() const { return indeterminacy.target; }
  bool is_trivial() const { return indeterminacy.contains_class(representative); }
  bool contains_class(const Vector& coords) const {
    return indeterminacy.contains_class(coords - representative);
  }

  friend bool operator==(const MasseyCoset& a, const MasseyCoset& b) {
    if (a.flavor != b.flavor || a.target().theory() != b.target().theory()) return false;
    if (a.target().bidegree() != b.target().bidegree() || a.target().total_degree() != b.target().total_degree())
      return false;
    if (!(a.indeterminacy.subspace == b.indeterminacy.subspace)) return false;
    // both cosets use the same deterministic representative basis of the target
    return a.contains_class(b.representative);
  }
};

/// The product is not defined because [α][β] or [β][γ] is a nonzero class.
struct Undefined {
  bool left_nonzero = false;
  bool right_nonzero = false;

  std::string message() const {
    if (left_nonzero && right_nonzero) return "undefined: [alpha][beta] != 0 and [beta][gamma] != 0";
    if (left_nonzero) return "undefined: [alpha][beta] != 0";
    return "undefined: [beta][gamma] != 0";
  }
};

using MasseyResult = std::variant<MasseyCoset, Undefined>;

inline bool is_defined(const MasseyResult& r) { return std::holds_alternative<MasseyCoset>(r); }
inline const MasseyCoset& coset(const MasseyResult& r) {
  if (auto* c = std::get_if<MasseyCoset>(&r)) return *c;
  throw std::logic_error(std::get<Undefined>(r).message());
}

namespace detail {

inline void require_model(const ValidatedModel& vm, std::initializer_list<const Element*> es) {
  for (const Element* e : es)
    if (e->model_ptr() != vm.shared()) throw ModelMismatch();
}

inline void require_bc_closed(const Element& e, const char* name) {
  if (!e.degree()) throw std::invalid_argument(std::string(name) + " is not of pure bidegree");
  if (!del(e).is_zero() || !delbar(e).is_zero())
    throw NotACocycle(std::string(name) + " is not ∂- and ∂̄-closed");
}

inline void require_d_closed(const Element& e, const char* name) {
  total_degree(e);
  const CbbaModel& m = e.model();
  if (!is_zero_vec(m.d() * e.coeffs())) throw NotACocycle(std::string(name) + " is not d-closed");
}

/// Solves op·x = rhs with x supported on the given basis indices.
inline std::optional<Vector> solve_on(const ScalarMatrix& op, const std::vector<std::size_t>& idx,
                                      const Vector& rhs) {
  auto small = solve(restrict_columns(op, idx), rhs);
  if (!small) return std::nullopt;
  Vector x = zero_vec<Scalar>(op.cols());
  for (std::size_t j = 0; j < idx.size(); ++j) x[idx[j]] = (*small)[j];
  return x;
}

inline ScalarMatrix i_ddbar(const CbbaModel& m) { return ddbar_matrix(m).scaled(Scalar::i()); }

inline Subspace<Scalar> span_of_classes(const CohomologyGroup& target, const std::vector<Vector>& cocycles) {
  std::vector<Vector> coords;
  for (const auto& v : cocycles) coords.push_back(target.project(v));
  return Subspace<Scalar>::span(target.dim(), coords);
}

}  // namespace detail

/// [α]H_A + H_A[γ] inside H_A at the target bidegree.
inline IndeterminacySubspace abc_indeterminacy(const ValidatedModel& vm, const Element& alpha, const Element& gamma,
                                               Bidegree target) {
  detail::require_model(vm, {&alpha, &gamma});
  detail::require_bc_closed(alpha, "alpha");
  detail::require_bc_closed(gamma, "gamma");
  const CbbaModel& m = vm.model();
  CohomologyGroup tgt = cohomology(vm, Theory::Aeppli, target);
  std::vector<Vector> vs;
  CohomologyGroup left = cohomology(vm, Theory::Aeppli, target - *alpha.degree());
  CohomologyGroup right = cohomology(vm, Theory::Aeppli, target - *gamma.degree());
  for (const auto& h : left.representatives()) vs.push_back(m.multiply(alpha.coeffs(), h));
  for (const auto& h : right.representatives()) vs.push_back(m.multiply(h, gamma.coeffs()));
  auto sub = detail::span_of_classes(tgt, vs);
  return {std::move(tgt), std::move(sub)};
}

/// [α]H_dR + H_dR[γ] inside H_dR at the target total degree.
inline IndeterminacySubspace ordinary_indeterminacy(const ValidatedModel& vm, const Element& alpha,
                                                    const Element& gamma, int target) {
  detail::require_model(vm, {&alpha, &gamma});
  detail::require_d_closed(alpha, "alpha");
  detail::require_d_closed(gamma, "gamma");
  const CbbaModel& m = vm.model();
  CohomologyGroup tgt = de_rham(vm, target);
  std::vector<Vector> vs;
  CohomologyGroup left = de_rham(vm, target - total_degree(alpha));
  CohomologyGroup right = de_rham(vm, target - total_degree(gamma));
  for (const auto& h : left.representatives()) vs.push_back(m.multiply(alpha.coeffs(), h));
  for (const auto& h : right.representatives()) vs.push_back(m.multiply(h, gamma.coeffs()));
  auto sub = detail::span_of_classes(tgt, vs);
  return {std::move(tgt), std::move(sub)};
}

/// ABC coset from an explicit defining system αβ = i∂∂̄x, βγ = i∂∂̄y.
inline MasseyCoset abc_massey_with_primitives(const ValidatedModel& vm, const Element& alpha, const Element& beta,
                                              const Element& gamma, const Vector& x, const Vector& y) {
  detail::require_model(vm, {&alpha, &beta, &gamma});
  for (auto [e, n] : {std::pair{&alpha, "alpha"}, {&beta, "beta"}, {&gamma, "gamma"}}) detail::require_bc_closed(*e, n);
  const CbbaModel& m = vm.model();
  ScalarMatrix iddb = detail::i_ddbar(m);
  if (iddb * x != m.multiply(alpha.coeffs(), beta.coeffs()))
    throw std::invalid_argument("x is not an i∂∂̄-primitive of alpha*beta");
  if (iddb * y != m.multiply(beta.coeffs(), gamma.coeffs()))
    throw std::invalid_argument("y is not an i∂∂̄-primitive of beta*gamma");
  Bidegree target = *alpha.degree() + *beta.degree() + *gamma.degree() - Bidegree{1, 1};
  Vector w = m.multiply(alpha.coeffs(), y) - m.multiply(x, gamma.coeffs());
  auto indet = abc_indeterminacy(vm, alpha, gamma, target);
  Vector rep = indet.target.project(w);
  return MasseyCoset{Flavor::ABC, std::move(indet), std::move(rep), std::move(w), x, y};
}

/// ⟨α,β,γ⟩_ABC = [αy − xγ] ∈ H_A / ([α]H_A + H_A[γ]), where αβ = i∂∂̄x, βγ = i∂∂̄y.
inline MasseyResult triple_abc_massey(const ValidatedModel& vm, const Element& alpha, const Element& beta,
                                      const Element& gamma) {
  detail::require_model(vm, {&alpha, &beta, &gamma});
  for (auto [e, n] : {std::pair{&alpha, "alpha"}, {&beta, "beta"}, {&gamma, "gamma"}}) detail::require_bc_closed(*e, n);
  const CbbaModel& m = vm.model();
  const Bidegree dab = *alpha.degree() + *beta.degree(), dbg = *beta.degree() + *gamma.degree();
  Vector ab = m.multiply(alpha.coeffs(), beta.coeffs());
  Vector bg = m.multiply(beta.coeffs(), gamma.coeffs());
  Undefined u{!cohomology(vm, Theory::BottChern, dab).is_coboundary(ab),
              !cohomology(vm, Theory::BottChern, dbg).is_coboundary(bg)};
  if (u.left_nonzero || u.right_nonzero) return u;
  ScalarMatrix iddb = detail::i_ddbar(m);
  auto x = detail::solve_on(iddb, m.indices_of(dab - Bidegree{1, 1}), ab);
  auto y = detail::solve_on(iddb, m.indices_of(dbg - Bidegree{1, 1}), bg);
  if (!x || !y) throw std::logic_error("exact Bott-Chern class without i∂∂̄-primitive");
  return abc_massey_with_primitives(vm, alpha, beta, gamma, *x, *y);
}

/// Ordinary coset from an explicit defining system αβ = dx, βγ = dy.
inline MasseyCoset massey_with_primitives(const ValidatedModel& vm, const Element& alpha, const Element& beta,
                                          const Element& gamma, const Vector& x, const Vector& y) {
  detail::require_model(vm, {&alpha, &beta, &gamma});
  for (auto [e, n] : {std::pair{&alpha, "alpha"}, {&beta, "beta"}, {&gamma, "gamma"}}) detail::require_d_closed(*e, n);
  const CbbaModel& m = vm.model();
  ScalarMatrix d = m.d();
  if (d * x != m.multiply(alpha.coeffs(), beta.coeffs())) throw std::invalid_argument("x is not a d-primitive of alpha*beta");
  if (d * y != m.multiply(beta.coeffs(), gamma.coeffs())) throw std::invalid_argument("y is not a d-primitive of beta*gamma");
  const int ka = total_degree(alpha);
  const int target = ka + total_degree(beta) + total_degree(gamma) - 1;
  Vector w = scaled(Scalar(ka % 2 == 0 ? 1 : -1), m.multiply(alpha.coeffs(), y)) - m.multiply(x, gamma.coeffs());
  auto indet = ordinary_indeterminacy(vm, alpha, gamma, target);
  Vector rep = indet.target.project(w);
  return MasseyCoset{Flavor::Ordinary, std::move(indet), std::move(rep), std::move(w), x, y};
}

/// ⟨α,β,γ⟩ = [(−1)^{|α|} α y − x γ] ∈ H_dR / ([α]H_dR + H_dR[γ]), where αβ = dx, βγ = dy.
inline MasseyResult triple_massey(const ValidatedModel& vm, const Element& alpha, const Element& beta,
                                  const Element& gamma) {
  detail::require_model(vm, {&alpha, &beta, &gamma});
  for (auto [e, n] : {std::pair{&alpha, "alpha"}, {&beta, "beta"}, {&gamma, "gamma"}}) detail::require_d_closed(*e, n);
  const CbbaModel& m = vm.model();
  const int kab = total_degree(alpha) + total_degree(beta), kbg = total_degree(beta) + total_degree(gamma);
  Vector ab = m.multiply(alpha.coeffs(), beta.coeffs());
  Vector bg = m.multiply(beta.coeffs(), gamma.coeffs());
  Undefined u{!de_rham(vm, kab).is_coboundary(ab), !de_rham(vm, kbg).is_coboundary(bg)};
  if (u.left_nonzero || u.right_nonzero) return u;
  ScalarMatrix d = m.d();
  auto x = detail::solve_on(d, m.indices_of_total(kab - 1), ab);
  auto y = detail::solve_on(d, m.indices_of_total(kbg - 1), bg);
  if (!x || !y) throw std::logic_error("exact de Rham class without d-primitive");
  return massey_with_primitives(vm, alpha, beta, gamma, *x, *y);
}

/// Real d^c = (i/2)(∂̄ − ∂); it satisfies d·d^c = i∂∂̄.
inline ScalarMatrix real_dc_matrix(const CbbaModel& m) { return dc_matrix(m).scaled(Scalar::i()); }

struct DcRelation {
  bool holds = false;
  std::vector<int> signs;  // every ε ∈ {+1, −1} with d^c⟨α,β,γ⟩_ABC ∈ ε⟨α,β,γ⟩
  bool vacuous = false;    // both cosets trivial
};

/// Checks d^c⟨α,β,γ⟩_ABC = ±⟨α,β,γ⟩ in H_dR modulo the ordinary indeterminacy.
inline DcRelation dc_relation_check(const ValidatedModel& vm, const Element& alpha, const Element& beta,
                                    const Element& gamma) {
  auto abc = triple_abc_massey(vm, alpha, beta, gamma);
  auto ord = triple_massey(vm, alpha, beta, gamma);
  if (!is_defined(abc)) throw std::invalid_argument("ABC-Massey product " + std::get<Undefined>(abc).message());
  if (!is_defined(ord)) throw std::invalid_argument("Massey product " + std::get<Undefined>(ord).message());
  const auto& a = coset(abc);
  const auto& o = coset(ord);
  Vector image = real_dc_matrix(vm.model()) * a.cocycle;
  Vector cls = o.target().project(image);
  DcRelation r;
  for (int eps : {1, -1})
    if (o.indeterminacy.contains_class(cls - scaled(Scalar(eps), o.representative))) r.signs.push_back(eps);
  r.holds = !r.signs.empty();
  r.vacuous = a.is_trivial() && o.is_trivial();
  return r;
}

/// A conjugation-invariant cocycle in the coset, when one exists.
inline std::optional<Vector> real_representative(const ValidatedModel& vm, const MasseyCoset& c) {
  const CbbaModel& m = vm.model();
  if (!m.has_conjugation()) throw std::invalid_argument("model has no conjugation");
  const auto& tgt = c.target();
  if (tgt.bidegree() && tgt.bidegree()->p != tgt.bidegree()->q) return std::nullopt;
  Vector conj = m.conjugate(c.cocycle);
  if (!c.contains_class(tgt.project(conj))) return std::nullopt;
  return scaled(Scalar(Rational(1, 2)), c.cocycle + conj);
}

}  // namespace abcml
