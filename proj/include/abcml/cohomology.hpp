#pragma once

// Bott-Chern, Aeppli, de Rham and Dolbeault cohomology of validated cbba
// models, and the natural comparison maps between them.

#include "abcml/cbba.hpp"
#include "abcml/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace abcml {

enum class Theory { BottChern, Aeppli, DeRham, Dolbeault };

inline std::string to_string(Theory t) {
  switch (t) {
    case Theory::BottChern: return "bc";
    case Theory::Aeppli: return "a";
    case Theory::DeRham: return "dr";
    case Theory::Dolbeault: return "dol";
  }
  return "?";
}

inline Theory parse_theory(const std::string& s) {
  if (s == "bc") return Theory::BottChern;
  if (s == "a") return Theory::Aeppli;
  if (s == "dr") return Theory::DeRham;
  if (s == "dol") return Theory::Dolbeault;
  throw ParseError("unknown cohomology theory '" + s + "' (expected bc|a|dr|dol)");
}

class NotACocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One cohomology group: cocycles modulo coboundaries inside one (bi)degree,
/// with a chosen basis of representatives.
class CohomologyGroup {
 public:
  CohomologyGroup(Theory theory, std::optional<Bidegree> bidegree, int total, Subspace<Scalar> cocycles,
                  Subspace<Scalar> coboundaries)
      : theory_(theory),
        bidegree_(bidegree),
        total_(total),
        cocycles_(std::move(cocycles)),
        coboundaries_(std::move(coboundaries)) {
    representatives_ = quotient_basis(cocycles_, coboundaries_);
    columns_ = representatives_;
    columns_.insert(columns_.end(), coboundaries_.basis().begin(), coboundaries_.basis().end());
  }

  Theory theory() const { return theory_; }
  const std::optional<Bidegree>& bidegree() const { return bidegree_; }
  int total_degree() const { return total_; }
  std::size_t ambient_dim() const { return cocycles_.ambient_dim(); }
  std::size_t dim() const { return representatives_.size(); }

  const Subspace<Scalar>& cocycles() const { return cocycles_; }
  const Subspace<Scalar>& coboundaries() const { return coboundaries_; }
  const std::vector<Vector>& representatives() const { return representatives_; }

  bool is_cocycle(const Vector& v) const { return cocycles_.contains(v); }
  bool is_coboundary(const Vector& v) const { return coboundaries_.contains(v); }

  /// Class coordinates of a cocycle in the representative basis.
  Vector project(const Vector& v) const {
    if (!is_cocycle(v)) throw NotACocycle("vector is not a " + to_string(theory_) + " cocycle in this degree");
    auto c = coordinates(ambient_dim(), columns_, v);
    if (!c) throw std::logic_error("cocycle outside representative span");
    return Vector(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(dim()));
  }
  Vector include(const Vector& coords) const {
    if (coords.size() != dim()) throw std::invalid_argument("class coordinates have wrong length");
    Vector v = zero_vec<Scalar>(ambient_dim());
    for (std::size_t i = 0; i < dim(); ++i) axpy(v, coords[i], representatives_[i]);
    return v;
  }

 private:
  Theory theory_;
  std::optional<Bidegree> bidegree_;
  int total_;
  Subspace<Scalar> cocycles_;
  Subspace<Scalar> coboundaries_;
  std::vector<Vector> representatives_;
  std::vector<Vector> columns_;
};

namespace detail {

inline ScalarMatrix restrict_columns(const ScalarMatrix& m, const std::vector<std::size_t>& idx) {
  ScalarMatrix out(m.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, idx[j]);
  return out;
}

inline ScalarMatrix stack(const std::vector<ScalarMatrix>& ms) {
  std::size_t rows = 0, cols = ms.front().cols();
  for (const auto& m : ms) rows += m.rows();
  ScalarMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(r0 + i, j) = m(i, j);
    r0 += m.rows();
  }
  return out;
}

/// ∩ ker(ops) on the span of basis vectors idx, as an ambient subspace.
inline Subspace<Scalar> joint_kernel(std::size_t n, const std::vector<ScalarMatrix>& ops,
                                     const std::vector<std::size_t>& idx) {
  if (idx.empty()) return Subspace<Scalar>(n);
  std::vector<ScalarMatrix> blocks;
  for (const auto& op : ops) blocks.push_back(restrict_columns(op, idx));
  auto ker = kernel_basis(stack(blocks));
  std::vector<Vector> vs;
  for (const auto& k : ker.basis()) {
    Vector v = zero_vec<Scalar>(n);
    for (std::size_t j = 0; j < idx.size(); ++j) v[idx[j]] = k[j];
    vs.push_back(std::move(v));
  }
  return Subspace<Scalar>::span(n, vs);
}

/// Σ im(op|span idx) over the given (operator, indices) pairs.
inline Subspace<Scalar> joint_image(std::size_t n,
                                    const std::vector<std::pair<const ScalarMatrix*, std::vector<std::size_t>>>& parts) {
  std::vector<Vector> vs;
  for (const auto& [op, idx] : parts)
    for (auto j : idx) vs.push_back(op->column(j));
  return Subspace<Scalar>::span(n, vs);
}

}  // namespace detail

inline ScalarMatrix ddbar_matrix(const CbbaModel& m) { return m.del() * m.delbar(); }

/// d^c = ½(∂̄ − ∂).
inline ScalarMatrix dc_matrix(const CbbaModel& m) {
  return (m.delbar() - m.del()).scaled(Scalar(Rational(1, 2)));
}

/// Cohomology in a bidegree (BC, A, Dol). For de Rham use the total-degree overload.
inline CohomologyGroup cohomology(const ValidatedModel& vm, Theory theory, Bidegree d) {
  const CbbaModel& m = vm.model();
  const std::size_t n = m.dim();
  if (theory == Theory::DeRham) throw std::invalid_argument("de Rham cohomology is indexed by total degree");
  auto here = m.indices_of(d);
  ScalarMatrix ddb = ddbar_matrix(m);
  switch (theory) {
    case Theory::BottChern: {
      auto z = detail::joint_kernel(n, {m.del(), m.delbar()}, here);
      auto b = detail::joint_image(n, {{&ddb, m.indices_of(d - Bidegree{1, 1})}});
      return CohomologyGroup(theory, d, d.total(), std::move(z), std::move(b));
    }
    case Theory::Aeppli: {
      auto z = detail::joint_kernel(n, {ddb}, here);
      auto b = detail::joint_image(n, {{&m.del(), m.indices_of(d - kDelShift)},
                                       {&m.delbar(), m.indices_of(d - kDelbarShift)}});
      return CohomologyGroup(theory, d, d.total(), std::move(z), std::move(b));
    }
    case Theory::Dolbeault: {
      auto z = detail::joint_kernel(n, {m.delbar()}, here);
      auto b = detail::joint_image(n, {{&m.delbar(), m.indices_of(d - kDelbarShift)}});
      return CohomologyGroup(theory, d, d.total(), std::move(z), std::move(b));
    }
    case Theory::DeRham: break;
  }
  throw std::logic_error("unreachable");
}

inline CohomologyGroup de_rham(const ValidatedModel& vm, int k) {
  const CbbaModel& m = vm.model();
  ScalarMatrix d = m.d();
  auto z = detail::joint_kernel(m.dim(), {d}, m.indices_of_total(k));
  auto b = detail::joint_image(m.dim(), {{&d, m.indices_of_total(k - 1)}});
  return CohomologyGroup(Theory::DeRham, std::nullopt, k, std::move(z), std::move(b));
}

/// Total-degree cohomology: for bigraded theories the direct sum over p+q = k.
class GradedCohomology {
 public:
  GradedCohomology(const ValidatedModel& vm, Theory theory, int k) : theory_(theory), total_(k) {
    if (theory == Theory::DeRham) {
      pieces_.push_back(de_rham(vm, k));
    } else {
      for (int p = 0; p <= k; ++p) pieces_.push_back(cohomology(vm, theory, Bidegree{p, k - p}));
    }
    model_ = vm.shared();
  }

  Theory theory() const { return theory_; }
  int total_degree() const { return total_; }
  const std::vector<CohomologyGroup>& pieces() const { return pieces_; }
  std::size_t dim() const {
    std::size_t s = 0;
    for (const auto& g : pieces_) s += g.dim();
    return s;
  }

  /// Splits v into bidegree components (bigraded theories) and projects each.
  Vector project(const Vector& v) const {
    Vector out;
    for (const auto& g : pieces_) {
      Vector part = v;
      if (g.bidegree()) {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (model_->degree(i) != *g.bidegree()) part[i] = Scalar(0);
      } else {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (model_->degree(i).total() != total_) part[i] = Scalar(0);
      }
      auto c = g.project(part);
      out.insert(out.end(), c.begin(), c.end());
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero() && model_->degree(i).total() != total_)
        throw NotACocycle("vector has components outside total degree " + std::to_string(total_));
    return out;
  }
  Vector include(const Vector& coords) const {
    if (coords.size() != dim()) throw std::invalid_argument("class coordinates have wrong length");
    Vector v = model_->zero();
    std::size_t off = 0;
    for (const auto& g : pieces_) {
      Vector c(coords.begin() + static_cast<std::ptrdiff_t>(off),
               coords.begin() + static_cast<std::ptrdiff_t>(off + g.dim()));
      v = v + g.include(c);
      off += g.dim();
    }
    return v;
  }
  std::vector<Vector> representatives() const {
    std::vector<Vector> out;
    for (const auto& g : pieces_) out.insert(out.end(), g.representatives().begin(), g.representatives().end());
    return out;
  }
  std::vector<Vector> coboundary_basis() const {
    std::vector<Vector> out;
    for (const auto& g : pieces_)
      out.insert(out.end(), g.coboundaries().basis().begin(), g.coboundaries().basis().end());
    return out;
  }
  bool is_coboundary(const Vector& v) const { return is_zero_vec(project(v)); }

 private:
  Theory theory_;
  int total_;
  std::vector<CohomologyGroup> pieces_;
  std::shared_ptr<const CbbaModel> model_;
};

enum class Comparison { BcToDr, DrToA, DcAToBc };

inline Comparison parse_comparison(const std::string& s) {
  if (s == "bc_to_dr") return Comparison::BcToDr;
  if (s == "dr_to_a") return Comparison::DrToA;
  if (s == "dc_a_to_bc") return Comparison::DcAToBc;
  throw ParseError("unknown comparison map '" + s + "'");
}

/// Linear map between total-degree cohomologies, in representative coordinates.
struct ComparisonMap {
  GradedCohomology source;
  GradedCohomology target;
  ScalarMatrix matrix;   // target.dim() × source.dim()
  bool well_defined;     // every source coboundary maps to a target coboundary

  bool is_isomorphism() const {
    return source.dim() == target.dim() && rank(matrix) == source.dim();
  }
  /// Source class coordinates spanning the kernel.
  Subspace<Scalar> kernel() const { return kernel_basis(matrix); }
};

/// bc_to_dr and dr_to_a are induced by the identity on cocycles; dc_a_to_bc
/// applies d^c = ½(∂̄ − ∂) and raises the total degree by one.
inline ComparisonMap comparison_map(const ValidatedModel& vm, Comparison which, int k) {
  const CbbaModel& m = vm.model();
  auto make = [&](Theory from, Theory to, int tk, const ScalarMatrix* op) {
    GradedCohomology src(vm, from, k), dst(vm, to, tk);
    auto apply = [&](const Vector& v) { return op ? (*op) * v : v; };
    ScalarMatrix mat(dst.dim(), src.dim());
    auto reps = src.representatives();
    for (std::size_t j = 0; j < reps.size(); ++j) {
      Vector c = dst.project(apply(reps[j]));
      for (std::size_t i = 0; i < c.size(); ++i) mat(i, j) = c[i];
    }
    bool ok = true;
    for (const auto& b : src.coboundary_basis()) ok = ok && dst.is_coboundary(apply(b));
    return ComparisonMap{std::move(src), std::move(dst), std::move(mat), ok};
  };
  switch (which) {
    case Comparison::BcToDr: return make(Theory::BottChern, Theory::DeRham, k, nullptr);
    case Comparison::DrToA: return make(Theory::DeRham, Theory::Aeppli, k, nullptr);
    case Comparison::DcAToBc: {
      ScalarMatrix dc = dc_matrix(m);
      return make(Theory::Aeppli, Theory::BottChern, k + 1, &dc);
    }
  }
  throw std::logic_error("unreachable");
}

/// True iff H_BC → H_dR → H_A are isomorphisms in every degree.
inline bool ddbar_lemma_holds(const ValidatedModel& vm) {
  for (int k = 0; k <= vm->top_total_degree(); ++k) {
    if (!comparison_map(vm, Comparison::BcToDr, k).is_isomorphism()) return false;
    if (!comparison_map(vm, Comparison::DrToA, k).is_isomorphism()) return false;
  }
  return true;
}

}  // namespace abcml
