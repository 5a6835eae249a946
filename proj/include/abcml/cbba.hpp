#pragma once

// Finite-dimensional commutative bigraded bidifferential algebras (cbba):
// a bigraded basis, structure constants, and the two differentials ∂, ∂̄.

#include "abcml/linalg.hpp"
#include "abcml/scalar.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abcml {

using Scalar = GaussianRational;
using Vector = Vec<Scalar>;
using ScalarMatrix = Matrix<Scalar>;

struct Bidegree {
  int p = 0;
  int q = 0;

  int total() const { return p + q; }
  Bidegree operator+(Bidegree o) const { return {p + o.p, q + o.q}; }
  Bidegree operator-(Bidegree o) const { return {p - o.p, q - o.q}; }
  Bidegree swapped() const { return {q, p}; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

inline std::string to_string(Bidegree d) {
  return "(" + std::to_string(d.p) + "," + std::to_string(d.q) + ")";
}

inline constexpr Bidegree kDelShift{1, 0};
inline constexpr Bidegree kDelbarShift{0, 1};

inline int koszul_sign(int deg_a, int deg_b) { return (deg_a * deg_b) % 2 == 0 ? 1 : -1; }

struct BasisElement {
  std::string id;
  Bidegree degree;
};

/// Sparse vector entry list used for structure constants.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

inline SparseVector to_sparse(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

class CbbaModel {
 public:
  CbbaModel(std::vector<BasisElement> basis, std::string unit_id)
      : basis_(std::move(basis)),
        products_(basis_.size() * basis_.size()),
        del_(basis_.size(), basis_.size()),
        delbar_(basis_.size(), basis_.size()) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].degree.p < 0 || basis_[i].degree.q < 0)
        throw std::invalid_argument("negative bidegree for basis element '" + basis_[i].id + "'");
      if (!index_.emplace(basis_[i].id, i).second)
        throw std::invalid_argument("duplicate basis id '" + basis_[i].id + "'");
    }
    unit_ = index_of(unit_id);
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& basis(std::size_t i) const { return basis_.at(i); }
  Bidegree degree(std::size_t i) const { return basis_.at(i).degree; }
  std::size_t unit() const { return unit_; }

  std::optional<std::size_t> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw std::out_of_range("unknown basis id '" + id + "'");
    return *i;
  }

  std::vector<std::size_t> indices_of(Bidegree d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree == d) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> indices_of_total(int k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree.total() == k) out.push_back(i);
    return out;
  }
  /// Bidegrees (p,q) that occur in the basis, sorted.
  std::vector<Bidegree> bidegrees() const {
    std::vector<Bidegree> out;
    for (const auto& b : basis_) out.push_back(b.degree);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  int top_total_degree() const {
    int t = 0;
    for (const auto& b : basis_) t = std::max(t, b.degree.total());
    return t;
  }

  // --- structure constants -------------------------------------------------

  void set_product(std::size_t i, std::size_t j, const Vector& v) { products_.at(i * dim() + j) = to_sparse(v); }
  void set_product(std::size_t i, std::size_t j, SparseVector v) { products_.at(i * dim() + j) = std::move(v); }
  const SparseVector& product(std::size_t i, std::size_t j) const { return products_.at(i * dim() + j); }

  /// Column j of ∂ is ∂(e_j).
  void set_del(std::size_t j, const Vector& v) { set_column(del_, j, v); }
  void set_delbar(std::size_t j, const Vector& v) { set_column(delbar_, j, v); }
  const ScalarMatrix& del() const { return del_; }
  const ScalarMatrix& delbar() const { return delbar_; }
  ScalarMatrix d() const { return del_ + delbar_; }

  /// Antilinear involution: e_i ↦ c_i · e_{σ(i)}.
  void set_conjugation(std::vector<std::pair<std::size_t, Scalar>> conj) {
    if (conj.size() != dim()) throw std::invalid_argument("conjugation must cover every basis element");
    conjugation_ = std::move(conj);
  }
  bool has_conjugation() const { return conjugation_.has_value(); }
  const std::vector<std::pair<std::size_t, Scalar>>& conjugation() const {
    if (!conjugation_) throw std::logic_error("model has no conjugation");
    return *conjugation_;
  }

  // --- vector-level operations ---------------------------------------------

  Vector zero() const { return zero_vec<Scalar>(dim()); }
  Vector unit_vector(std::size_t i) const {
    Vector v = zero();
    v.at(i) = Scalar(1);
    return v;
  }

  Vector multiply(const Vector& a, const Vector& b) const {
    Vector out = zero();
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!b[j].is_zero()) nb.push_back(j);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j : nb) {
        const auto& p = product(i, j);
        if (p.empty()) continue;
        Scalar ab = a[i] * b[j];
        for (const auto& [k, c] : p) out[k] += ab * c;
      }
    }
    return out;
  }

  Vector conjugate(const Vector& a) const {
    const auto& conj = conjugation();
    Vector out = zero();
    for (std::size_t i = 0; i < dim(); ++i)
      if (!a[i].is_zero()) out[conj[i].first] += a[i].conj() * conj[i].second;
    return out;
  }

 private:
  void set_column(ScalarMatrix& m, std::size_t j, const Vector& v) {
    if (v.size() != dim()) throw std::invalid_argument("differential column has wrong length");
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = v[i];
  }

  std::vector<BasisElement> basis_;
  std::map<std::string, std::size_t> index_;
  std::size_t unit_ = 0;
  std::vector<SparseVector> products_;
  ScalarMatrix del_;
  ScalarMatrix delbar_;
  std::optional<std::vector<std::pair<std::size_t, Scalar>>> conjugation_;
};

// --- validation ---------------------------------------------------------------

struct Violation {
  std::string axiom;
  std::vector<std::string> witness;  // basis ids

  std::string describe() const {
    std::string s = axiom + ":";
    for (const auto& w : witness) s += " " + w;
    return s;
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool names(const std::string& axiom, const std::string& id) const {
    for (const auto& v : violations)
      if (v.axiom == axiom && std::find(v.witness.begin(), v.witness.end(), id) != v.witness.end()) return true;
    return false;
  }
};

namespace detail {

inline bool supported_in(const CbbaModel& m, const Vector& v, Bidegree d) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero() && m.degree(i) != d) return false;
  return true;
}

inline bool supported_in(const CbbaModel& m, const SparseVector& v, Bidegree d) {
  for (const auto& [i, c] : v)
    if (!c.is_zero() && m.degree(i) != d) return false;
  return true;
}

/// Sparse vectors keyed by basis index; zero entries are dropped.
using SparseMap = std::map<std::size_t, Scalar>;

inline void add_to(SparseMap& out, std::size_t k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = out.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

inline SparseMap to_map(const SparseVector& v, const Scalar& scale = Scalar(1)) {
  SparseMap out;
  for (const auto& [k, c] : v) add_to(out, k, scale * c);
  return out;
}

inline SparseMap sparse_multiply(const CbbaModel& m, const SparseMap& a, const SparseMap& b) {
  SparseMap out;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) {
      const auto& p = m.product(i, j);
      if (p.empty()) continue;
      Scalar ab = ca * cb;
      for (const auto& [k, c] : p) add_to(out, k, ab * c);
    }
  return out;
}

inline std::vector<SparseVector> sparse_columns(const ScalarMatrix& d) {
  std::vector<SparseVector> cols(d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t i = 0; i < d.rows(); ++i)
      if (!d(i, j).is_zero()) cols[j].emplace_back(i, d(i, j));
  return cols;
}

inline SparseMap apply(const std::vector<SparseVector>& cols, const SparseMap& v) {
  SparseMap out;
  for (const auto& [j, c] : v)
    for (const auto& [i, d] : cols[j]) add_to(out, i, c * d);
  return out;
}

inline SparseMap conjugate(const CbbaModel& m, const SparseMap& v) {
  SparseMap out;
  const auto& conj = m.conjugation();
  for (const auto& [i, c] : v) add_to(out, conj[i].first, c.conj() * conj[i].second);
  return out;
}

inline SparseMap plus(SparseMap a, const SparseMap& b, const Scalar& scale = Scalar(1)) {
  for (const auto& [k, c] : b) add_to(a, k, scale * c);
  return a;
}

}  // namespace detail

/// Checks every cbba axiom on basis elements and reports each failure with
/// the basis ids that witness it.
inline ValidationReport validate_model(const CbbaModel& m) {
  using detail::SparseMap;
  ValidationReport rep;
  const std::size_t n = m.dim();
  auto add = [&](std::string axiom, std::vector<std::size_t> ids) {
    Violation v{std::move(axiom), {}};
    for (auto i : ids) v.witness.push_back(m.basis(i).id);
    rep.violations.push_back(std::move(v));
  };
  auto e = [](std::size_t i) { return SparseMap{{i, Scalar(1)}}; };

  if (m.degree(m.unit()) != Bidegree{0, 0}) add("unit_bidegree", {m.unit()});

  const auto dcols = detail::sparse_columns(m.del());
  const auto bcols = detail::sparse_columns(m.delbar());
  for (std::size_t j = 0; j < n; ++j) {
    if (!detail::supported_in(m, dcols[j], m.degree(j) + kDelShift)) add("del_bidegree", {j});
    if (!detail::supported_in(m, bcols[j], m.degree(j) + kDelbarShift)) add("delbar_bidegree", {j});
    SparseMap dj = detail::to_map(dcols[j]), bj = detail::to_map(bcols[j]);
    if (!detail::apply(dcols, dj).empty()) add("del_squared", {j});
    if (!detail::apply(bcols, bj).empty()) add("delbar_squared", {j});
    if (!detail::plus(detail::apply(dcols, bj), detail::apply(bcols, dj)).empty()) add("anticommute", {j});
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (detail::to_map(m.product(m.unit(), i)) != e(i) || detail::to_map(m.product(i, m.unit())) != e(i))
      add("unital", {i});
  }

  std::vector<SparseMap> prod(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = detail::to_map(m.product(i, j));

  for (std::size_t i = 0; i < n; ++i) {
    const int di = m.degree(i).total();
    for (std::size_t j = 0; j < n; ++j) {
      const int dj = m.degree(j).total();
      const SparseMap& ij = prod[i * n + j];
      if (!detail::supported_in(m, m.product(i, j), m.degree(i) + m.degree(j))) add("product_bidegree", {i, j});
      if (j >= i && ij != detail::plus({}, prod[j * n + i], Scalar(koszul_sign(di, dj))))
        add("graded_commutative", {i, j});
      // D(ab) = (Da)b + (-1)^{|a|} a(Db)
      for (int which = 0; which < 2; ++which) {
        const auto& cols = which == 0 ? dcols : bcols;
        SparseMap lhs = detail::apply(cols, ij);
        SparseMap rhs = detail::plus(detail::sparse_multiply(m, detail::to_map(cols[i]), e(j)),
                                     detail::sparse_multiply(m, e(i), detail::to_map(cols[j])),
                                     Scalar(di % 2 == 0 ? 1 : -1));
        if (lhs != rhs) add(which == 0 ? "leibniz_del" : "leibniz_delbar", {i, j});
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseMap& ij = prod[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        if (ij.empty() && prod[j * n + k].empty()) continue;
        if (detail::sparse_multiply(m, ij, e(k)) != detail::sparse_multiply(m, e(i), prod[j * n + k]))
          add("associative", {i, j, k});
      }
    }

  if (m.has_conjugation()) {
    const auto& conj = m.conjugation();
    bool in_range = true;
    for (std::size_t i = 0; i < n; ++i)
      if (conj[i].first >= n) {
        add("conjugation_range", {i});
        in_range = false;
      }
    if (!in_range) return rep;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t t = conj[i].first;
      if (m.degree(t) != m.degree(i).swapped()) add("conjugation_bidegree", {i});
      SparseMap ci = detail::conjugate(m, e(i));
      if (detail::conjugate(m, ci) != e(i)) add("conjugation_involution", {i});
      if (detail::conjugate(m, detail::to_map(dcols[i])) != detail::apply(bcols, ci))
        add("conjugation_differentials", {i});
      for (std::size_t j = 0; j < n; ++j)
        if (detail::conjugate(m, prod[i * n + j]) != detail::sparse_multiply(m, ci, detail::conjugate(m, e(j))))
          add("conjugation_multiplicative", {i, j});
    }
  }
  return rep;
}

class InvalidModel : public std::runtime_error {
 public:
  explicit InvalidModel(ValidationReport r)
      : std::runtime_error(message(r)), report_(std::move(r)) {}
  const ValidationReport& report() const { return report_; }

 private:
  static std::string message(const ValidationReport& r) {
    std::string s = "model failed validation";
    if (!r.violations.empty()) s += " (" + r.violations.front().describe() + ")";
    return s;
  }
  ValidationReport report_;
};

/// A model that has passed validate_model. Cohomology and Massey operations
/// accept only this type.
class ValidatedModel {
 public:
  static ValidatedModel validate(CbbaModel m) {
    auto rep = validate_model(m);
    if (!rep.ok()) throw InvalidModel(std::move(rep));
    return ValidatedModel(std::make_shared<const CbbaModel>(std::move(m)));
  }

  const CbbaModel& model() const { return *model_; }
  const CbbaModel* operator->() const { return model_.get(); }
  const std::shared_ptr<const CbbaModel>& shared() const { return model_; }

 private:
  explicit ValidatedModel(std::shared_ptr<const CbbaModel> m) : model_(std::move(m)) {}
  std::shared_ptr<const CbbaModel> model_;
};

// --- elements -----------------------------------------------------------------

class ModelMismatch : public std::invalid_argument {
 public:
  ModelMismatch() : std::invalid_argument("elements belong to different models") {}
};

class Element {
 public:
  /// Infers a pure bidegree when all nonzero coefficients share one.
  Element(std::shared_ptr<const CbbaModel> model, Vector coeffs)
      : model_(std::move(model)), coeffs_(std::move(coeffs)) {
    check_length();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      Bidegree d = model_->degree(i);
      if (!degree_) {
        degree_ = d;
      } else if (*degree_ != d) {
        degree_.reset();
        break;
      }
    }
  }
  /// Declared pure bidegree; the zero element may carry any bidegree.
  Element(std::shared_ptr<const CbbaModel> model, Vector coeffs, Bidegree degree)
      : model_(std::move(model)), coeffs_(std::move(coeffs)), degree_(degree) {
    check_length();
    if (!detail::supported_in(*model_, coeffs_, degree))
      throw std::invalid_argument("element has components outside declared bidegree " + abcml::to_string(degree));
  }

  static Element basis(const ValidatedModel& vm, const std::string& id) {
    return Element(vm.shared(), vm->unit_vector(vm->index_of(id)));
  }
  static Element zero(const ValidatedModel& vm, Bidegree d) { return Element(vm.shared(), vm->zero(), d); }

  const CbbaModel& model() const { return *model_; }
  const std::shared_ptr<const CbbaModel>& model_ptr() const { return model_; }
  const Vector& coeffs() const { return coeffs_; }
  const std::optional<Bidegree>& degree() const { return degree_; }
  Bidegree pure_degree() const {
    if (!degree_) throw std::invalid_argument("element is not of pure bidegree");
    return *degree_;
  }
  bool is_zero() const { return is_zero_vec(coeffs_); }
  bool same_model(const Element& o) const { return model_ == o.model_; }

  Element operator+(const Element& o) const { return combine(o, Scalar(1)); }
  Element operator-(const Element& o) const { return combine(o, Scalar(-1)); }
  Element operator-() const { return Element(model_, scaled(Scalar(-1), coeffs_), degree_); }
  friend Element operator*(const Scalar& c, const Element& e) { return Element(e.model_, scaled(c, e.coeffs_), e.degree_); }
  friend bool operator==(const Element& a, const Element& b) { return a.model_ == b.model_ && a.coeffs_ == b.coeffs_; }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Scalar& c = coeffs_[i];
      if (c.is_zero()) continue;
      std::string cs = abcml::to_string(c);
      bool compound = !c.is_real() && !abcml::is_zero(c.re());
      if (compound) cs = "(" + cs + ")";
      if (!first) {
        if (!compound && cs[0] == '-') {
          os << " - ";
          cs.erase(0, 1);
        } else {
          os << " + ";
        }
      }
      if (cs == "1") cs.clear();
      else if (cs == "-1") cs = "-";
      else cs += "*";
      os << cs << model_->basis(i).id;
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  Element(std::shared_ptr<const CbbaModel> model, Vector coeffs, std::optional<Bidegree> degree)
      : model_(std::move(model)), coeffs_(std::move(coeffs)), degree_(degree) {}
  void check_length() const {
    if (!model_) throw std::invalid_argument("element without model");
    if (coeffs_.size() != model_->dim()) throw std::invalid_argument("element has wrong length");
  }
  Element combine(const Element& o, const Scalar& s) const {
    if (!same_model(o)) throw ModelMismatch();
    Vector v = coeffs_;
    axpy(v, s, o.coeffs_);
    std::optional<Bidegree> d = degree_ == o.degree_ ? degree_ : std::nullopt;
    if (!d) return Element(model_, std::move(v));
    return Element(model_, std::move(v), d);
  }

  std::shared_ptr<const CbbaModel> model_;
  Vector coeffs_;
  std::optional<Bidegree> degree_;
};

inline Element multiply(const Element& a, const Element& b) {
  if (!a.same_model(b)) throw ModelMismatch();
  Vector v = a.model().multiply(a.coeffs(), b.coeffs());
  if (a.degree() && b.degree()) return Element(a.model_ptr(), std::move(v), *a.degree() + *b.degree());
  return Element(a.model_ptr(), std::move(v));
}

inline Element conjugate(const Element& a) {
  Vector v = a.model().conjugate(a.coeffs());
  if (a.degree()) return Element(a.model_ptr(), std::move(v), a.degree()->swapped());
  return Element(a.model_ptr(), std::move(v));
}

inline Element del(const Element& a) {
  Vector v = a.model().del() * a.coeffs();
  if (a.degree()) return Element(a.model_ptr(), std::move(v), *a.degree() + kDelShift);
  return Element(a.model_ptr(), std::move(v));
}
inline Element delbar(const Element& a) {
  Vector v = a.model().delbar() * a.coeffs();
  if (a.degree()) return Element(a.model_ptr(), std::move(v), *a.degree() + kDelbarShift);
  return Element(a.model_ptr(), std::move(v));
}

// --- constructions --------------------------------------------------------------

/// Same algebra with basis reordered: new basis k is old basis perm[k].
inline CbbaModel permuted(const CbbaModel& m, const std::vector<std::size_t>& perm) {
  const std::size_t n = m.dim();
  if (perm.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t k = 0; k < n; ++k) inv.at(perm[k]) = k;
  std::vector<BasisElement> basis;
  for (std::size_t k = 0; k < n; ++k) basis.push_back(m.basis(perm[k]));
  CbbaModel out(std::move(basis), m.basis(m.unit()).id);
  auto remap = [&](const Vector& v) {
    Vector w = out.zero();
    for (std::size_t i = 0; i < n; ++i) w[inv[i]] = v[i];
    return w;
  };
  for (std::size_t a = 0; a < n; ++a) {
    out.set_del(a, remap(m.del().column(perm[a])));
    out.set_delbar(a, remap(m.delbar().column(perm[a])));
    for (std::size_t b = 0; b < n; ++b) {
      SparseVector sv;
      for (const auto& [k, c] : m.product(perm[a], perm[b])) sv.emplace_back(inv[k], c);
      out.set_product(a, b, std::move(sv));
    }
  }
  if (m.has_conjugation()) {
    std::vector<std::pair<std::size_t, Scalar>> conj(n);
    for (std::size_t a = 0; a < n; ++a) {
      const auto& [t, c] = m.conjugation()[perm[a]];
      conj[a] = {inv[t], c};
    }
    out.set_conjugation(std::move(conj));
  }
  return out;
}

/// Graded tensor product: (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb',
/// D(a⊗b) = Da⊗b + (-1)^{|a|} a⊗Db. Basis ids are "a.b".
inline CbbaModel tensor(const CbbaModel& A, const CbbaModel& B) {
  const std::size_t na = A.dim(), nb = B.dim();
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      basis.push_back({A.basis(i).id + "." + B.basis(j).id, A.degree(i) + B.degree(j)});
  CbbaModel out(std::move(basis), A.basis(A.unit()).id + "." + B.basis(B.unit()).id);
  auto idx = [nb](std::size_t i, std::size_t j) { return i * nb + j; };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const int ai = A.degree(i).total();
      for (int which = 0; which < 2; ++which) {
        const ScalarMatrix& DA = which == 0 ? A.del() : A.delbar();
        const ScalarMatrix& DB = which == 0 ? B.del() : B.delbar();
        Vector v = out.zero();
        for (std::size_t k = 0; k < na; ++k) v[idx(k, j)] += DA(k, i);
        Scalar s(ai % 2 == 0 ? 1 : -1);
        for (std::size_t k = 0; k < nb; ++k) v[idx(i, k)] += s * DB(k, j);
        if (which == 0) out.set_del(idx(i, j), v);
        else out.set_delbar(idx(i, j), v);
      }
      for (std::size_t i2 = 0; i2 < na; ++i2)
        for (std::size_t j2 = 0; j2 < nb; ++j2) {
          Scalar s(koszul_sign(B.degree(j).total(), A.degree(i2).total()));
          SparseVector sv;
          for (const auto& [ka, ca] : A.product(i, i2))
            for (const auto& [kb, cb] : B.product(j, j2)) sv.emplace_back(idx(ka, kb), s * ca * cb);
          out.set_product(idx(i, j), idx(i2, j2), std::move(sv));
        }
    }
  if (A.has_conjugation() && B.has_conjugation()) {
    std::vector<std::pair<std::size_t, Scalar>> conj(na * nb);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& [ta, ca] = A.conjugation()[i];
        const auto& [tb, cb] = B.conjugation()[j];
        conj[idx(i, j)] = {idx(ta, tb), ca * cb};
      }
    out.set_conjugation(std::move(conj));
  }
  return out;
}

}  // namespace abcml
