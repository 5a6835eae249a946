#pragma once

// Even cohomology rings of iterated blow-ups of projective space at points
// and smooth curves. A ring keeps its basis graded by p (classes of bidegree
// (p,p)), rational structure constants, an integration functional on the
// point class, a registry of named classes and the first Chern class.

#include "abcml/cbba.hpp"
#include "abcml/cbba_json.hpp"
#include "abcml/expression.hpp"
#include "abcml/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abcml {

using RVec = Vec<Rational>;

struct RingBasis {
  std::string name;
  int degree;  // bidegree (degree, degree)
};

/// A blow-up center as recorded in the ring: its class in the ring it was
/// blown up in (lifted to the current basis) and ∫_Z c1(N_Z).
struct CenterRecord {
  std::string name;
  bool curve = false;
  RVec cls;
  Rational normal_degree;
};

class IntersectionRing {
 public:
  IntersectionRing() = default;

  int dimension() const { return n_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<RingBasis>& basis() const { return basis_; }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  std::size_t unit() const { return 0; }
  /// Index of the point class (the generator of bidegree (n,n)).
  std::size_t point() const { return point_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].name == name) return i;
    return std::nullopt;
  }
  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::out_of_range("unknown basis class '" + name + "'");
    return *i;
  }
  std::vector<std::size_t> indices_of(int k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree == k) out.push_back(i);
    return out;
  }

  RVec zero() const { return zero_vec<Rational>(size()); }
  RVec unit_vector(std::size_t i) const {
    RVec v = zero();
    v.at(i) = 1;
    return v;
  }
  const RVec& product(std::size_t i, std::size_t j) const { return products_.at(i * size() + j); }

  RVec multiply(const RVec& a, const RVec& b) const {
    RVec out = zero();
    for (std::size_t i = 0; i < size(); ++i) {
      if (abcml::is_zero(a[i])) continue;
      for (std::size_t j = 0; j < size(); ++j)
        if (!abcml::is_zero(b[j])) axpy(out, Rational(a[i] * b[j]), product(i, j));
    }
    return out;
  }

  /// ∫ over the ring: the coefficient of the point class.
  Rational integrate(const RVec& v) const { return v.at(point_); }

  // --- registry ---------------------------------------------------------------

  void register_class(const std::string& name, const RVec& v) {
    if (v.size() != size()) throw std::invalid_argument("class '" + name + "' has the wrong length");
    if (!registry_.count(name)) order_.push_back(name);
    registry_[name] = v;
  }
  bool has_class(const std::string& name) const { return registry_.count(name) > 0; }
  const RVec& registered(const std::string& name) const {
    auto it = registry_.find(name);
    if (it == registry_.end()) throw std::out_of_range("no registered class '" + name + "'");
    return it->second;
  }
  const std::vector<std::string>& registry_order() const { return order_; }
  /// Registered classes of bidegree (1,1), in registration order.
  std::vector<std::string> divisors() const {
    std::vector<std::string> out;
    for (const auto& n : order_)
      if (pure_degree(registry_.at(n)) == 1) out.push_back(n);
    return out;
  }
  const RVec& c1() const { return c1_; }
  const std::vector<CenterRecord>& centers() const { return centers_; }
  const CenterRecord& center(const std::string& name) const {
    for (const auto& c : centers_)
      if (c.name == name) return c;
    throw std::out_of_range("no blow-up center '" + name + "'");
  }

  /// Degree k if every nonzero coefficient sits in degree k.
  std::optional<int> pure_degree(const RVec& v) const {
    std::optional<int> d;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (abcml::is_zero(v[i])) continue;
      if (d && *d != degree(i)) return std::nullopt;
      d = degree(i);
    }
    return d;
  }

  // --- conversions --------------------------------------------------------------

  /// The ring as a cbba with zero differentials and real basis.
  CbbaModel to_model() const {
    std::vector<BasisElement> b;
    for (const auto& e : basis_) b.push_back({e.name, {e.degree, e.degree}});
    CbbaModel m(std::move(b), basis_.at(0).name);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        SparseVector sv;
        for (std::size_t k = 0; k < size(); ++k)
          if (!abcml::is_zero(product(i, j)[k])) sv.emplace_back(k, Scalar(product(i, j)[k]));
        m.set_product(i, j, std::move(sv));
      }
    std::vector<std::pair<std::size_t, Scalar>> conj;
    for (std::size_t i = 0; i < size(); ++i) conj.emplace_back(i, Scalar(1));
    m.set_conjugation(std::move(conj));
    return m;
  }

  /// Parses an expression in basis names and registered names.
  RVec parse(const std::string& text) const {
    CbbaModel m = to_model();
    NameResolver resolve = [this](const std::string& name) -> std::optional<Vector> {
      if (!has_class(name)) return std::nullopt;
      return embed(registered(name));
    };
    Vector v = parse_vector(m, text, resolve);
    RVec out = zero();
    for (std::size_t i = 0; i < size(); ++i) {
      if (!v[i].is_real()) throw ParseError("ring classes have rational coefficients: '" + text + "'");
      out[i] = v[i].re();
    }
    return out;
  }

  /// Renders a class in the basis, integer coefficients attached: "-2GE_C+G^2".
  std::string format(const RVec& v) const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (abcml::is_zero(v[i])) continue;
      Rational a = abs(v[i]);
      std::string coeff = a == 1 ? "" : a.get_den() == 1 ? to_string(a) : to_string(a) + "*";
      out += (sgn(v[i]) < 0 ? "-" : out.empty() ? "" : "+") + coeff + basis_[i].name;
    }
    return out.empty() ? "0" : out;
  }

  /// Matrix of ∫ b_i b_j for b_i of degree k and b_j of degree n−k.
  Matrix<Rational> pairing_matrix(int k) const {
    auto rows = indices_of(k), cols = indices_of(n_ - k);
    Matrix<Rational> m(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) m(a, b) = integrate(product(rows[a], cols[b]));
    return m;
  }
  bool poincare_duality() const {
    for (int k = 0; k <= n_; ++k) {
      auto m = pairing_matrix(k);
      if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
    return indices_of(n_).size() == 1;
  }

  friend IntersectionRing projective_space(int n);
  friend struct BlowupBuilder;

 private:
  static Vector embed(const RVec& v) {
    Vector out;
    for (const auto& x : v) out.push_back(Scalar(x));
    return out;
  }

  int n_ = 0;
  std::vector<RingBasis> basis_;
  std::vector<RVec> products_;
  std::size_t point_ = 0;
  std::map<std::string, RVec> registry_;
  std::vector<std::string> order_;
  RVec c1_;
  std::vector<CenterRecord> centers_;
};

/// H(ℙⁿ) = ℚ[G]/(G^{n+1}) with ∫Gⁿ = 1 and c1 = (n+1)G.
inline IntersectionRing projective_space(int n) {
  if (n < 1) throw std::invalid_argument("projective space needs dimension n >= 1");
  IntersectionRing r;
  r.n_ = n;
  for (int k = 0; k <= n; ++k) r.basis_.push_back({k == 0 ? "1" : k == 1 ? "G" : "G^" + std::to_string(k), k});
  const std::size_t s = r.size();
  r.products_.assign(s * s, zero_vec<Rational>(s));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) r.products_[a * s + b][a + b] = 1;
  r.point_ = n;
  r.register_class("G", r.unit_vector(1));
  r.c1_ = r.zero();
  r.c1_[1] = n + 1;
  return r;
}

struct CurveCenter {
  std::string name;
  int genus = 0;
  std::map<std::string, long> pairing;  // divisor name -> ∫ of its restriction to the curve
  std::optional<long> ambient_c1_degree;
  std::string generator = "G";  // label of the restriction generator g ∈ H^{1,1}(Z)
};

using Multiplicities = std::map<std::string, long>;

/// Builds Bl_Z Y from H(Bl) = H(Y) ⊕ ⊕_{i=1}^{r−1} H(Z)E^i with
/// E^r = (−1)^{r−1}[Z] + Σ (−1)^{r−i+1} c_i(N) E^{r−i}. For a point H(Z) = ℚ;
/// for a curve H(Z) = ℚ ⊕ ℚg and only c_1(N) = deg(N)·g survives.
struct BlowupBuilder {
  const IntersectionRing& y;
  std::string name;
  int r;           // codimension of the center
  bool curve;      // H(Z) has the class g
  std::string g_label;
  RVec z_class;    // [Z] in H(Y)
  Rational normal_degree;

  // element of H(Y) ⊕ H(Z)[E] before reduction; key (has_g, power)
  struct Ext {
    RVec y;
    std::map<std::pair<int, int>, Rational> e;
  };

  Rational restrict_g(std::size_t b) const {
    if (!curve || y.degree(b) != 1) return 0;
    return y.integrate(y.multiply(y.unit_vector(b), z_class));
  }

  Ext multiply_basis(const Ext& a, const Ext& b) const {
    Ext out{y.multiply(a.y, b.y), {}};
    auto add = [&](int z, int k, const Rational& c) {
      if (abcml::is_zero(c) || z > 1) return;
      out.e[{z, k}] += c;
    };
    auto cross = [&](const RVec& yv, const std::map<std::pair<int, int>, Rational>& ev) {
      for (const auto& [key, c] : ev) {
        auto [z, k] = key;
        add(z, k, c * yv[y.unit()]);
        if (z == 0)
          for (std::size_t i = 0; i < y.size(); ++i)
            if (!abcml::is_zero(yv[i])) add(1, k, c * yv[i] * restrict_g(i));
      }
    };
    cross(a.y, b.e);
    cross(b.y, a.e);
    for (const auto& [ka, ca] : a.e)
      for (const auto& [kb, cb] : b.e) add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }

  void reduce(Ext& x) const {
    while (!x.e.empty()) {
      auto top = std::max_element(x.e.begin(), x.e.end(),
                                  [](const auto& a, const auto& b) { return a.first.second < b.first.second; });
      auto [z, k] = top->first;
      if (k < r) break;
      Rational c = top->second;
      x.e.erase(top);
      const Rational sign_z = (r - 1) % 2 == 0 ? 1 : -1;
      if (k == r) {
        // j_*(1) = [Z], j_*(g) = point; E^{k−r}·[Z] = 0 for k > r since [Z]|_Z = c_r(N) = 0
        if (z == 0) axpy(x.y, Rational(c * sign_z), z_class);
        else x.y[y.point()] += c * sign_z;
      }
      if (curve && z == 0) {
        Rational coeff = c * (r % 2 == 0 ? 1 : -1) * normal_degree;
        if (!abcml::is_zero(coeff)) x.e[{1, k - 1}] += coeff;
      }
    }
  }

  IntersectionRing build(const Multiplicities& mult) const {
    const std::string ename = "E_" + name;
    for (const auto& b : y.basis())
      if (b.name == ename) throw std::invalid_argument("center '" + name + "' already blown up");
    IntersectionRing out;
    out.n_ = y.n_;
    out.basis_ = y.basis_;
    std::map<std::pair<int, int>, std::size_t> slot;
    for (int z = 0; z <= (curve ? 1 : 0); ++z)
      for (int i = 1; i < r; ++i) {
        std::string nm = (z ? g_label : "") + ename + (i > 1 ? "^" + std::to_string(i) : "");
        slot[{z, i}] = out.basis_.size();
        out.basis_.push_back({nm, i + z});
      }
    const std::size_t s = out.size(), old = y.size();
    auto as_ext = [&](std::size_t i) {
      Ext e{zero_vec<Rational>(old), {}};
      if (i < old) e.y[i] = 1;
      else
        for (const auto& [key, idx] : slot)
          if (idx == i) e.e[key] = 1;
      return e;
    };
    out.products_.assign(s * s, zero_vec<Rational>(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        Ext p = multiply_basis(as_ext(i), as_ext(j));
        reduce(p);
        RVec& v = out.products_[i * s + j];
        for (std::size_t k = 0; k < old; ++k) v[k] = p.y[k];
        for (const auto& [key, c] : p.e) {
          if (abcml::is_zero(c)) continue;
          auto it = slot.find(key);
          if (it == slot.end()) throw std::logic_error("unreduced exceptional power");
          v[it->second] += c;
        }
      }
    out.point_ = y.point_;
    auto lift = [&](const RVec& v) {
      RVec w = v;
      w.resize(s, Rational(0));
      return w;
    };
    const RVec e1 = out.unit_vector(slot.at({0, 1}));
    for (const auto& [dname, m] : mult) {
      if (!y.has_class(dname)) throw std::invalid_argument("multiplicity given for unknown divisor '" + dname + "'");
      if (m < 0) throw std::invalid_argument("negative multiplicity for '" + dname + "'");
    }
    for (const auto& n : y.order_) {
      RVec w = lift(y.registered(n));
      auto it = mult.find(n);
      if (it != mult.end()) axpy(w, Rational(-it->second), e1);
      out.register_class(n, w);
    }
    out.register_class(ename, e1);
    out.c1_ = lift(y.c1_);
    axpy(out.c1_, Rational(-(r - 1)), e1);
    for (const auto& c : y.centers_) out.centers_.push_back({c.name, c.curve, lift(c.cls), c.normal_degree});
    out.centers_.push_back({name, curve, lift(z_class), normal_degree});
    return out;
  }
};

inline IntersectionRing blow_up_point(const IntersectionRing& ring, const std::string& name,
                                      const Multiplicities& mult = {}) {
  if (ring.dimension() < 2) throw std::invalid_argument("blowing up a point needs dimension >= 2");
  BlowupBuilder b{ring, name, ring.dimension(), false, "", ring.unit_vector(ring.point()), 0};
  return b.build(mult);
}

/// Class [Z] ∈ H^{n−1,n−1} realizing the pairing ∫ D·[Z] against every registered divisor.
inline RVec curve_class(const IntersectionRing& ring, const CurveCenter& c) {
  const int n = ring.dimension();
  auto divs = ring.divisors();
  for (const auto& [k, v] : c.pairing)
    if (std::find(divs.begin(), divs.end(), k) == divs.end())
      throw std::invalid_argument("pairing of '" + c.name + "' names unknown divisor '" + k + "'");
  auto cols = ring.indices_of(n - 1);
  Matrix<Rational> a(divs.size(), cols.size());
  RVec rhs;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    auto it = c.pairing.find(divs[i]);
    if (it == c.pairing.end()) throw std::invalid_argument("pairing of '" + c.name + "' misses divisor '" + divs[i] + "'");
    rhs.push_back(Rational(it->second));
    RVec d = ring.registered(divs[i]);
    for (std::size_t j = 0; j < cols.size(); ++j) a(i, j) = ring.integrate(ring.multiply(d, ring.unit_vector(cols[j])));
  }
  auto x = solve(a, rhs);
  if (!x) throw std::invalid_argument("inconsistent pairing table for '" + c.name + "': no class realizes it");
  if (rank(a) != cols.size())
    throw std::invalid_argument("pairing table for '" + c.name + "' does not determine the curve class");
  RVec z = ring.zero();
  for (std::size_t j = 0; j < cols.size(); ++j) z[cols[j]] = (*x)[j];
  return z;
}

/// ∫_Z c1(N_Z) = ∫_Z c1(Y) − (2 − 2g).
inline Rational normal_degree(const IntersectionRing& ring, const CurveCenter& c, const RVec& z) {
  Rational c1z = ring.integrate(ring.multiply(ring.c1(), z));
  if (c.ambient_c1_degree && Rational(*c.ambient_c1_degree) != c1z)
    throw std::invalid_argument("ambient c1 degree of '" + c.name + "' is " + to_string(c1z) + ", not " +
                                std::to_string(*c.ambient_c1_degree));
  return c1z - Rational(2 - 2 * c.genus);
}

inline IntersectionRing blow_up_curve(const IntersectionRing& ring, const CurveCenter& c,
                                      const Multiplicities& mult = {}) {
  if (ring.dimension() < 3) throw std::invalid_argument("blowing up a curve needs dimension >= 3");
  if (c.genus < 0) throw std::invalid_argument("negative genus for '" + c.name + "'");
  RVec z = curve_class(ring, c);
  BlowupBuilder b{ring, c.name, ring.dimension() - 1, true, c.generator, z, normal_degree(ring, c, z)};
  return b.build(mult);
}

// --- configurations -------------------------------------------------------------

struct NamedClass {
  std::string name;
  std::string expression;
};

struct CenterSpec {
  enum Kind { Point, Curve } kind = Point;
  std::string name;
  CurveCenter curve;  // used when kind == Curve
  Multiplicities multiplicities;
};

struct BlowupConfig {
  int ambient = 3;
  std::vector<NamedClass> divisors;  // registered before the first blow-up
  std::vector<CenterSpec> centers;
  std::vector<NamedClass> classes;   // registered after the last blow-up
};

inline IntersectionRing build(const BlowupConfig& cfg) {
  IntersectionRing r = projective_space(cfg.ambient);
  for (const auto& d : cfg.divisors) r.register_class(d.name, r.parse(d.expression));
  for (const auto& c : cfg.centers)
    r = c.kind == CenterSpec::Point ? blow_up_point(r, c.name, c.multiplicities)
                                    : blow_up_curve(r, c.curve, c.multiplicities);
  for (const auto& d : cfg.classes) r.register_class(d.name, r.parse(d.expression));
  return r;
}

/// ℙ³ blown up at P, Q, R, then the line C through P and Q, then the lines
/// L1, L2 through R and two points of C. A1, A2 start as planes through L1,
/// L2 (and R) and end as their strict transforms.
inline BlowupConfig paper_config() {
  BlowupConfig cfg;
  cfg.ambient = 3;
  cfg.divisors = {{"A1", "G"}, {"A2", "G"}};
  auto point = [](std::string n, Multiplicities m = {}) {
    CenterSpec c;
    c.kind = CenterSpec::Point;
    c.name = n;
    c.multiplicities = std::move(m);
    return c;
  };
  auto line = [](std::string n, std::map<std::string, long> pairing, Multiplicities m = {}) {
    CenterSpec c;
    c.kind = CenterSpec::Curve;
    c.name = n;
    c.curve.name = n;
    c.curve.pairing = std::move(pairing);
    c.multiplicities = std::move(m);
    return c;
  };
  cfg.centers = {
      point("P"),
      point("Q"),
      point("R", {{"A1", 1}, {"A2", 1}}),
      line("C", {{"G", 1}, {"A1", 1}, {"A2", 1}, {"E_P", 1}, {"E_Q", 1}, {"E_R", 0}}),
      line("L1", {{"G", 1}, {"A1", 0}, {"A2", 0}, {"E_P", 0}, {"E_Q", 0}, {"E_R", 1}, {"E_C", 1}}, {{"A1", 1}}),
      line("L2", {{"G", 1}, {"A1", 0}, {"A2", 0}, {"E_P", 0}, {"E_Q", 0}, {"E_R", 1}, {"E_C", 1}, {"E_L1", 0}},
           {{"A2", 1}}),
  };
  cfg.centers[3].curve.ambient_c1_degree = 0;
  cfg.classes = {{"F1", "E_C*E_L1"}, {"F2", "E_C*E_L2"}};
  return cfg;
}

inline IntersectionRing build_paper_X() { return build(paper_config()); }

/// Products of the basis divisors (degree-1 basis elements), row-major.
struct MultiplicationTable {
  std::vector<std::string> labels;
  std::vector<std::vector<RVec>> entries;
};

inline MultiplicationTable multiplication_table(const IntersectionRing& r) {
  MultiplicationTable t;
  auto idx = r.indices_of(1);
  for (auto i : idx) t.labels.push_back(r.basis()[i].name);
  for (auto i : idx) {
    std::vector<RVec> row;
    for (auto j : idx) row.push_back(r.product(i, j));
    t.entries.push_back(std::move(row));
  }
  return t;
}

inline std::string table_tsv(const IntersectionRing& r) {
  auto t = multiplication_table(r);
  std::ostringstream os;
  for (const auto& l : t.labels) os << '\t' << l;
  os << '\n';
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    os << t.labels[i];
    for (const auto& v : t.entries[i]) os << '\t' << r.format(v);
    os << '\n';
  }
  return os.str();
}

inline std::string table_markdown(const IntersectionRing& r) {
  auto t = multiplication_table(r);
  std::ostringstream os;
  os << "| |";
  for (const auto& l : t.labels) os << ' ' << l << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < t.labels.size(); ++i) os << "---|";
  os << '\n';
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    os << "| " << t.labels[i] << " |";
    for (const auto& v : t.entries[i]) os << ' ' << r.format(v) << " |";
    os << '\n';
  }
  return os.str();
}

inline Rational integrate_triple(const IntersectionRing& r, const std::string& a, const std::string& b,
                                 const std::string& c) {
  if (r.dimension() != 3) throw std::invalid_argument("triple intersections need a threefold");
  RVec va = r.parse(a), vb = r.parse(b), vc = r.parse(c);
  for (const auto* v : {&va, &vb, &vc})
    if (r.pure_degree(*v) != 1 && !is_zero_vec(*v)) throw std::invalid_argument("triple intersection takes (1,1)-classes");
  return r.integrate(r.multiply(r.multiply(va, vb), vc));
}

// --- JSON ---------------------------------------------------------------------------
//
//   {"ambient": 3,
//    "divisors": [{"name": "A1", "class": "G"}],
//    "centers": [{"point": "P"},
//                {"curve": "C", "genus": 0, "generator": "G", "ambient_c1_degree": 0,
//                 "pairing": {"G": 1, ...}, "multiplicities": {"A1": 1}}],
//    "classes": [{"name": "F1", "class": "E_C*E_L1"}]}

inline BlowupConfig config_from_json(const json& j) {
  try {
    BlowupConfig cfg;
    cfg.ambient = j.value("ambient", 3);
    auto named = [](const json& arr) {
      std::vector<NamedClass> out;
      for (const auto& e : arr) out.push_back({e.at("name").get<std::string>(), e.at("class").get<std::string>()});
      return out;
    };
    if (j.contains("divisors")) cfg.divisors = named(j.at("divisors"));
    if (j.contains("classes")) cfg.classes = named(j.at("classes"));
    for (const auto& c : j.at("centers")) {
      CenterSpec s;
      if (c.contains("point")) {
        s.kind = CenterSpec::Point;
        s.name = c.at("point").get<std::string>();
      } else if (c.contains("curve")) {
        s.kind = CenterSpec::Curve;
        s.name = c.at("curve").get<std::string>();
        s.curve.name = s.name;
        s.curve.genus = c.value("genus", 0);
        s.curve.generator = c.value("generator", std::string("G"));
        if (c.contains("ambient_c1_degree")) s.curve.ambient_c1_degree = c.at("ambient_c1_degree").get<long>();
        for (const auto& [k, v] : c.at("pairing").items()) s.curve.pairing[k] = v.get<long>();
      } else {
        throw ParseError("center needs a \"point\" or \"curve\" name");
      }
      if (c.contains("multiplicities"))
        for (const auto& [k, v] : c.at("multiplicities").items()) s.multiplicities[k] = v.get<long>();
      cfg.centers.push_back(std::move(s));
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed blow-up config: ") + e.what());
  }
}

inline json config_to_json(const BlowupConfig& cfg) {
  json j;
  j["ambient"] = cfg.ambient;
  auto named = [](const std::vector<NamedClass>& v) {
    json a = json::array();
    for (const auto& d : v) a.push_back({{"name", d.name}, {"class", d.expression}});
    return a;
  };
  j["divisors"] = named(cfg.divisors);
  j["centers"] = json::array();
  for (const auto& c : cfg.centers) {
    json e;
    if (c.kind == CenterSpec::Point) {
      e["point"] = c.name;
    } else {
      e["curve"] = c.name;
      e["genus"] = c.curve.genus;
      e["generator"] = c.curve.generator;
      if (c.curve.ambient_c1_degree) e["ambient_c1_degree"] = *c.curve.ambient_c1_degree;
      e["pairing"] = c.curve.pairing;
    }
    if (!c.multiplicities.empty()) e["multiplicities"] = c.multiplicities;
    j["centers"].push_back(e);
  }
  j["classes"] = named(cfg.classes);
  return j;
}

inline BlowupConfig load_config(const std::string& path) {
  return config_from_json(parse_json_text(read_file(path), path));
}

}  // namespace abcml
