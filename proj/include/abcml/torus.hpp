#pragma once

// Spectral calculus on the flat torus ℂ/(ℤ+iℤ), sampled on an N×N grid of the
// unit square. Conventions: dz = dx + i dy, i dz∧dz̄ = 2 dx∧dy, so a (1,1)-form
// c dz∧dz̄ integrates as ∫ c·(−2i) dx dy. Integrals use the trapezoidal rule.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abcml::torus {

using cplx = std::complex<double>;

struct TorusGrid {
  int N;

  explicit TorusGrid(int n) : N(n) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("torus grid needs N >= 8 and even, got " + std::to_string(n));
  }
  std::size_t size() const { return static_cast<std::size_t>(N) * N; }
  double coord(int i) const { return static_cast<double>(i) / N; }
  std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * N + j; }
  /// Signed frequency of index i.
  int frequency(int i) const { return i < N / 2 ? i : i - N; }
  /// Frequency used for differentiation; the Nyquist mode is dropped.
  double derivative_frequency(int i) const { return i == N / 2 ? 0.0 : frequency(i); }
  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

enum class FormType { Function, Form10, Form01, Form11 };

inline const char* to_string(FormType t) {
  switch (t) {
    case FormType::Function: return "function";
    case FormType::Form10: return "(1,0)-form";
    case FormType::Form01: return "(0,1)-form";
    case FormType::Form11: return "(1,1)-form";
  }
  return "?";
}

/// Samples of a function, or the coefficient of dz, dz̄ or dz∧dz̄. Index (i, j)
/// is the point x = i/N, y = j/N.
struct GridField {
  TorusGrid grid;
  FormType type = FormType::Function;
  std::vector<cplx> v;

  GridField(TorusGrid g, FormType t) : grid(g), type(t), v(g.size()) {}
  GridField(TorusGrid g, FormType t, std::vector<cplx> values) : grid(g), type(t), v(std::move(values)) {
    if (v.size() != grid.size()) throw std::invalid_argument("grid field has the wrong number of samples");
  }

  double max_abs() const {
    double m = 0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  double max_imag() const {
    double m = 0;
    for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
    return m;
  }
  cplx mean() const {
    cplx s = 0;
    for (const auto& z : v) s += z;
    return s / static_cast<double>(v.size());
  }

  GridField& operator+=(const GridField& o) {
    require_same(o);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
  }
  GridField& operator-=(const GridField& o) {
    require_same(o);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
  }
  GridField& operator*=(cplx a) {
    for (auto& z : v) z *= a;
    return *this;
  }
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(cplx s, GridField a) { return a *= s; }

 private:
  void require_same(const GridField& o) const {
    if (!(grid == o.grid) || type != o.type)
      throw std::invalid_argument(std::string("cannot combine a ") + to_string(type) + " with a " + to_string(o.type));
  }
};

using GridFunction = GridField;
using GridForm = GridField;

inline GridFunction sample(const TorusGrid& g, const std::function<cplx(double, double)>& f) {
  GridFunction out(g, FormType::Function);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) out.v[g.at(i, j)] = f(g.coord(i), g.coord(j));
  return out;
}

namespace detail {

/// Unnormalized 2-D DFT; sign is FFTW_FORWARD or FFTW_BACKWARD.
inline std::vector<cplx> dft(const TorusGrid& g, const std::vector<cplx>& in, int sign) {
  std::vector<cplx> src = in, out(in.size());
  auto* s = reinterpret_cast<fftw_complex*>(src.data());
  auto* d = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan p = fftw_plan_dft_2d(g.N, g.N, s, d, sign, FFTW_ESTIMATE);
  if (!p) throw std::runtime_error("FFTW planning failed");
  fftw_execute(p);
  fftw_destroy_plan(p);
  return out;
}

inline std::vector<cplx> forward(const TorusGrid& g, const std::vector<cplx>& in) { return dft(g, in, FFTW_FORWARD); }

inline std::vector<cplx> inverse(const TorusGrid& g, const std::vector<cplx>& in) {
  auto out = dft(g, in, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : out) z *= scale;
  return out;
}

/// Spectral ∂_x and ∂_y of the samples.
inline std::pair<std::vector<cplx>, std::vector<cplx>> partials(const TorusGrid& g, const std::vector<cplx>& f) {
  auto hat = forward(g, f);
  std::vector<cplx> hx(hat.size()), hy(hat.size());
  const double tau = 2 * std::numbers::pi;
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      auto k = g.at(i, j);
      hx[k] = cplx(0, tau * g.derivative_frequency(i)) * hat[k];
      hy[k] = cplx(0, tau * g.derivative_frequency(j)) * hat[k];
    }
  return {inverse(g, hx), inverse(g, hy)};
}

inline void require(const GridField& f, FormType t, const char* op) {
  if (f.type != t) throw std::invalid_argument(std::string(op) + " is not defined on a " + to_string(f.type));
}

/// ½(f_x ∓ i f_y): sign −1 gives ∂_z, +1 gives ∂_z̄.
inline std::vector<cplx> wirtinger(const TorusGrid& g, const std::vector<cplx>& f, int sign) {
  auto [fx, fy] = partials(g, f);
  std::vector<cplx> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = 0.5 * (fx[k] + cplx(0, sign) * fy[k]);
  return out;
}

}  // namespace detail

/// ∂ on functions (f ↦ f_z dz) and on (0,1)-forms (g dz̄ ↦ g_z dz∧dz̄).
inline GridForm del(const GridField& f) {
  if (f.type == FormType::Function) return {f.grid, FormType::Form10, detail::wirtinger(f.grid, f.v, -1)};
  detail::require(f, FormType::Form01, "del");
  return {f.grid, FormType::Form11, detail::wirtinger(f.grid, f.v, -1)};
}

/// ∂̄ on functions (f ↦ f_z̄ dz̄) and on (1,0)-forms (h dz ↦ −h_z̄ dz∧dz̄).
inline GridForm delbar(const GridField& f) {
  if (f.type == FormType::Function) return {f.grid, FormType::Form01, detail::wirtinger(f.grid, f.v, +1)};
  detail::require(f, FormType::Form10, "delbar");
  GridForm out(f.grid, FormType::Form11, detail::wirtinger(f.grid, f.v, +1));
  return out *= -1.0;
}

inline GridForm i_ddbar(const GridFunction& f) { return cplx(0, 1) * del(delbar(f)); }

/// (f_x, f_y) by direct spectral differentiation.
inline std::pair<GridFunction, GridFunction> gradient(const GridFunction& f) {
  detail::require(f, FormType::Function, "gradient");
  auto [fx, fy] = detail::partials(f.grid, f.v);
  return {GridFunction(f.grid, FormType::Function, std::move(fx)), GridFunction(f.grid, FormType::Function, std::move(fy))};
}

/// ∫ f dx dy over the unit square.
inline cplx integrate(const GridFunction& f) {
  detail::require(f, FormType::Function, "integrate");
  return f.mean();
}

/// The density ρ / (dx∧dy) of a (1,1)-form.
inline GridFunction density(const GridForm& rho) {
  detail::require(rho, FormType::Form11, "density");
  GridFunction out(rho.grid, FormType::Function, rho.v);
  return out *= cplx(0, -2);
}

inline cplx integrate_form(const GridForm& rho) { return integrate(density(rho)); }

/// ∫ f·ρ for a function f and a (1,1)-form ρ.
inline cplx integrate_product(const GridFunction& f, const GridForm& rho) {
  GridFunction d = density(rho);
  detail::require(f, FormType::Function, "integrate_product");
  if (!(f.grid == rho.grid)) throw std::invalid_argument("fields live on different grids");
  for (std::size_t k = 0; k < d.v.size(); ++k) d.v[k] *= f.v[k];
  return integrate(d);
}

/// ⟨a,b⟩_D = i∫ a∧b̄ = 2∫ a·b̄ dx dy for (1,0)-forms a dz, b dz.
inline cplx dirichlet_pairing(const GridForm& a, const GridForm& b) {
  detail::require(a, FormType::Form10, "dirichlet_pairing");
  detail::require(b, FormType::Form10, "dirichlet_pairing");
  if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
  cplx s = 0;
  for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * std::conj(b.v[k]);
  return 2.0 * s / static_cast<double>(a.v.size());
}

class NonzeroMean : public std::invalid_argument {
 public:
  NonzeroMean(cplx mean, double scale)
      : std::invalid_argument(message(mean, scale)), mean_(mean), scale_(scale) {}
  cplx mean() const { return mean_; }
  double scale() const { return scale_; }

 private:
  static std::string message(cplx m, double scale) {
    std::ostringstream os;
    os.precision(6);
    os << "rho has nonzero total integral: mean coefficient (" << m.real() << ", " << m.imag() << "), max |rho| " << scale;
    return os.str();
  }
  cplx mean_;
  double scale_;
};

inline constexpr double kMeanTolerance = 1e-12;

/// Zero-mean F with i∂∂̄F = ρ. ρ must integrate to zero within
/// kMeanTolerance·max|ρ|.
inline GridFunction solve_i_ddbar(const GridForm& rho) {
  detail::require(rho, FormType::Form11, "solve_i_ddbar");
  const TorusGrid& g = rho.grid;
  const double scale = rho.max_abs();
  const cplx m = rho.mean();
  if (std::abs(m) > kMeanTolerance * scale) throw NonzeroMean(m, scale);
  auto hat = detail::forward(g, rho.v);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      auto k = g.at(i, j);
      double kx = g.derivative_frequency(i), ky = g.derivative_frequency(j);
      double k2 = kx * kx + ky * ky;
      hat[k] = k2 == 0 ? cplx(0) : cplx(0, 1) * hat[k] / (pi2 * k2);
    }
  return {g, FormType::Function, detail::inverse(g, hat)};
}

/// Relative imaginary part of the density accepted as real.
inline constexpr double kRealTolerance = 1e-8;

struct IbpReport {
  int N = 0;
  double solve_residual = 0;   // max|i∂∂̄F − ρ| / max|ρ|
  double ibp_residual = 0;     // |∫Fρ + ⟨∂F,∂F⟩_D| / max(1, ⟨∂F,∂F⟩_D)
  double dirichlet_energy = 0; // ⟨∂F,∂F⟩_D
  double integral_F_rho = 0;
  double imag_ratio = 0;       // max|Im F| / max|F|
};

inline IbpReport ibp_identity_check(const GridForm& rho, GridFunction* out_F = nullptr) {
  if (density(rho).max_imag() > kRealTolerance * std::max(1.0, rho.max_abs()))
    throw std::invalid_argument("ibp_identity_check needs a real (1,1)-form");
  GridFunction F = solve_i_ddbar(rho);
  IbpReport r;
  r.N = rho.grid.N;
  double scale = rho.max_abs();
  r.solve_residual = scale == 0 ? 0 : (i_ddbar(F) - rho).max_abs() / scale;
  GridForm dF = del(F);
  cplx energy = dirichlet_pairing(dF, dF);
  cplx lhs = integrate_product(F, rho);
  r.dirichlet_energy = energy.real();
  r.integral_F_rho = lhs.real();
  r.ibp_residual = std::abs(lhs + energy) / std::max(1.0, r.dirichlet_energy);
  double fmax = F.max_abs();
  r.imag_ratio = fmax == 0 ? 0 : F.max_imag() / fmax;
  if (out_F) *out_F = F;
  return r;
}

/// ρ = i·g dz∧dz̄ with g a real trigonometric polynomial of frequencies
/// 0 < max(|kx|,|ky|) ≤ kmax and standard normal coefficients. Its density 2g
/// is real with zero mean.
inline GridForm random_band_limited_rho(const TorusGrid& grid, std::mt19937_64& rng, int kmax = 8) {
  kmax = std::min(kmax, grid.N / 2 - 1);
  std::normal_distribution<double> normal;
  const double n2 = static_cast<double>(grid.size());
  std::vector<cplx> hat(grid.size());
  auto index = [&](int k) { return k < 0 ? k + grid.N : k; };
  for (int kx = 0; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      double a = normal(rng), b = normal(rng);
      cplx c = 0.5 * n2 * cplx(a, -b);
      hat[grid.at(index(kx), index(ky))] = c;
      hat[grid.at(index(-kx), index(-ky))] = std::conj(c);
    }
  GridForm rho(grid, FormType::Form11, detail::inverse(grid, hat));
  for (auto& z : rho.v) z = cplx(0, z.real());
  return rho;
}

/// F(x,y) = 1/(a + cos 2πx) + 1/(a + sin 2πy) and the coefficient of
/// i∂∂̄F = (i/4)ΔF dz∧dz̄, both in closed form.
struct SmoothPrimitive {
  double a = 1.1;

  double F(double x, double y) const {
    const double tau = 2 * std::numbers::pi;
    return 1 / (a + std::cos(tau * x)) + 1 / (a + std::sin(tau * y));
  }
  double laplacian(double x, double y) const {
    const double tau = 2 * std::numbers::pi, t = tau * x, s = tau * y;
    double u = a + std::cos(t), w = a + std::sin(s);
    double fxx = tau * tau * (std::cos(t) / (u * u) + 2 * std::sin(t) * std::sin(t) / (u * u * u));
    double fyy = tau * tau * (std::sin(s) / (w * w) + 2 * std::cos(s) * std::cos(s) / (w * w * w));
    return fxx + fyy;
  }
};

struct ConvergenceRow {
  int N = 0;
  double rho_mean_removed = 0;
  IbpReport report;
  double primitive_error = 0;  // max|F − (F_exact − mean)| / max|F_exact − mean|
};

/// Samples ρ = i∂∂̄F_exact analytically, removes its discrete mean (aliasing
/// error), solves, and compares with the exact zero-mean primitive.
inline ConvergenceRow convergence_row(int n, const SmoothPrimitive& p = {}) {
  TorusGrid g(n);
  GridForm rho(g, FormType::Form11);
  GridFunction exact(g, FormType::Function);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double x = g.coord(i), y = g.coord(j);
      rho.v[g.at(i, j)] = cplx(0, 0.25 * p.laplacian(x, y));
      exact.v[g.at(i, j)] = p.F(x, y);
    }
  ConvergenceRow row;
  row.N = n;
  cplx m = rho.mean();
  row.rho_mean_removed = std::abs(m);
  for (auto& z : rho.v) z -= m;
  GridFunction F(g, FormType::Function);
  row.report = ibp_identity_check(rho, &F);
  cplx em = exact.mean();
  double err = 0, mag = 0;
  for (std::size_t k = 0; k < F.v.size(); ++k) {
    err = std::max(err, std::abs(F.v[k] - (exact.v[k] - em)));
    mag = std::max(mag, std::abs(exact.v[k] - em));
  }
  row.primitive_error = err / mag;
  return row;
}

struct RandomSummary {
  int N = 0;
  int count = 0;
  double max_solve_residual = 0;
  double max_ibp_residual = 0;
  double min_dirichlet_energy = 0;
  double max_imag_ratio = 0;
};

inline RandomSummary random_summary(int n, int count, std::uint64_t seed) {
  TorusGrid g(n);
  std::mt19937_64 rng(seed);
  RandomSummary s;
  s.N = n;
  s.count = count;
  s.min_dirichlet_energy = std::numeric_limits<double>::infinity();
  for (int t = 0; t < count; ++t) {
    IbpReport r = ibp_identity_check(random_band_limited_rho(g, rng));
    s.max_solve_residual = std::max(s.max_solve_residual, r.solve_residual);
    s.max_ibp_residual = std::max(s.max_ibp_residual, r.ibp_residual);
    s.min_dirichlet_energy = std::min(s.min_dirichlet_energy, r.dirichlet_energy);
    s.max_imag_ratio = std::max(s.max_imag_ratio, r.imag_ratio);
  }
  return s;
}

inline constexpr double kSolveTolerance = 1e-10;
inline constexpr double kIbpTolerance = 1e-8;

inline bool passes(const RandomSummary& s) {
  return s.max_solve_residual < kSolveTolerance && s.max_ibp_residual < kIbpTolerance && s.min_dirichlet_energy > 0 &&
         s.max_imag_ratio < 1e-12;
}

/// Resolutions for the convergence table: N/4, N/2, N (those ≥ 8 and even).
inline std::vector<int> table_resolutions(int n) {
  std::vector<int> out;
  for (int d : {4, 2, 1})
    if (n % d == 0 && n / d >= 8 && (n / d) % 2 == 0) out.push_back(n / d);
  return out;
}

inline std::string convergence_tsv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "N\trho_mean_removed\tsolve_residual\tibp_residual\tprimitive_error\tdirichlet_energy\n";
  os.precision(3);
  os << std::scientific;
  for (const auto& r : rows)
    os << r.N << '\t' << r.rho_mean_removed << '\t' << r.report.solve_residual << '\t' << r.report.ibp_residual << '\t'
       << r.primitive_error << '\t' << r.report.dirichlet_energy << '\n';
  return os.str();
}

}  // namespace abcml::torus
