#pragma once

// The abcml command line. run() takes the arguments after the program name and
// writes to the given streams, so it can be driven from tests.
//
// Exit codes: 0 success, 1 a genuine negative result (axiom violation, FAIL,
// undefined product), 2 usage or parse error.

#include "abcml/blowup.hpp"
#include "abcml/cbba_json.hpp"
#include "abcml/cohomology.hpp"
#include "abcml/expression.hpp"
#include "abcml/massey.hpp"
#include "abcml/p3_example.hpp"
#include "abcml/torus.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace abcml::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  bool no_banner = false;
  std::string model;
  std::string theory = "bc";
  std::string degree;
  std::string flavor = "abc";
  std::string alpha, beta, gamma;
  std::string config;
  bool table = false;
  std::string s1, s2;
  int n = 256;
  int samples = 20;
  std::uint64_t seed = 1;
};

/// Decimal digits from ABCML_PRECISION, default 10.
inline int precision_from_env() {
  const char* v = std::getenv("ABCML_PRECISION");
  if (!v || !*v) return 10;
  int d = 0;
  std::string s(v);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec != std::errc() || ptr != s.data() + s.size() || d < 0 || d > 1000)
    throw UsageError("ABCML_PRECISION must be an integer in [0, 1000], got '" + s + "'");
  return d;
}

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// "p,q" as a bidegree; a single integer k is returned as (k, -1).
inline Bidegree parse_degree(const std::string& text) {
  auto comma = text.find(',');
  auto num = [&](const std::string& s) {
    std::string t = trim(s);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || v < 0)
      throw UsageError("malformed degree '" + text + "' (expected p,q)");
    return v;
  };
  if (comma == std::string::npos) return {num(text), -1};
  return {num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

// --- cbba ---------------------------------------------------------------------

inline int cbba_check(const Options& o, std::ostream& out) {
  CbbaModel m = load_model(o.model);
  ValidationReport rep = validate_model(m);
  if (o.json) {
    json j{{"model", o.model}, {"dim", m.dim()}, {"ok", rep.ok()}, {"violations", json::array()}};
    for (const auto& v : rep.violations) j["violations"].push_back({{"axiom", v.axiom}, {"witness", v.witness}});
    out << j.dump(2) << "\n";
  } else {
    out << "model: " << o.model << " (dim " << m.dim() << ")\n";
    if (rep.ok()) out << "ok: all axioms hold\n";
    else out << "violations: " << rep.violations.size() << "\n";
    for (const auto& v : rep.violations) out << "  " << v.describe() << "\n";
  }
  return rep.ok() ? kOk : kNegative;
}

inline void print_invalid(const InvalidModel& e, std::ostream& err) {
  err << "error: model failed validation\n";
  for (const auto& v : e.report().violations) err << "  " << v.describe() << "\n";
}

inline int cbba_cohomology(const Options& o, std::ostream& out) {
  Theory t = parse_theory(o.theory);
  auto vm = ValidatedModel::validate(load_model(o.model));
  const CbbaModel& m = vm.model();
  std::vector<CohomologyGroup> groups;
  std::vector<std::string> labels;
  if (t == Theory::DeRham) {
    std::vector<int> ks;
    if (!o.degree.empty()) {
      Bidegree d = parse_degree(o.degree);
      ks.push_back(d.q < 0 ? d.p : d.total());
    } else {
      for (int k = 0; k <= m.top_total_degree(); ++k) ks.push_back(k);
    }
    for (int k : ks) {
      groups.push_back(de_rham(vm, k));
      labels.push_back(std::to_string(k));
    }
  } else {
    std::vector<Bidegree> ds;
    if (!o.degree.empty()) {
      Bidegree d = parse_degree(o.degree);
      if (d.q < 0) throw UsageError("--degree needs p,q for theory " + o.theory);
      ds.push_back(d);
    } else {
      ds = m.bidegrees();
    }
    for (auto d : ds) {
      groups.push_back(cohomology(vm, t, d));
      labels.push_back(to_string(d));
    }
  }
  if (o.json) {
    json j{{"model", o.model}, {"theory", o.theory}, {"groups", json::array()}};
    for (std::size_t k = 0; k < groups.size(); ++k) {
      json reps = json::array();
      for (const auto& r : groups[k].representatives()) reps.push_back(format_vector(m, r));
      j["groups"].push_back({{"degree", labels[k]}, {"dim", groups[k].dim()}, {"representatives", reps}});
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "theory: " << to_string(t) << "\n";
  out << "degree\tdim\trepresentatives\n";
  for (std::size_t k = 0; k < groups.size(); ++k) {
    std::vector<std::string> reps;
    for (const auto& r : groups[k].representatives()) reps.push_back(format_vector(m, r));
    out << labels[k] << '\t' << groups[k].dim() << '\t' << (reps.empty() ? "-" : join(reps, "; ")) << "\n";
  }
  return kOk;
}

inline int cbba_massey(const Options& o, std::ostream& out) {
  if (o.flavor != "abc" && o.flavor != "ordinary") throw UsageError("--flavor must be abc or ordinary");
  auto vm = ValidatedModel::validate(load_model(o.model));
  const CbbaModel& m = vm.model();
  Element a = parse_element(vm, o.alpha), b = parse_element(vm, o.beta), c = parse_element(vm, o.gamma);
  MasseyResult r = o.flavor == "abc" ? triple_abc_massey(vm, a, b, c) : triple_massey(vm, a, b, c);
  if (!is_defined(r)) {
    std::string msg = std::get<Undefined>(r).message();
    if (o.json) out << json{{"flavor", o.flavor}, {"defined", false}, {"reason", msg}}.dump(2) << "\n";
    else out << "flavor: " << o.flavor << "\n" << msg << "\n";
    return kNegative;
  }
  const MasseyCoset& mc = coset(r);
  const auto& tgt = mc.target();
  std::string where = to_string(tgt.theory()) + " " +
                      (tgt.bidegree() ? to_string(*tgt.bidegree()) : std::to_string(tgt.total_degree()));
  std::string rep = format_vector(m, mc.cocycle);
  if (o.json) {
    out << json{{"flavor", o.flavor},
                {"defined", true},
                {"target", where},
                {"target_dim", tgt.dim()},
                {"representative", rep},
                {"indeterminacy_dim", mc.indeterminacy.dim()},
                {"trivial", mc.is_trivial()}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "flavor: " << o.flavor << "\n"
      << "target: " << where << " (dim " << tgt.dim() << ")\n"
      << "representative: " << rep << "\n"
      << "indeterminacy dim: " << mc.indeterminacy.dim() << "\n"
      << "trivial: " << (mc.is_trivial() ? "yes" : "no") << "\n";
  return kOk;
}

// --- blowup -------------------------------------------------------------------

inline int blowup_build(const Options& o, std::ostream& out) {
  IntersectionRing r = build(load_config(o.config));
  if (o.table && !o.json) {
    out << table_tsv(r);
    return kOk;
  }
  bool pd = r.poincare_duality();
  if (o.json) {
    json j{{"dimension", r.dimension()}, {"rank", r.size()}, {"basis", json::array()}, {"c1", r.format(r.c1())},
           {"classes", json::object()}, {"centers", json::array()}, {"poincare_duality", pd}};
    for (const auto& b : r.basis()) j["basis"].push_back({{"name", b.name}, {"degree", b.degree}});
    for (const auto& n : r.registry_order()) j["classes"][n] = r.format(r.registered(n));
    for (const auto& c : r.centers())
      j["centers"].push_back({{"name", c.name},
                              {"kind", c.curve ? "curve" : "point"},
                              {"class", r.format(c.cls)},
                              {"normal_degree", to_string(c.normal_degree)}});
    if (o.table) {
      auto t = multiplication_table(r);
      json rows = json::object();
      for (std::size_t i = 0; i < t.labels.size(); ++i)
        for (std::size_t k = 0; k < t.labels.size(); ++k) rows[t.labels[i]][t.labels[k]] = r.format(t.entries[i][k]);
      j["table"] = rows;
    }
    out << j.dump(2) << "\n";
    return pd ? kOk : kNegative;
  }
  out << "complex dimension " << r.dimension() << ", rank " << r.size() << "\n";
  for (int k = 0; k <= r.dimension(); ++k) {
    std::vector<std::string> names;
    for (auto i : r.indices_of(k)) names.push_back(r.basis()[i].name);
    out << "H^{" << k << "," << k << "}: " << join(names, " ") << "\n";
  }
  out << "c1 = " << r.format(r.c1()) << "\n";
  for (const auto& n : r.registry_order()) out << n << " = " << r.format(r.registered(n)) << "\n";
  for (const auto& c : r.centers()) {
    out << "center " << c.name << ": " << (c.curve ? "curve" : "point") << ", class " << r.format(c.cls);
    if (c.curve) out << ", deg N = " << to_string(c.normal_degree);
    out << "\n";
  }
  out << "poincare duality: " << (pd ? "ok" : "FAILS") << "\n";
  return pd ? kOk : kNegative;
}

// --- blown-up P^3 -------------------------------------------------------------

inline int paper_verify(const Options& o, std::ostream& out) {
  IntersectionRing x = o.config.empty() ? build_paper_X() : build(load_config(o.config));
  std::vector<p3::Check> checks;
  try {
    checks = p3::verify(x);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("configuration does not describe the blown-up P^3: ") + e.what());
  }
  bool all = std::all_of(checks.begin(), checks.end(), [](const p3::Check& c) { return c.passed; });
  if (o.json) {
    json j{{"passed", all}, {"checks", json::array()}};
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    auto n = std::count_if(checks.begin(), checks.end(), [](const p3::Check& c) { return c.passed; });
    out << n << "/" << checks.size() << " checks passed\n";
  }
  return all ? kOk : kNegative;
}

inline int paper_massey(const Options& o, std::ostream& out) {
  int digits = precision_from_env();
  ProjectivePoint s1 = parse_point(o.s1), s2 = parse_point(o.s2);
  LogValue v = p3::massey_value(s1, s2);
  GaussianRational chi = cross_ratio(ProjectivePoint(GaussianRational(0)), ProjectivePoint::infinity(), s1, s2);
  if (o.json) {
    out << json{{"S1", s1.to_string()},
                {"S2", s2.to_string()},
                {"cross_ratio", to_string(chi)},
                {"value", v.symbolic()},
                {"decimal", v.decimal(digits)},
                {"invariant", v.abs_value().symbolic()}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "S1 = " << s1.to_string() << ", S2 = " << s2.to_string() << "\n"
      << "cross-ratio chi(0, inf, S1, S2) = " << to_string(chi) << "\n"
      << "massey value = " << v.symbolic() << " ≈ " << v.decimal(digits) << "\n"
      << "invariant |value| = " << v.abs_value().symbolic() << "\n";
  return kOk;
}

// --- torus --------------------------------------------------------------------

inline int torus_check(const Options& o, std::ostream& out) {
  torus::TorusGrid grid(o.n);
  if (o.samples < 1) throw UsageError("--samples must be positive");
  std::vector<torus::ConvergenceRow> rows;
  for (int n : torus::table_resolutions(grid.N)) rows.push_back(torus::convergence_row(n));
  torus::RandomSummary s = torus::random_summary(grid.N, o.samples, o.seed);
  bool ok = torus::passes(s);
  if (o.json) {
    json j{{"rows", json::array()}, {"random", json::object()}, {"passed", ok}};
    for (const auto& r : rows)
      j["rows"].push_back({{"N", r.N},
                           {"rho_mean_removed", r.rho_mean_removed},
                           {"solve_residual", r.report.solve_residual},
                           {"ibp_residual", r.report.ibp_residual},
                           {"primitive_error", r.primitive_error},
                           {"dirichlet_energy", r.report.dirichlet_energy}});
    j["random"] = {{"N", s.N},
                   {"samples", s.count},
                   {"seed", o.seed},
                   {"max_solve_residual", s.max_solve_residual},
                   {"max_ibp_residual", s.max_ibp_residual},
                   {"min_dirichlet_energy", s.min_dirichlet_energy},
                   {"max_imag_ratio", s.max_imag_ratio}};
    out << j.dump(2) << "\n";
    return ok ? kOk : kNegative;
  }
  out << torus::convergence_tsv(rows) << "\n";
  out << "random rho: N=" << s.N << " samples=" << s.count << " seed=" << o.seed << "\n"
      << "max_solve_residual\t" << sci(s.max_solve_residual) << "\n"
      << "max_ibp_residual\t" << sci(s.max_ibp_residual) << "\n"
      << "min_dirichlet_energy\t" << sci(s.min_dirichlet_energy) << "\n"
      << "max_imag_ratio\t" << sci(s.max_imag_ratio) << "\n"
      << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kNegative;
}

// --- dispatch -----------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Bott-Chern/Aeppli cohomology, Massey products and blow-up intersection rings", "abcml"};
  app.set_version_flag("--version", kVersion);
  app.add_flag("--json", o.json, "Structured JSON output");
  app.add_flag("--no-banner", o.no_banner, "Suppress the version banner");
  app.require_subcommand(1);

  auto* cbba = app.add_subcommand("cbba", "Finite CBBA models")->require_subcommand(1);
  auto* check = cbba->add_subcommand("check", "Validate the axioms of a model");
  check->add_option("model", o.model, "Model JSON")->required();
  auto* coh = cbba->add_subcommand("cohomology", "Dimensions and representatives");
  coh->add_option("model", o.model, "Model JSON")->required();
  coh->add_option("--theory", o.theory, "bc | a | dr | dol")->default_str("bc");
  coh->add_option("--degree", o.degree, "p,q (or k for dr)");
  auto* mas = cbba->add_subcommand("massey", "Triple Massey product coset");
  mas->add_option("model", o.model, "Model JSON")->required();
  mas->add_option("--flavor", o.flavor, "abc | ordinary")->default_str("abc");
  mas->add_option("--alpha", o.alpha)->required();
  mas->add_option("--beta", o.beta)->required();
  mas->add_option("--gamma", o.gamma)->required();

  auto* blow = app.add_subcommand("blowup", "Blow-up intersection rings")->require_subcommand(1);
  auto* bbuild = blow->add_subcommand("build", "Build a ring from a configuration");
  bbuild->add_option("--config", o.config, "Configuration JSON")->required();
  bbuild->add_flag("--table", o.table, "H^{1,1} x H^{1,1} multiplication table as TSV");

  auto* paper = app.add_subcommand("paper", "The blown-up P^3 example")->require_subcommand(1);
  auto* verify = paper->add_subcommand("verify", "Run the reproduction checks");
  verify->add_option("--config", o.config, "Configuration JSON (default: built-in)");
  auto* pm = paper->add_subcommand("massey", "Massey value for given S1, S2");
  pm->add_option("--s1", o.s1, "Gaussian rational")->required();
  pm->add_option("--s2", o.s2, "Gaussian rational")->required();

  auto* tor = app.add_subcommand("torus", "Flat torus identities")->require_subcommand(1);
  auto* tcheck = tor->add_subcommand("check", "Residual table");
  tcheck->add_option("--n", o.n, "Grid resolution (even, >= 8)")->default_val(256);
  tcheck->add_option("--samples", o.samples, "Random rho count")->default_val(20);
  tcheck->add_option("--seed", o.seed, "RNG seed")->default_val(1);

  for (auto* sub : {cbba, blow, paper, tor}) sub->fallthrough();
  for (auto* sub : {check, coh, mas, bbuild, verify, pm, tcheck}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!o.no_banner && !o.json) out << "abcml " << kVersion << "\n";
    if (*check) return cbba_check(o, out);
    if (*coh) return cbba_cohomology(o, out);
    if (*mas) return cbba_massey(o, out);
    if (*bbuild) return blowup_build(o, out);
    if (*verify) return paper_verify(o, out);
    if (*pm) return paper_massey(o, out);
    if (*tcheck) return torus_check(o, out);
  } catch (const InvalidModel& e) {
    print_invalid(e, err);
    return kNegative;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}

}  // namespace abcml::cli
