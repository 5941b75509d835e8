#pragma once

#include "wilsonpar.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wilsonpar::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Error in user-supplied values that the parser cannot catch.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything the subcommands read. Options left unset take a per-command
/// default, listed in the help text.
struct RunConfig {
  std::string format = "json";
  std::string out;
  std::string kind = "A";
  std::optional<unsigned> n;
  std::optional<std::string> b;
  double m = 0.0;
  std::optional<double> ell1;
  std::string form = "master";
  std::optional<double> start;
  double step = 0.5;
  unsigned count = 10;
  double z0 = 2.0;
  unsigned length = 12;
  std::string route = "hypergeometric";
  std::string prefactor = "rederived";
  std::string method = "formula";
  std::string rep = "vector";
  std::optional<unsigned> degree;
  double grid_start = 0.5;
  double grid_step = 0.5;
  unsigned grid_count = 0;
  std::string suite = "all";
  bool extended = false;
  double tol_scale = 1.0;
  QuadratureConfig quadrature;
};

struct Output {
  std::string text;
  bool failed = false;
};

namespace detail {

inline Case parse_case(const std::string& s) { return s == "A" ? Case::A : Case::B; }

inline Rational parse_b(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError("--B: " + std::string(e.what()));
  }
}

/// Family for commands that allow a symbolic B (poly, eigen).
inline WilsonFamily family_or_symbolic(const RunConfig& c) {
  if (parse_case(c.kind) == Case::A) return WilsonFamily::case_a();
  if (!c.b) return WilsonFamily::case_b_symbolic();
  return WilsonFamily::case_b(parse_b(*c.b));
}

/// Family with numeric B; case B defaults to B = 3/2.
inline WilsonFamily numeric_family(const RunConfig& c) {
  if (parse_case(c.kind) == Case::A) return WilsonFamily::case_a();
  return WilsonFamily::case_b(parse_b(c.b.value_or("3/2")));
}

inline std::string render(const RunConfig& c, const Json& j, const std::string& csv) {
  return c.format == "csv" ? csv : dump_json(j) + "\n";
}

inline PrefactorSource prefactor_source(const RunConfig& c) {
  return c.prefactor == "printed" ? PrefactorSource::AsPrinted : PrefactorSource::Rederived;
}

inline Output poly(const RunConfig& c) {
  const WilsonFamily family = family_or_symbolic(c);
  const unsigned n_max = c.n.value_or(5);
  MonicTable table{family, {}};
  if (c.route == "hypergeometric") {
    for (unsigned k = 0; k <= n_max; ++k) table.polys.push_back(monic_from_hypergeometric(family, k));
  } else {
    table = monic_from_recurrence(family, n_max, c.route == "printed" ? RecurrenceForm::AsPrinted : RecurrenceForm::Corrected);
  }
  return {render(c, to_json(table), to_csv(table))};
}

inline EigenpairRecord eigen_record(const WilsonFamily& f, unsigned n) {
  if (f.kind() == Case::A) return eigenfunction_case_a(n);
  if (f.is_symbolic()) return eigenfunction_case_b(n);
  return eigenfunction_case_b(n, f.exact_b());
}

inline Output eigen(const RunConfig& c) {
  const auto rec = eigen_record(family_or_symbolic(c), c.n.value_or(2));
  return {render(c, to_json(rec), to_csv(rec))};
}

inline Output residual(const RunConfig& c) {
  const WilsonFamily family = numeric_family(c);
  const unsigned n = c.n.value_or(2);
  const auto rec = eigen_record(family, n);
  const double ell1 = c.ell1.value_or(static_cast<double>(rec.ell1));
  const double b = family.b();
  const bool on_z = c.form == "g";
  const double start = c.start.value_or(on_z ? 1.3 : 0.3);
  std::vector<ResidualRow> rows;
  if (on_z) {
    std::function<double(double)> g;
    if (family.kind() == Case::A) g = case_a_g(n);
    else g = [p = substitute_b(*rec.g, b)](double z) { return p(z * z); };
    for (unsigned k = 0; k < c.count; ++k) {
      const double z = start + k * c.step;
      const auto r = family.kind() == Case::A ? residual_g_case_a<double>(g, ell1, z) : residual_g_case_b<double>(g, b, ell1, z);
      rows.push_back({z, Complex(r.value, 0.0), r.relative()});
    }
  } else {
    const Eigenfunction f(rec);
    for (unsigned k = 0; k < c.count; ++k) {
      const double w = start + k * c.step;
      Residual<Complex> r;
      if (c.form == "master") r = residual_master(f, b, c.m, ell1, w);
      else if (family.kind() == Case::A) r = residual_reduced_case_a(f, ell1, w);
      else r = residual_reduced_case_b(f, b, ell1, w);
      rows.push_back({w, r.value, r.relative()});
    }
  }
  const std::string var = on_z ? "z" : "W";
  return {render(c, residual_json(var, rows), residual_csv(var, rows))};
}

inline Output second(const RunConfig& c) {
  const auto s = second_solution(c.n.value_or(2), c.z0, c.length);
  return {render(c, to_json(s), to_csv(s))};
}

inline Output coeffs(const RunConfig& c) {
  const WilsonFamily family = numeric_family(c);
  const unsigned n_max = c.n.value_or(8);
  CoefficientTable t;
  if (c.method == "projection") {
    const ExpansionTarget target = parity_target(family.kind());
    t = CoefficientTable{family.kind(), family.kind() == Case::B ? std::optional<double>(family.b()) : std::nullopt, {}};
    if (target.offset == 1) t.entries.push_back({0, Complex(0.0, -1.0), 0.0});
    if (n_max >= target.offset) {
      const auto p = project(target.f, target.envelope, family, n_max - target.offset, c.quadrature);
      for (const auto& e : p.entries) t.entries.push_back({e.n + target.offset, target.sign(e.n) * e.c, e.error});
    }
  } else {
    t = parity_coefficients(family, n_max, c.quadrature, prefactor_source(c));
  }
  return {render(c, to_json(t), to_csv(t))};
}

inline Output reconstruct(const RunConfig& c) {
  const auto r = reconstruction_residual(numeric_family(c), c.n.value_or(8), c.quadrature, prefactor_source(c));
  return {render(c, to_json(r), to_csv(r))};
}

inline LorentzRep parse_rep(const std::string& s) {
  if (s == "vector") return build_vector_rep();
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--rep must be 'vector' or 'j1,j2'");
  try {
    return build_spin_rep(Spin::parse(s.substr(0, comma)), Spin::parse(s.substr(comma + 1)));
  } catch (const InvalidSpin& e) {
    throw UsageError(std::string("--rep: ") + e.what());
  }
}

inline Output lorentz(const RunConfig& c) {
  const LorentzRep rep = parse_rep(c.rep);
  const auto audit = algebra_audit(rep);
  const auto n0 = n0_extraction(rep);
  return {render(c, audit_json(rep, audit, n0), audit_csv(audit, n0))};
}

inline Output scan(const RunConfig& c) {
  const unsigned n = c.n.value_or(2);
  ScanOptions opts;
  for (unsigned k = 0; k < c.grid_count; ++k) opts.grid.push_back(c.grid_start + k * c.grid_step);
  const double b = to_double(parse_b(c.b.value_or("3/2")));
  const auto r = conjecture_scan(b, c.m, n, c.degree.value_or(n + 1), opts);
  return {render(c, to_json(r), to_csv(r))};
}

inline Output verify(const RunConfig& c) {
  if (c.suite != "all" && std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
    throw UsageError("unknown suite '" + c.suite + "'");
  VerifyOptions opts;
  opts.tol_scale = c.tol_scale;
  opts.extended = c.extended;
  opts.quadrature = c.quadrature;
  const auto checks = run_verification(c.suite, opts);
  return {render(c, report_json(c.suite, checks, c.suite == "all"), report_csv(checks)), any_failed(checks)};
}

inline Output trace(const RunConfig& c) {
  const auto rows = traceability();
  return {render(c, trace_json(rows), trace_csv(rows))};
}

/// --out resolved against WILSONPAR_OUT_DIR when relative; with no --out the
/// directory, if set, receives <command>.<format>. Empty means stdout.
inline std::filesystem::path destination(const RunConfig& c, const std::string& command) {
  const char* dir = std::getenv("WILSONPAR_OUT_DIR");
  const bool has_dir = dir && *dir;
  if (!c.out.empty()) {
    std::filesystem::path p(c.out);
    return has_dir && p.is_relative() ? std::filesystem::path(dir) / p : p;
  }
  if (has_dir) return std::filesystem::path(dir) / (command + "." + c.format);
  return {};
}

}  // namespace detail

/// Runs one command line; data goes to `out` or the output file, diagnostics
/// to `err`. Returns 0, 1 (computation failure or failed check) or 2 (usage).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Monic Wilson families, difference-equation eigenfunctions, parity expansions and Lorentz algebra audits",
               "wilsonpar"};
  app.set_config("--config", "", "Flat key=value file; keys are long option names, flags on the command line win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  // keep "rep=1/2,1/2" a single value; brackets still make an array
  app.get_config_formatter_base()->arrayDelimiter(';');
  app.require_subcommand(1);

  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", c.out, "Output file (default: stdout, or $WILSONPAR_OUT_DIR/<command>.<format>)");
  app.add_option("--case", c.kind, "Family")->check(CLI::IsMember({"A", "B"}))->capture_default_str();
  app.add_option("--n", c.n, "Degree or index (poly 5, eigen 2, residual 2, second-solution 2, coeffs 8, reconstruct 8, scan 2)");
  app.add_option("--B", c.b, "B as p/q or decimal (poly/eigen: symbolic when absent; others 3/2)");
  app.add_option("--M", c.m, "M in the master equation (residual, scan)")->capture_default_str();
  app.add_option("--ell1", c.ell1, "ell1 for residual (default 2n+1)");
  app.add_option("--form", c.form, "Residual equation")->check(CLI::IsMember({"master", "reduced", "g"}))->capture_default_str();
  app.add_option("--start", c.start, "First residual grid point (W: 0.3, z: 1.3)");
  app.add_option("--step", c.step, "Residual grid step")->capture_default_str();
  app.add_option("--count", c.count, "Residual grid size")->capture_default_str();
  app.add_option("--z0", c.z0, "Second-solution anchor")->capture_default_str();
  app.add_option("--length", c.length, "Second-solution lattice length")->capture_default_str();
  app.add_option("--route", c.route, "poly construction")
      ->check(CLI::IsMember({"hypergeometric", "recurrence", "printed"}))
      ->capture_default_str();
  app.add_option("--prefactor", c.prefactor, "Coefficient prefactor")
      ->check(CLI::IsMember({"rederived", "printed"}))
      ->capture_default_str();
  app.add_option("--method", c.method, "coeffs route")->check(CLI::IsMember({"formula", "projection"}))->capture_default_str();
  app.add_option("--rep", c.rep, "vector or j1,j2")->capture_default_str();
  app.add_option("--degree", c.degree, "Scan ansatz degree (default n+1)");
  app.add_option("--grid-start", c.grid_start, "Scan W grid start")->capture_default_str();
  app.add_option("--grid-step", c.grid_step, "Scan W grid step")->capture_default_str();
  app.add_option("--grid-count", c.grid_count, "Scan W grid size (0: 0.5..10 in steps of 0.5)")->capture_default_str();
  app.add_option("--suite", c.suite, "Verification suite or 'all'")->capture_default_str();
  app.add_flag("--extended", c.extended, "Lift the verification degree caps");
  app.add_option("--tol-scale", c.tol_scale, "Multiplier on upper-bound thresholds")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--rel-tol", c.quadrature.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  app.add_option("--abs-tol", c.quadrature.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
  app.add_option("--panel-order", c.quadrature.panel_order, "Gauss-Kronrod order")
      ->check(CLI::IsMember({15u, 21u, 31u, 41u, 51u, 61u}))
      ->capture_default_str();
  app.add_option("--max-panels", c.quadrature.max_panels, "Cap on unit panels")->capture_default_str();
  app.add_option("--x-max", c.quadrature.x_max, "Fixed quadrature cutoff");

  using Command = Output (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"poly", "Monic polynomials P_0..P_n", detail::poly},
      {"eigen", "Eigenpair f_n, g_n with ell1 = 2n+1", detail::eigen},
      {"residual", "Difference-equation residuals on a grid", detail::residual},
      {"second-solution", "Second solution of the case-A g equation", detail::second},
      {"coeffs", "Parity expansion coefficients", detail::coeffs},
      {"reconstruct", "Weighted residual of truncated parity expansions", detail::reconstruct},
      {"lorentz", "Operator-algebra audit in one representation", detail::lorentz},
      {"scan", "Least-squares eigen-fit of the master equation", detail::scan},
      {"verify", "Run verification suites", detail::verify},
      {"trace", "Formula-to-check coverage table", detail::trace},
  };
  for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<const char*> argv{"wilsonpar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  std::string command;
  Command fn = nullptr;
  for (const auto& [name, help, f] : commands)
    if (app.got_subcommand(name)) command = name, fn = f;

  Output result;
  try {
    result = fn(c);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << command << ": " << e.what() << "\n";
    return exit_failure;
  }

  const auto path = detail::destination(c, command);
  if (path.empty()) {
    out << result.text;
  } else {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << result.text)) {
      err << "error: cannot write " << path.string() << "\n";
      return exit_failure;
    }
  }
  return result.failed ? exit_failure : exit_ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace wilsonpar::cli
