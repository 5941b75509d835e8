#pragma once

#include "wilsonpar/expand.hpp"
#include "wilsonpar/lorentz.hpp"
#include "wilsonpar/rational.hpp"
#include "wilsonpar/spectral.hpp"
#include "wilsonpar/verify.hpp"
#include "wilsonpar/wilson.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wilsonpar {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json complex_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

/// A polynomial in B as text: "p/q" when constant, else e.g. "1/4 + 1/2*B".
inline std::string b_polynomial_text(const RationalPolynomial& c) {
  if (c.degree() <= 0) return to_string(c.coeff(0));
  std::string out;
  for (std::size_t k = 0; k < c.coefficients().size(); ++k) {
    const Rational& v = c.coefficients()[k];
    if (v == 0) continue;
    const bool negative = v < 0;
    const Rational mag = negative ? Rational(-v) : v;
    std::string term;
    if (k == 0) term = to_string(mag);
    else {
      if (mag != 1) term = to_string(mag) + "*";
      term += k == 1 ? "B" : "B^" + std::to_string(k);
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

inline Json coefficients_json(const BParamPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(b_polynomial_text(c));
  return a;
}

inline Json family_b_json(const WilsonFamily& f) {
  if (auto t = f.b_text()) return *t;
  return nullptr;
}

inline Json to_json(const MonicTable& t) {
  Json entries = Json::array();
  for (std::size_t n = 0; n < t.polys.size(); ++n) entries.push_back({{"n", n}, {"coeffs", coefficients_json(t.polys[n])}});
  return {{"case", case_name(t.family.kind())}, {"B", family_b_json(t.family)}, {"entries", entries}};
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * level), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << '{' << nl;
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << ',' << nl;
      first = false;
      os << pad << Json(key).dump() << colon;
      write_json(os, value, indent, level + 1);
    }
    os << nl << close << '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    os << '[' << nl;
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) os << ',' << nl;
      os << pad;
      write_json(os, j[k], indent, level + 1);
    }
    os << nl << close << ']';
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    os << (std::isfinite(v) ? format_double(v) : std::string("null"));
  } else {
    os << j.dump();
  }
}

}  // namespace detail

/// JSON text with every double at 17 significant digits; non-finite values
/// become null.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  return os.str();
}

inline std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::string to_csv(const MonicTable& t) {
  std::ostringstream os;
  const std::string b = t.family.b_text().value_or("");
  os << "case,B,n,power,coeff\n";
  for (std::size_t n = 0; n < t.polys.size(); ++n)
    for (std::size_t k = 0; k < t.polys[n].coefficients().size(); ++k)
      os << case_name(t.family.kind()) << ',' << csv_field(b) << ',' << n << ',' << k << ','
         << csv_field(b_polynomial_text(t.polys[n].coefficients()[k])) << '\n';
  return os.str();
}

inline Json to_json(const EigenpairRecord& r) {
  Json j{{"case", case_name(r.kind)}, {"n", r.n}, {"ell1", r.ell1}, {"alpha", rational_json(r.alpha)}};
  j["B"] = r.b ? Json(to_string(*r.b)) : Json(nullptr);
  j["prefactor"] = r.prefactor();
  j["poly"] = r.poly ? coefficients_json(*r.poly) : Json(nullptr);
  j["g"] = r.g ? coefficients_json(*r.g) : Json(nullptr);
  if (r.rational_g()) j["g_closed_form"] = "1/(z^2-1/4)";
  return j;
}

inline std::string to_csv(const EigenpairRecord& r) {
  std::ostringstream os;
  os << "case,n,ell1,alpha,part,power,coeff\n";
  auto rows = [&](const char* part, const std::optional<BParamPolynomial>& p) {
    if (!p) return;
    for (std::size_t k = 0; k < p->coefficients().size(); ++k)
      os << case_name(r.kind) << ',' << r.n << ',' << r.ell1 << ',' << to_string(r.alpha) << ',' << part << ',' << k << ','
         << csv_field(b_polynomial_text(p->coefficients()[k])) << '\n';
  };
  rows("poly", r.poly);
  rows("g", r.g);
  return os.str();
}

inline Json to_json(const CoefficientTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back({{"n", e.n}, {"re", e.c.real()}, {"im", e.c.imag()}, {"err", e.error}});
  return {{"case", case_name(t.kind)}, {"B", t.b ? Json(*t.b) : Json(nullptr)}, {"entries", entries}};
}

inline std::string to_csv(const CoefficientTable& t) {
  std::ostringstream os;
  os << "n,re,im,err\n";
  for (const auto& e : t.entries)
    os << e.n << ',' << format_double(e.c.real()) << ',' << format_double(e.c.imag()) << ',' << format_double(e.error) << '\n';
  return os.str();
}

inline Json to_json(const ReconstructionResult& r) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < r.residual.size(); ++k) rows.push_back({{"N", k}, {"residual", r.residual[k]}, {"err", r.error[k]}});
  return {{"entries", rows}, {"coefficients", to_json(r.coefficients)}};
}

inline std::string to_csv(const ReconstructionResult& r) {
  std::ostringstream os;
  os << "N,residual,err\n";
  for (std::size_t k = 0; k < r.residual.size(); ++k) os << k << ',' << format_double(r.residual[k]) << ',' << format_double(r.error[k]) << '\n';
  return os.str();
}

/// One row of a residual table: the grid point (z or W), the residual and
/// its size relative to the sum of term magnitudes.
struct ResidualRow {
  double point = 0.0;
  Complex value;
  double relative = 0.0;
};

inline Json residual_json(const std::string& variable, const std::vector<ResidualRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back({{variable, r.point}, {"real", r.value.real()}, {"imag", r.value.imag()}, {"abs", std::abs(r.value)}, {"relative", r.relative}});
  return {{"variable", variable}, {"rows", a}};
}

inline std::string residual_csv(const std::string& variable, const std::vector<ResidualRow>& rows) {
  std::ostringstream os;
  os << variable << ",real,imag,abs,relative\n";
  for (const auto& r : rows)
    os << format_double(r.point) << ',' << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
       << format_double(std::abs(r.value)) << ',' << format_double(r.relative) << '\n';
  return os.str();
}

inline Json to_json(const SecondSolution& s) {
  const auto cas = casoratian(s);
  Json rows = Json::array();
  for (std::size_t k = 0; k < s.g.values.size(); ++k) {
    Json row{{"z", s.g.point(k)}, {"g", s.g.values[k]}, {"u", s.u.values[k]}, {"h", s.h.values[k]}};
    row["casoratian"] = k < cas.size() ? Json(cas[k]) : Json(nullptr);
    rows.push_back(row);
  }
  return {{"n", s.n}, {"rows", rows}};
}

inline std::string to_csv(const SecondSolution& s) {
  const auto cas = casoratian(s);
  std::ostringstream os;
  os << "z,g,u,h,casoratian\n";
  for (std::size_t k = 0; k < s.g.values.size(); ++k)
    os << format_double(s.g.point(k)) << ',' << format_double(s.g.values[k]) << ',' << format_double(s.u.values[k]) << ','
       << format_double(s.h.values[k]) << ',' << (k < cas.size() ? format_double(cas[k]) : "") << '\n';
  return os.str();
}

inline Json audit_json(const LorentzRep& rep, const std::vector<AuditEntry>& audit, const N0Extraction& n0) {
  Json rows = Json::array();
  for (const auto& e : audit) rows.push_back({{"id", e.id}, {"group", e.group}, {"residual", e.residual}});
  rows.push_back({{"id", "N0-literal"}, {"group", "8"}, {"residual", n0.literal_residual}});
  rows.push_back({{"id", "N0-covariant"}, {"group", "8"}, {"residual", n0.covariant_residual}});
  rows.push_back({{"id", "N2-trace"}, {"group", "7"}, {"residual", n0.n2_trace}});
  rows.push_back({{"id", "N2-symmetry"}, {"group", "7"}, {"residual", n0.n2_asymmetry}});
  const auto d = derived_operators(rep);
  const auto b = scalar_part(d.B);
  const auto m = scalar_part(d.m);
  return {{"rep", rep.label},
          {"dim", rep.dim},
          {"relations", rows},
          {"casimirs", {{"B", complex_json(b.value)}, {"B_deviation", b.deviation}, {"m", complex_json(m.value)}, {"m_deviation", m.deviation}}}};
}

inline std::string audit_csv(const std::vector<AuditEntry>& audit, const N0Extraction& n0) {
  std::ostringstream os;
  os << "id,group,residual\n";
  for (const auto& e : audit) os << e.id << ',' << e.group << ',' << format_double(e.residual) << '\n';
  os << "N0-literal,8," << format_double(n0.literal_residual) << '\n';
  os << "N0-covariant,8," << format_double(n0.covariant_residual) << '\n';
  os << "N2-trace,7," << format_double(n0.n2_trace) << '\n';
  os << "N2-symmetry,7," << format_double(n0.n2_asymmetry) << '\n';
  return os.str();
}

inline Json to_json(const ScanReport& r) {
  return {{"B", r.b},        {"M", r.m},
          {"n", r.n},        {"degree", r.degree},
          {"ell1_sq", r.ell1_sq}, {"ell1_sq_imag", r.ell1_sq_imag},
          {"residual", r.residual}, {"iterations", r.iterations},
          {"coefficients", r.coefficients}};
}

inline std::string to_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "B,M,n,degree,ell1_sq,ell1_sq_imag,residual,iterations\n";
  os << format_double(r.b) << ',' << format_double(r.m) << ',' << r.n << ',' << r.degree << ',' << format_double(r.ell1_sq) << ','
     << format_double(r.ell1_sq_imag) << ',' << format_double(r.residual) << ',' << r.iterations << '\n';
  return os.str();
}

inline Json to_json(const Check& c) {
  return {{"id", c.id},
          {"anchor", c.anchor},
          {"criterion", c.criterion},
          {"status", status_name(c.status)},
          {"measured", c.measured},
          {"threshold", c.threshold},
          {"bound", c.lower_bound ? "lower" : "upper"},
          {"note", c.note}};
}

inline Json trace_json(const std::vector<TraceRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back({{"label", r.label}, {"checks", r.checks}, {"status", r.status}});
  return a;
}

/// Verification report: checks in suite order, counts, and the coverage table.
inline Json report_json(const std::string& suite, const std::vector<Check>& checks, bool with_trace) {
  Json list = Json::array();
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& c : checks) {
    list.push_back(to_json(c));
    (c.status == Status::Pass ? pass : c.status == Status::Fail ? fail : skip) += 1;
  }
  Json j{{"suite", suite}, {"summary", {{"pass", pass}, {"fail", fail}, {"skip", skip}}}, {"checks", list}};
  if (with_trace) j["traceability"] = trace_json(traceability());
  return j;
}

inline std::string report_csv(const std::vector<Check>& checks) {
  std::ostringstream os;
  os << "id,anchor,criterion,status,measured,threshold,bound,note\n";
  for (const auto& c : checks)
    os << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << c.criterion << ',' << status_name(c.status) << ','
       << format_double(c.measured) << ',' << format_double(c.threshold) << ',' << (c.lower_bound ? "lower" : "upper") << ','
       << csv_field(c.note) << '\n';
  return os.str();
}

inline std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream os;
  os << "label,status,checks\n";
  for (const auto& r : rows) {
    std::string ids;
    for (const auto& id : r.checks) ids += (ids.empty() ? "" : ";") + id;
    os << csv_field(r.label) << ',' << csv_field(r.status) << ',' << csv_field(ids) << '\n';
  }
  return os.str();
}

}  // namespace wilsonpar
