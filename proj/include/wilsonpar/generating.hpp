#pragma once

#include "wilsonpar/hypergeometric.hpp"
#include "wilsonpar/wilson.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace wilsonpar {

/// Which generating function. Products pair the 2F1 upper parameters either
/// as (a, b) with (c, d) or as (a, c) with (b, d); Quartic is the single 4F3
/// in 4t/(1+t)^2.
enum class GeneratingForm { ProductABCD, ProductACBD, Quartic };

/// AsPrinted keeps the published coefficients. Corrected differs only for
/// case A: ProductABCD takes lower parameter 3 in its second 2F1, and Quartic
/// halves the left-hand coefficients.
enum class IdentityVariant { AsPrinted, Corrected };

struct GeneratingIdentity {
  Case kind = Case::A;
  GeneratingForm form = GeneratingForm::ProductABCD;
  IdentityVariant variant = IdentityVariant::AsPrinted;

  std::string id() const {
    std::string s = kind == Case::A ? "A-" : "B-";
    s += form == GeneratingForm::ProductABCD ? "product-ab-cd" : form == GeneratingForm::ProductACBD ? "product-ac-bd" : "quartic";
    return s + (variant == IdentityVariant::AsPrinted ? "" : "-corrected");
  }
};

/// The six published identities in order: three for case A, three for case B.
inline std::vector<GeneratingIdentity> published_identities(IdentityVariant v = IdentityVariant::AsPrinted) {
  std::vector<GeneratingIdentity> out;
  for (Case k : {Case::A, Case::B})
    for (auto f : {GeneratingForm::ProductABCD, GeneratingForm::ProductACBD, GeneratingForm::Quartic})
      out.push_back({k, f, v});
  return out;
}

struct GeneratingReport {
  std::string identity;
  Complex lhs;
  Complex rhs;
  double difference = 0.0;
  /// Estimated size of the omitted terms n > N of the left-hand sum.
  double truncation_bound = 0.0;
  /// Rounding allowance on the left-hand partial sum.
  double lhs_rounding = 0.0;
  /// Error bound of the hypergeometric evaluation on the right.
  double rhs_error = 0.0;
  double tol = 0.0;
  bool passed = false;
};

namespace detail {

/// Coefficient of P_n(x^2) t^n on the left-hand side; d_n is (1-r)_n (1+r)_n
/// for case B and unused for case A.
inline double generating_lhs_coefficient(const GeneratingIdentity& id, unsigned n, double d_n, double sinc) {
  const auto f = [](unsigned k) { return factorial(k); };
  if (id.kind == Case::A) {
    Rational c;
    switch (id.form) {
      case GeneratingForm::ProductABCD: c = 2 * f(2 * n + 2) / (f(n) * f(n) * f(n + 2) * f(n + 2)); break;
      case GeneratingForm::ProductACBD: c = f(2 * n + 2) / (f(n) * f(n + 1) * f(n + 1) * f(n + 2)); break;
      case GeneratingForm::Quartic:
        c = f(2 * n + 2) / (f(n) * f(n) * f(n + 1) * f(n + 1));
        if (id.variant == IdentityVariant::Corrected) c /= 2;
        break;
    }
    return to_double(c);
  }
  if (id.form == GeneratingForm::ProductABCD) return to_double(f(2 * n) / ipow(f(n), 4));
  // Gamma(n+1-r) Gamma(n+1+r) = (1-r)_n (1+r)_n pi r / sin(pi r)
  return to_double(f(2 * n) / (f(n) * f(n))) * sinc / d_n;
}

inline void accumulate_product(SeriesResult& acc, const SeriesResult& s) {
  const double e = std::abs(acc.value) * s.error_bound + std::abs(s.value) * acc.error_bound + acc.error_bound * s.error_bound;
  acc.value *= s.value;
  acc.error_bound = e;
}

}  // namespace detail

/// Compares sum_{n<=N} k_n P_n(x^2) t^n with the closed form at (x, t).
///
/// k_n is formed in exact arithmetic and converted once; P_n(x^2) comes from
/// the recurrence in double precision. The truncation estimate sums the
/// terms N+1..2N+1 (doubled) and adds a geometric remainder from the last
/// observed term ratio. Passes iff |lhs - rhs| <= tol + truncation + both
/// rounding allowances.
inline GeneratingReport generating_function_check(const WilsonFamily& family, const GeneratingIdentity& id, double x,
                                                  double t, unsigned N, double tol = 1e-10) {
  if (std::abs(t) > 0.3) throw std::invalid_argument("generating_function_check needs |t| <= 0.3");
  if (family.kind() != id.kind) throw std::invalid_argument("identity and family disagree on the case");
  double r = 0.0;
  double sinc = 1.0;
  if (family.kind() == Case::B) {
    if (family.is_symbolic()) throw std::invalid_argument("generating_function_check needs a numeric B");
    family.require_nondegenerate("generating_function_check");
    r = family.root();
    sinc = std::sin(M_PI * r) / (M_PI * r);
  }

  const unsigned n_ext = 2 * N + 1;
  const MonicEvaluator ev(family, n_ext);
  const std::vector<double> p = ev.values(x * x);
  const double b = family.kind() == Case::B ? family.b() : 0.0;
  std::vector<double> term(n_ext + 1);
  double d_n = 1.0;
  double tn = 1.0;
  for (unsigned n = 0; n <= n_ext; ++n) {
    if (n > 0) {
      d_n *= (static_cast<double>(n - 1) * (n + 1) - b);
      tn *= t;
    }
    term[n] = detail::generating_lhs_coefficient(id, n, d_n, sinc) * p[n] * tn;
  }

  GeneratingReport rep;
  rep.identity = id.id();
  rep.tol = tol;
  double lhs = 0.0;
  double l1 = 0.0;
  for (unsigned n = 0; n <= N; ++n) {
    lhs += term[n];
    l1 += std::abs(term[n]);
  }
  rep.lhs = lhs;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  rep.lhs_rounding = 4.0 * eps * (N + 2) * l1;

  double omitted = 0.0;
  for (unsigned n = N + 1; n <= n_ext; ++n) omitted += std::abs(term[n]);
  double rho = 0.0;
  for (unsigned n = n_ext - 3; n < n_ext; ++n)
    if (term[n] != 0.0) rho = std::max(rho, std::abs(term[n + 1] / term[n]));
  rho = std::min(1.1 * rho, 1.0);
  const double remainder = rho < 1.0 ? std::abs(term[n_ext]) * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
  rep.truncation_bound = 2.0 * omitted + remainder;

  const Complex ix(0.0, x);
  const Complex mt(-t, 0.0);
  const Complex half(0.5, 0.0);
  SeriesResult rhs{Complex(1.0), 0.0, 0};
  if (id.kind == Case::A) {
    switch (id.form) {
      case GeneratingForm::ProductABCD: {
        const double lower = id.variant == IdentityVariant::Corrected ? 3.0 : 1.0;
        detail::accumulate_product(rhs, hyp_2f1_series(half + ix, half + ix, 1.0, mt));
        detail::accumulate_product(rhs, hyp_2f1_series(1.5 - ix, 1.5 - ix, lower, mt));
        break;
      }
      case GeneratingForm::ProductACBD:
        detail::accumulate_product(rhs, hyp_2f1_series(half + ix, 1.5 + ix, 2.0, mt));
        detail::accumulate_product(rhs, hyp_2f1_series(half - ix, 1.5 - ix, 2.0, mt));
        break;
      case GeneratingForm::Quartic: {
        const Complex num[] = {1.5, 2.0, half + ix, half - ix};
        const Complex den[] = {1.0, 2.0, 2.0};
        detail::accumulate_product(rhs, hyp_pfq_series(num, den, 4.0 * t / ((1.0 + t) * (1.0 + t))));
        detail::accumulate_product(rhs, SeriesResult{1.0 / std::pow(1.0 + t, 3), 0.0, 0});
        break;
      }
    }
  } else {
    switch (id.form) {
      case GeneratingForm::ProductABCD:
        detail::accumulate_product(rhs, hyp_2f1_series(half + ix, half + ix, 1.0, mt));
        detail::accumulate_product(rhs, hyp_2f1_series(0.5 - r - ix, 0.5 + r - ix, 1.0, mt));
        break;
      case GeneratingForm::ProductACBD:
        detail::accumulate_product(rhs, hyp_2f1_series(half + ix, 0.5 - r + ix, 1.0 - r, mt));
        detail::accumulate_product(rhs, hyp_2f1_series(half - ix, 0.5 + r - ix, 1.0 + r, mt));
        detail::accumulate_product(rhs, SeriesResult{sinc, 0.0, 0});
        break;
      case GeneratingForm::Quartic: {
        const Complex num[] = {0.5, 1.0, half + ix, half - ix};
        const Complex den[] = {1.0, 1.0 - r, 1.0 + r};
        detail::accumulate_product(rhs, hyp_pfq_series(num, den, 4.0 * t / ((1.0 + t) * (1.0 + t))));
        detail::accumulate_product(rhs, SeriesResult{sinc / (1.0 + t), 0.0, 0});
        break;
      }
    }
  }
  rep.rhs = rhs.value;
  rep.rhs_error = rhs.error_bound + 4.0 * eps * std::abs(rhs.value);
  rep.difference = std::abs(rep.lhs - rep.rhs);
  rep.passed = rep.difference <= tol + rep.truncation_bound + rep.lhs_rounding + rep.rhs_error;
  return rep;
}

}  // namespace wilsonpar
