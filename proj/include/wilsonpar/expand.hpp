#pragma once

#include "wilsonpar/quadrature.hpp"
#include "wilsonpar/wilson.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace wilsonpar {

struct CoefficientEntry {
  unsigned n = 0;
  Complex c;
  double error = 0.0;
};

struct CoefficientTable {
  Case kind = Case::A;
  std::optional<double> b;
  std::vector<CoefficientEntry> entries;
};

/// A function to expand in the monic basis, with an envelope of |F| for x >= 1.
/// The coefficient of P_n in the expansion is sign(n) * c_{n + offset}.
struct ExpansionTarget {
  std::function<Complex(double)> f;
  TailBound envelope;
  unsigned offset = 0;
  bool alternating = false;

  double sign(unsigned n) const { return alternating && n % 2 == 1 ? -1.0 : 1.0; }
};

/// Parity targets: case A expands -4(e^{-pi x} + i)/(1 + 4x^2) with
/// P_n <-> (-1)^n c_{n+1}; case B expands e^{-pi x} with P_n <-> (-1)^n c_n.
inline ExpansionTarget parity_target(Case kind) {
  if (kind == Case::A)
    return {[](double x) { return -4.0 * (std::exp(-M_PI * x) + Complex(0.0, 1.0)) / (1.0 + 4.0 * x * x); },
            {0.0, 0, 4.0 * std::sqrt(2.0), 1.0},
            1,
            true};
  return {[](double x) { return Complex(std::exp(-M_PI * x), 0.0); }, {M_PI, 0, 1.0, 1.0}, 0, true};
}

namespace detail {

inline TailBound monic_envelope(const WilsonFamily& family, unsigned n) {
  if (family.kind() == Case::A) return polynomial_envelope(to_real(monic_hypergeometric_case_a(n)));
  return polynomial_envelope(monic_hypergeometric_case_b_over<double>(n, family.b()));
}

inline QuadratureConfig with_degree(QuadratureConfig cfg, unsigned degree) {
  cfg.degree_hint = std::max(cfg.degree_hint, degree);
  return cfg;
}

}  // namespace detail

/// Entry n is <F, P_n>_w / h_n over the continuous weight, with h_n the norm
/// of the measure w dx (the corrected closed form). The error column is the
/// quadrature bound divided by h_n.
inline CoefficientTable project(const std::function<Complex(double)>& f, const TailBound& f_envelope,
                                const WilsonFamily& family, unsigned n_max, const QuadratureConfig& cfg = {}) {
  const WeightFunction w(family);
  const MonicEvaluator ev(family, n_max);
  CoefficientTable t{family.kind(), family.kind() == Case::B ? std::optional<double>(family.b()) : std::nullopt, {}};
  for (unsigned n = 0; n <= n_max; ++n) {
    const double h = weight_and_norm(family, n).norm.corrected;
    const TailBound env = w.envelope().times(f_envelope).times(detail::monic_envelope(family, n));
    const auto q = integrate_semiinfinite_complex([&](double x) { return w(x) * f(x) * ev(n, x * x); }, env,
                                                  detail::with_degree(cfg, n));
    t.entries.push_back({n, q.value / h, q.error / h});
  }
  return t;
}

/// How the constant in front of each coefficient integral is formed.
/// AsPrinted keeps the published constant, which for case A inverts the
/// printed norm; Rederived inverts the norm of the measure. The two agree for
/// case B and for case-A n <= 1.
enum class PrefactorSource { AsPrinted, Rederived };

/// Parity coefficients c_0..c_{n_max}.
///
/// Case A: c_0 = -i; for n >= 1
///   c_n = (-1)^n pi^2 K_n int_0^inf x(1+4x^2)(e^{-pi x}+i) sinh(pi x)/cosh^3(pi x) P_{n-1}(x^2) dx
/// with K_n = ((2n)!)^2 (2n+1)! / (((n-1)!)^2 (n!)^4 ((n+1)!)^4) as printed,
/// or 1/h_{n-1} rederived.
/// Case B:
///   c_n = 4(-1)^n pi^2 (2n)!(2n+1)! / ((n!)^4 G_n^2) int_0^inf x e^{-pi x} tanh(pi x) P_n(x^2) / (cos 2 pi r + cosh 2 pi x) dx
/// with G_n = Gamma(n+1-r) Gamma(n+1+r).
inline CoefficientTable parity_coefficients(const WilsonFamily& family, unsigned n_max, const QuadratureConfig& cfg = {},
                                            PrefactorSource source = PrefactorSource::Rederived) {
  CoefficientTable t{family.kind(), family.kind() == Case::B ? std::optional<double>(family.b()) : std::nullopt, {}};
  const MonicEvaluator ev(family, n_max);
  if (family.kind() == Case::A) {
    t.entries.push_back({0, Complex(0.0, -1.0), 0.0});
    for (unsigned n = 1; n <= n_max; ++n) {
      const Rational k = source == PrefactorSource::AsPrinted
                             ? ipow(factorial(2 * n), 2) * factorial(2 * n + 1) /
                                   (ipow(factorial(n - 1), 2) * ipow(factorial(n), 4) * ipow(factorial(n + 1), 4))
                             : 1 / norm_case_a_corrected(n - 1);
      const double pre = (n % 2 ? -1.0 : 1.0) * M_PI * M_PI * to_double(k);
      const TailBound env = TailBound{2.0 * M_PI, 3, 20.0 * std::sqrt(2.0), 1.0}.times(detail::monic_envelope(family, n - 1));
      const auto q = integrate_semiinfinite_complex(
          [&](double x) {
            const double ch = std::cosh(M_PI * x);
            return x * (1.0 + 4.0 * x * x) * (std::exp(-M_PI * x) + Complex(0.0, 1.0)) * std::tanh(M_PI * x) / (ch * ch) *
                   ev(n - 1, x * x);
          },
          env, detail::with_degree(cfg, n - 1));
      t.entries.push_back({n, pre * q.value, std::abs(pre) * q.error});
    }
    return t;
  }
  family.require_nondegenerate("parity_coefficients");
  const double r = family.root();
  const double cos2 = std::cos(2.0 * M_PI * r);
  for (unsigned n = 0; n <= n_max; ++n) {
    const double g = detail::gamma_pair_pochhammer<double>(n, family.b()) * M_PI * r / std::sin(M_PI * r);
    double pre = 4.0 * (n % 2 ? -1.0 : 1.0) * M_PI * M_PI / (g * g);
    pre *= to_double(factorial(2 * n) * factorial(2 * n + 1) / ipow(factorial(n), 4));
    const TailBound env = TailBound{3.0 * M_PI, 1, 2.2, 1.0}.times(detail::monic_envelope(family, n));
    const auto q = integrate_semiinfinite(
        [&](double x) { return x * std::exp(-M_PI * x) * std::tanh(M_PI * x) / (cos2 + std::cosh(2.0 * M_PI * x)) * ev(n, x * x); },
        env, detail::with_degree(cfg, n));
    t.entries.push_back({n, Complex(pre * q.value, 0.0), std::abs(pre) * q.error});
  }
  return t;
}

struct InnerProduct {
  double value = 0.0;
  double error = 0.0;
};

/// <P_n, P_m> over the continuous weight, plus the atoms when requested.
inline InnerProduct monic_inner_product(const WilsonFamily& family, unsigned n, unsigned m, bool with_atoms = true,
                                        const QuadratureConfig& cfg = {}) {
  const WeightFunction w(family);
  const MonicEvaluator ev(family, std::max(n, m));
  const TailBound env = w.envelope().times(detail::monic_envelope(family, n)).times(detail::monic_envelope(family, m));
  const auto q = integrate_semiinfinite(
      [&](double x) {
        const double u = x * x;
        return w(x) * ev(n, u) * ev(m, u);
      },
      env, detail::with_degree(cfg, n + m));
  InnerProduct out{q.value, q.error};
  if (with_atoms)
    for (const auto& a : w.point_masses()) {
      const double term = a.mass * ev(n, a.u) * ev(m, a.u);
      out.value += term;
      out.error += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(term);
    }
  return out;
}

struct ReconstructionResult {
  /// ||F - S_k||_w for the partial sums S_k over P_0..P_k, k = 0..N.
  std::vector<double> residual;
  std::vector<double> error;
  CoefficientTable coefficients;
};

/// Weighted L^2 residual of the parity expansion truncated after P_k, for
/// k = 0..N, over the continuous weight.
inline ReconstructionResult reconstruction_residual(const WilsonFamily& family, unsigned N, const QuadratureConfig& cfg = {},
                                                    PrefactorSource source = PrefactorSource::Rederived) {
  const ExpansionTarget target = parity_target(family.kind());
  ReconstructionResult out;
  out.coefficients = parity_coefficients(family, N + target.offset, cfg, source);
  const WeightFunction w(family);
  const MonicEvaluator ev(family, N);
  std::vector<Complex> a(N + 1);
  for (unsigned k = 0; k <= N; ++k) a[k] = target.sign(k) * out.coefficients.entries[k + target.offset].c;

  double envelope_sum = target.envelope.constant;
  for (unsigned k = 0; k <= N; ++k) {
    envelope_sum += std::abs(a[k]) * detail::monic_envelope(family, k).constant;
    const TailBound diff{0.0, 2 * k, envelope_sum, 1.0};
    const TailBound env = w.envelope().times(diff).times(diff);
    const auto q = integrate_semiinfinite(
        [&](double x) {
          std::vector<double> p(k + 1);
          ev.values<double>(x * x, p);
          Complex s = target.f(x);
          for (unsigned m = 0; m <= k; ++m) s -= a[m] * p[m];
          return w(x) * std::norm(s);
        },
        env, detail::with_degree(cfg, 2 * k));
    const double v = std::sqrt(std::max(q.value, 0.0));
    out.residual.push_back(v);
    out.error.push_back(v > 0.0 ? q.error / (2.0 * v) : std::sqrt(q.error));
  }
  return out;
}

struct DualRouteEntry {
  unsigned n = 0;
  Complex formula;
  Complex projection;
  double difference = 0.0;
  double error_sum = 0.0;
  bool agree = false;
};

/// Compares parity_coefficients with the generic projection of the parity
/// target, mapped through the target's index pairing, for n = 1..n_max
/// (case A) or n = 0..n_max (case B).
inline std::vector<DualRouteEntry> dual_route(const WilsonFamily& family, unsigned n_max, const QuadratureConfig& cfg = {},
                                              PrefactorSource source = PrefactorSource::AsPrinted) {
  const ExpansionTarget target = parity_target(family.kind());
  const auto formula = parity_coefficients(family, n_max, cfg, source);
  const unsigned first = target.offset;
  const auto proj = project(target.f, target.envelope, family, n_max - first, cfg);
  std::vector<DualRouteEntry> out;
  for (unsigned n = first; n <= n_max; ++n) {
    const auto& p = proj.entries[n - first];
    const Complex c_proj = target.sign(n - first) * p.c;
    const auto& f = formula.entries[n];
    const double diff = std::abs(f.c - c_proj);
    const double err = f.error + p.error;
    out.push_back({n, f.c, c_proj, diff, err, diff <= err});
  }
  return out;
}

}  // namespace wilsonpar
