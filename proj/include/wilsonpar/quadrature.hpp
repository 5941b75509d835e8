#pragma once

#include "wilsonpar/errors.hpp"
#include "wilsonpar/hypergeometric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace wilsonpar {

/// Envelope |f(x)| <= constant * x^degree * exp(-rate * x), valid for x >= start.
struct TailBound {
  double rate = 0.0;
  unsigned degree = 0;
  double constant = 0.0;
  double start = 1.0;

  /// Upper bound on the integral of the envelope over [x, infinity).
  /// Uses the closed form of the upper incomplete Gamma function for integer
  /// degree, evaluated in log space.
  double integral_from(double x) const {
    if (constant == 0.0) return 0.0;
    if (x < start) return std::numeric_limits<double>::infinity();
    // int_x^inf t^p e^{-k t} dt = e^{-k x} sum_{j=0}^{p} p!/j! x^j / k^{p-j+1}
    const double lx = std::log(x);
    const double lk = std::log(rate);
    double log_fact_ratio = 0.0;  // log(p!/j!) running from j = p downward
    double total = 0.0;
    for (int j = static_cast<int>(degree); j >= 0; --j) {
      const double log_term = log_fact_ratio + j * lx - (degree - j + 1) * lk - rate * x;
      total += std::exp(log_term);
      log_fact_ratio += std::log(static_cast<double>(std::max(j, 1)));
    }
    return constant * total;
  }

  TailBound scaled(double factor) const {
    TailBound b = *this;
    b.constant *= std::abs(factor);
    return b;
  }

  /// Envelope of the product of two functions bounded by this and other.
  TailBound times(const TailBound& other) const {
    return {rate + other.rate, degree + other.degree, constant * other.constant, std::max(start, other.start)};
  }
};

struct QuadratureConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  /// Kronrod order of the panel rule: 15, 21, 31, 41, 51 or 61.
  unsigned panel_order = 15;
  /// Fixed cutoff; when empty the cutoff is chosen from the tail bound.
  std::optional<double> x_max;
  /// Polynomial-degree hint n for the default cutoff floor
  /// max(15, (2n+6) ln10 / (2 pi) + 5).
  unsigned degree_hint = 0;
  /// Cap on unit-width panels, i.e. on the cutoff.
  unsigned max_panels = 400;
  /// Bisection depth allowed inside each unit panel.
  unsigned max_depth = 18;
};

struct QuadratureResult {
  double value = 0.0;
  /// Bound on |true - value|: panel error estimates, the analytic tail and
  /// a rounding allowance on the L1 mass.
  double error = 0.0;
  double x_max = 0.0;
  double tail = 0.0;
  double l1 = 0.0;
};

struct ComplexQuadratureResult {
  Complex value;
  double error = 0.0;
  double x_max = 0.0;
};

namespace detail {

template <unsigned Order, class F>
double kronrod_panel(F& f, double a, double b, unsigned depth, double tol, double* err, double* l1) {
  return boost::math::quadrature::gauss_kronrod<double, Order>::integrate(f, a, b, depth, tol, err, l1);
}

template <class F>
double kronrod_dispatch(unsigned order, F& f, double a, double b, unsigned depth, double tol, double* err,
                        double* l1) {
  switch (order) {
    case 15: return kronrod_panel<15>(f, a, b, depth, tol, err, l1);
    case 21: return kronrod_panel<21>(f, a, b, depth, tol, err, l1);
    case 31: return kronrod_panel<31>(f, a, b, depth, tol, err, l1);
    case 41: return kronrod_panel<41>(f, a, b, depth, tol, err, l1);
    case 51: return kronrod_panel<51>(f, a, b, depth, tol, err, l1);
    case 61: return kronrod_panel<61>(f, a, b, depth, tol, err, l1);
    default: throw std::invalid_argument("panel_order must be one of 15, 21, 31, 41, 51, 61");
  }
}

}  // namespace detail

inline double default_cutoff_floor(unsigned degree_hint) {
  return std::max(15.0, (2.0 * degree_hint + 6.0) * std::log(10.0) / (2.0 * M_PI) + 5.0);
}

/// Integral of f over (0, infinity) for an exponentially decaying integrand.
///
/// [0, X] is covered by unit panels, each integrated adaptively; X grows past
/// the default floor until tail.integral_from(X) falls below a tenth of the
/// requested accuracy. Throws NoConvergence when the panel cap is reached or
/// a panel misses its tolerance at maximum depth.
template <class F>
QuadratureResult integrate_semiinfinite(F&& f, const TailBound& tail, const QuadratureConfig& cfg = {}) {
  if (cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0) throw std::invalid_argument("tolerances must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto g = [&](double x) { return static_cast<double>(f(x)); };

  const double floor_x = cfg.x_max ? *cfg.x_max : default_cutoff_floor(cfg.degree_hint);
  QuadratureResult r;
  double a = 0.0;
  unsigned panels = 0;
  for (;;) {
    const double b = a + 1.0;
    double err = 0.0;
    double l1 = 0.0;
    const double v = detail::kronrod_dispatch(cfg.panel_order, g, a, b, cfg.max_depth, cfg.rel_tol, &err, &l1);
    if (!std::isfinite(v)) throw NoConvergence("integrand not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    if (err > std::max(cfg.rel_tol * l1, cfg.abs_tol) * 10.0)
      throw NoConvergence("panel [" + std::to_string(a) + ", " + std::to_string(b) + "] error " + std::to_string(err));
    r.value += v;
    r.error += err;
    r.l1 += l1;
    a = b;
    ++panels;
    if (cfg.x_max) {
      if (a >= *cfg.x_max) break;
    } else if (a >= floor_x) {
      const double target = std::max(cfg.abs_tol, cfg.rel_tol * r.l1);
      if (tail.integral_from(a) <= 0.1 * target) break;
    }
    if (panels >= cfg.max_panels) throw NoConvergence("cutoff exceeds max_panels unit panels");
  }
  r.x_max = a;
  r.tail = tail.integral_from(a);
  if (!std::isfinite(r.tail)) r.tail = 0.0;  // fixed cutoff below the envelope's start; caller owns the tail
  r.error += r.tail + 16.0 * eps * r.l1;
  return r;
}

/// Componentwise integration of a complex-valued integrand.
template <class F>
ComplexQuadratureResult integrate_semiinfinite_complex(F&& f, const TailBound& tail, const QuadratureConfig& cfg = {}) {
  const auto re = integrate_semiinfinite([&](double x) { return std::real(f(x)); }, tail, cfg);
  const auto im = integrate_semiinfinite([&](double x) { return std::imag(f(x)); }, tail, cfg);
  return {Complex(re.value, im.value), std::hypot(re.error, im.error), std::max(re.x_max, im.x_max)};
}

}  // namespace wilsonpar
