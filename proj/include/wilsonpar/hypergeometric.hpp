#pragma once

#include "wilsonpar/errors.hpp"
#include "wilsonpar/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace wilsonpar {

using Complex = std::complex<double>;

/// Rising factorial a(a+1)...(a+k-1); 1 for k = 0.
template <class T>
T pochhammer(const T& a, unsigned k) {
  T result(1);
  for (unsigned j = 0; j < k; ++j) result *= a + T(static_cast<int>(j));
  return result;
}

namespace detail {

inline std::optional<unsigned> nonpositive_integer_order(const Rational& v) {
  if (denominator_of(v) != 1 || v > 0) return std::nullopt;
  return static_cast<unsigned>(-numerator_of(v));
}

inline std::optional<unsigned> nonpositive_integer_order(double v) {
  if (v > 0 || v != std::floor(v)) return std::nullopt;
  return static_cast<unsigned>(-v);
}

inline std::optional<unsigned> nonpositive_integer_order(const Complex& v) {
  if (v.imag() != 0.0) return std::nullopt;
  return nonpositive_integer_order(v.real());
}

template <class T>
bool exactly_zero(const T& v) {
  return v == T(0);
}

}  // namespace detail

/// Terminating generalized hypergeometric sum
///   sum_{k=0}^{m} prod (a_i)_k / prod (b_j)_k * arg^k / k!
/// where some numerator parameter equals -m with m <= terminate_at. Exact
/// when T is Rational.
///
/// Throws DenominatorPole if a denominator factor (b_j + k) vanishes while
/// the numerator product is still nonzero.
template <class T>
T hyp_pfq_terminating(std::span<const T> num, std::span<const T> den, const T& arg,
                      unsigned terminate_at) {
  bool terminates = false;
  for (const auto& a : num) {
    if (const auto m = detail::nonpositive_integer_order(a); m && *m <= terminate_at) terminates = true;
  }
  if (!terminates)
    throw std::invalid_argument("hyp_pfq_terminating: no numerator parameter -m with m <= terminate_at");

  T sum(1);
  T term(1);
  for (unsigned k = 0; k < terminate_at; ++k) {
    const T kk(static_cast<int>(k));
    T numerator(1);
    for (const auto& a : num) numerator *= a + kk;
    if (detail::exactly_zero(numerator)) break;
    T denominator(static_cast<int>(k + 1));
    for (const auto& b : den) {
      const T factor = b + kk;
      if (detail::exactly_zero(factor))
        throw DenominatorPole("denominator Pochhammer factor vanishes at k = " + std::to_string(k));
      denominator *= factor;
    }
    term = term * numerator / denominator * arg;
    sum += term;
  }
  return sum;
}

template <class T>
T hyp_pfq_terminating(const std::vector<T>& num, const std::vector<T>& den, const T& arg,
                      unsigned terminate_at) {
  return hyp_pfq_terminating(std::span<const T>(num), std::span<const T>(den), arg, terminate_at);
}

struct SeriesOptions {
  /// A term counts as negligible once |term| <= tol.
  double tol = 1e-17;
  /// Number of consecutive negligible terms required before stopping.
  unsigned consecutive = 3;
  unsigned max_terms = 20000;
};

/// Value of a convergent series together with a bound on |true - value|
/// covering both the truncated tail and accumulated rounding.
struct SeriesResult {
  Complex value;
  double error_bound = 0.0;
  unsigned terms = 0;
};

/// Convergent pFq series with p <= q + 1 and, when p = q + 1, |t| < 1.
///
/// The tail after the last summed term is bounded by a geometric majorant of
/// the term ratio, valid for all later indices because every factor of the
/// majorant is nonincreasing in k.
inline SeriesResult hyp_pfq_series(std::span<const Complex> num, std::span<const Complex> den, Complex t,
                                   const SeriesOptions& opts = {}) {
  const std::size_t p = num.size();
  const std::size_t q = den.size();
  if (p > q + 1) throw std::invalid_argument("hyp_pfq_series: need p <= q + 1");
  if (p == q + 1 && std::abs(t) >= 1.0) throw std::invalid_argument("hyp_pfq_series: need |t| < 1");

  double max_den_abs = 0.0;
  for (const auto& b : den) max_den_abs = std::max(max_den_abs, std::abs(b));

  // Majorant of |ratio_k| for every k >= K.
  auto ratio_bound = [&](double K) {
    if (K <= max_den_abs) return std::numeric_limits<double>::infinity();
    double rho = std::abs(t);
    const std::size_t paired = std::min(p, q);
    for (std::size_t i = 0; i < paired; ++i) rho *= (K + std::abs(num[i])) / (K - std::abs(den[i]));
    if (p > q) {
      rho *= std::max(1.0, (K + std::abs(num[p - 1])) / (K + 1.0));
    } else {
      rho /= K + 1.0;
      for (std::size_t j = paired; j < q; ++j) rho /= K - std::abs(den[j]);
    }
    return rho;
  };

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double ops_per_term = 2.0 * static_cast<double>(p + q) + 4.0;

  Complex sum = 1.0;
  Complex term = 1.0;
  double rounding = eps;  // accumulated eps * (ops * k + 2) * |term_k|
  unsigned small_run = 0;
  for (unsigned k = 0; k < opts.max_terms; ++k) {
    Complex ratio = t / static_cast<double>(k + 1);
    for (const auto& a : num) ratio *= a + static_cast<double>(k);
    if (ratio == Complex(0.0)) {
      // Terminated exactly.
      return {sum, rounding + eps * std::abs(sum), k + 1};
    }
    for (const auto& b : den) {
      const Complex factor = b + static_cast<double>(k);
      if (factor == Complex(0.0))
        throw DenominatorPole("denominator Pochhammer factor vanishes at k = " + std::to_string(k));
      ratio /= factor;
    }
    term *= ratio;
    sum += term;
    rounding += eps * (ops_per_term * (k + 1) + 2.0) * std::abs(term);

    small_run = std::abs(term) <= opts.tol ? small_run + 1 : 0;
    if (small_run >= opts.consecutive) {
      const double rho = ratio_bound(static_cast<double>(k + 1));
      if (rho < 1.0) {
        const double tail = std::abs(term) * rho / (1.0 - rho);
        return {sum, tail + rounding + eps * std::abs(sum), k + 2};
      }
    }
  }
  throw NoConvergence("hyp_pfq_series: no convergence within " + std::to_string(opts.max_terms) + " terms");
}

inline SeriesResult hyp_pfq_series(const std::vector<Complex>& num, const std::vector<Complex>& den, Complex t,
                                   const SeriesOptions& opts = {}) {
  return hyp_pfq_series(std::span<const Complex>(num), std::span<const Complex>(den), t, opts);
}

/// Gauss series 2F1(a, b; c; t) for |t| < 1.
inline SeriesResult hyp_2f1_series(Complex a, Complex b, Complex c, Complex t, double tol = 1e-17) {
  const Complex num[] = {a, b};
  const Complex den[] = {c};
  SeriesOptions opts;
  opts.tol = tol;
  return hyp_pfq_series(std::span<const Complex>(num), std::span<const Complex>(den), t, opts);
}

}  // namespace wilsonpar
