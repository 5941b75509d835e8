#pragma once

#include "wilsonpar/errors.hpp"
#include "wilsonpar/hypergeometric.hpp"
#include "wilsonpar/polynomial.hpp"
#include "wilsonpar/quadrature.hpp"
#include "wilsonpar/rational.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wilsonpar {

enum class Case { A, B };

inline std::string_view case_name(Case c) { return c == Case::A ? "A" : "B"; }

/// One of the two monic Wilson families in the squared variable u = x^2.
///
/// Case A has (a, b, c, d) = (1/2, 1/2, 3/2, 3/2). Case B has a = b = 1/2 and
/// c, d = 1/2 -+ r with r = sqrt(B + 1); B is symbolic, an exact rational or a
/// double. Any B > -1 is accepted; operations that need Gamma factors at
/// n + 1 - r reject r in {1, 2, ...} themselves.
class WilsonFamily {
 public:
  static WilsonFamily case_a() { return WilsonFamily(Case::A, std::monostate{}); }
  static WilsonFamily case_b_symbolic() { return WilsonFamily(Case::B, Symbolic{}); }
  static WilsonFamily case_b(const Rational& b) {
    if (b <= -1) throw std::invalid_argument("case B needs B > -1, got " + to_string(b));
    return WilsonFamily(Case::B, b);
  }
  static WilsonFamily case_b(double b) {
    if (!(b > -1.0) || !std::isfinite(b)) throw std::invalid_argument("case B needs finite B > -1");
    return WilsonFamily(Case::B, b);
  }

  Case kind() const { return kind_; }
  bool is_symbolic() const { return std::holds_alternative<Symbolic>(b_); }
  bool has_exact_b() const { return std::holds_alternative<Rational>(b_); }

  /// B as an exact rational. A double B converts exactly; case A has B = 0.
  Rational exact_b() const {
    if (kind_ == Case::A) return Rational(0);
    if (const auto* r = std::get_if<Rational>(&b_)) return *r;
    if (const auto* d = std::get_if<double>(&b_)) return Rational(*d);
    throw std::invalid_argument("B is symbolic");
  }

  /// B as a double; 0 for case A.
  double b() const {
    if (kind_ == Case::A) return 0.0;
    if (const auto* r = std::get_if<Rational>(&b_)) return to_double(*r);
    if (const auto* d = std::get_if<double>(&b_)) return *d;
    throw std::invalid_argument("B is symbolic");
  }

  /// sqrt(B + 1).
  double root() const { return std::sqrt(b() + 1.0); }

  struct Parameters {
    double a, b, c, d;
  };
  Parameters parameters() const {
    if (kind_ == Case::A) return {0.5, 0.5, 1.5, 1.5};
    const double r = root();
    return {0.5, 0.5, 0.5 - r, 0.5 + r};
  }

  /// The positive integer m with m^2 = B + 1, if there is one.
  std::optional<unsigned> integer_root() const {
    if (kind_ == Case::A || is_symbolic()) return std::nullopt;
    const Rational s = exact_b() + 1;
    if (denominator_of(s) != 1) return std::nullopt;
    const BigInt n = numerator_of(s);
    const BigInt m = boost::multiprecision::sqrt(n);
    if (m * m != n || m > 1000000) return std::nullopt;
    return m.convert_to<unsigned>();
  }

  /// Throws DegenerateFamily when sqrt(B + 1) is a positive integer m <= bound.
  void require_nondegenerate(std::string_view what, unsigned bound = ~0u) const {
    if (const auto m = integer_root(); m && *m >= 1 && *m <= bound)
      throw DegenerateFamily(std::string(what) + ": sqrt(B+1) = " + std::to_string(*m) +
                             " is a positive integer");
  }

  /// "p/q" text of B, empty for case A or symbolic B.
  std::optional<std::string> b_text() const {
    if (kind_ == Case::A || is_symbolic()) return std::nullopt;
    return to_string(exact_b());
  }

 private:
  struct Symbolic {};
  WilsonFamily(Case k, std::variant<std::monostate, Symbolic, Rational, double> b) : kind_(k), b_(std::move(b)) {}

  Case kind_;
  std::variant<std::monostate, Symbolic, Rational, double> b_;
};

/// P_0..P_{n_max} of one family. Coefficients are polynomials in B; they are
/// constant unless the family is symbolic.
struct MonicTable {
  WilsonFamily family;
  std::vector<BParamPolynomial> polys;

  /// Entry n with B substituted.
  RationalPolynomial exact(std::size_t n) const { return substitute_b(polys.at(n), family.exact_b()); }
};

namespace detail {

/// prod_{j<k} ((1/2 + j)^2 + u) = (1/2 + ix)_k (1/2 - ix)_k with u = x^2.
template <class R>
Polynomial<R> shifted_square_product(unsigned k) {
  Polynomial<R> acc = Polynomial<R>::constant(scalar_cast<R>(Rational(1)));
  for (unsigned j = 0; j < k; ++j) {
    const Rational s = make_rational(2 * j + 1, 2);
    acc = acc * Polynomial<R>({scalar_cast<R>(s * s), scalar_cast<R>(Rational(1))});
  }
  return acc;
}

/// (1 - r)_k (1 + r)_k = prod_{j<k} (j(j+2) - B), a polynomial in B.
template <class R>
R gamma_pair_pochhammer(unsigned k, const R& b) {
  R acc = scalar_cast<R>(Rational(1));
  for (unsigned j = 0; j < k; ++j) acc = acc * (scalar_cast<R>(Rational(j * (j + 2))) - b);
  return acc;
}

/// (-n)_k (n + s)_k / ((1)_k q_k k!) divided by its value at k = n, where q_k
/// is the product of the remaining B-free lower Pochhammers.
inline std::vector<Rational> monic_term_ratios(unsigned n, int upper_shift,
                                               std::span<const Rational> lower) {
  std::vector<Rational> t(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Rational v = pochhammer(Rational(-static_cast<int>(n)), k) *
                 pochhammer(Rational(static_cast<int>(n) + upper_shift), k) / (factorial(k) * factorial(k));
    for (const auto& b : lower) v /= pochhammer(b, k);
    t[k] = v;
  }
  const Rational top = t[n];
  for (auto& v : t) v /= top;
  return t;
}

}  // namespace detail

/// Monic case-A polynomial of degree n from the terminating series
/// 4F3(-n, n+3, 1/2+ix, 1/2-ix; 1, 2, 2; 1), expanded in u = x^2.
inline RationalPolynomial monic_hypergeometric_case_a(unsigned n) {
  const Rational lower[] = {Rational(2), Rational(2)};
  const auto c = detail::monic_term_ratios(n, 3, lower);
  RationalPolynomial p;
  for (unsigned k = 0; k <= n; ++k) p += detail::shifted_square_product<Rational>(k) * c[k];
  return p;
}

/// Monic case-B polynomial of degree n from
/// 4F3(-n, n+1, 1/2+ix, 1/2-ix; 1, 1-r, 1+r; 1), expanded in u = x^2 over
/// the ring R holding B. The monic normalisation multiplies term k by
/// (1-r)_n(1+r)_n / ((1-r)_k(1+r)_k), a polynomial in B, so no division by
/// B-dependent quantities occurs.
template <class R>
Polynomial<R> monic_hypergeometric_case_b_over(unsigned n, const R& b) {
  const auto c = detail::monic_term_ratios(n, 1, {});
  Polynomial<R> p;
  for (unsigned k = 0; k <= n; ++k) {
    R scale = scalar_cast<R>(c[k]);
    for (unsigned j = k; j < n; ++j) scale = scale * (scalar_cast<R>(Rational(j * (j + 2))) - b);
    p += detail::shifted_square_product<R>(k) * scale;
  }
  return p;
}

/// Symbolic B.
inline BParamPolynomial monic_hypergeometric_case_b(unsigned n) {
  return monic_hypergeometric_case_b_over<RationalPolynomial>(n, RationalPolynomial::variable());
}

/// Exact B; throws DegenerateFamily when (1 - r)_n vanishes.
inline RationalPolynomial monic_hypergeometric_case_b(unsigned n, const Rational& b) {
  WilsonFamily::case_b(b).require_nondegenerate("monic_from_hypergeometric", n);
  return monic_hypergeometric_case_b_over<Rational>(n, b);
}

/// Double B; throws DegenerateFamily when (1 - r)_n vanishes.
inline RealPolynomial monic_hypergeometric_case_b(unsigned n, double b) {
  WilsonFamily::case_b(b).require_nondegenerate("monic_from_hypergeometric", n);
  return monic_hypergeometric_case_b_over<double>(n, b);
}

/// Hypergeometric route for any non-double family, as a B-polynomial.
inline BParamPolynomial monic_from_hypergeometric(const WilsonFamily& family, unsigned n) {
  if (family.kind() == Case::A) return lift_b(monic_hypergeometric_case_a(n));
  if (family.is_symbolic()) return monic_hypergeometric_case_b(n);
  family.require_nondegenerate("monic_from_hypergeometric", n);
  return lift_b(monic_hypergeometric_case_b_over<Rational>(n, family.exact_b()));
}

enum class RecurrenceForm { Corrected, AsPrinted };

/// Coefficients of the three-term recurrence
///   P_n = (u - alpha_n) P_{n-1} - beta_n P_{n-2},
/// returned over the ring R holding B (case A ignores b).
///
/// Corrected forms:
///   A: alpha_n = n(n+1)/2 - 1/4,          beta_n = (n-1)^2 n^2 (n+1)^2 / (4(2n-1)(2n+1))
///   B: alpha_n = n(n-1)/2 - B/2 - 1/4,    beta_n = (n-1)^2 (n^2-2n-B)^2 / (4(2n-3)(2n-1))
/// As printed:
///   A: alpha_n = n(n+1)/2,                beta_n = -(n-1)^2 n^2 (n+1)^2 / (4(2n-1)(2n+1))
///   B: alpha_n = B/2 + 1/4 - n(n+1)/2,    beta_n = -n^2 (B - (n-1)(n+1))^2 / (4(2n-1)(2n+1))
template <class R>
std::pair<R, R> recurrence_coefficients(Case kind, RecurrenceForm form, unsigned n, const R& b) {
  const auto q = [](const Rational& v) { return scalar_cast<R>(v); };
  const int m = static_cast<int>(n);
  const Rational quarter = make_rational(1, 4);
  if (kind == Case::A) {
    const Rational num = Rational((m - 1) * (m - 1)) * (m * m) * ((m + 1) * (m + 1));
    const Rational beta_abs = n >= 2 ? num / (4 * (2 * m - 1) * (2 * m + 1)) : Rational(0);
    if (form == RecurrenceForm::Corrected) return {q(make_rational(m * (m + 1), 2) - quarter), q(beta_abs)};
    return {q(make_rational(m * (m + 1), 2)), q(-beta_abs)};
  }
  const R half_b = b * q(make_rational(1, 2));
  if (form == RecurrenceForm::Corrected) {
    const R alpha = q(make_rational(m * (m - 1), 2) - quarter) - half_b;
    if (n < 2) return {alpha, q(Rational(0))};
    const R s = q(Rational(m * m - 2 * m)) - b;
    return {alpha, s * s * q(Rational((m - 1) * (m - 1)) / (4 * (2 * m - 3) * (2 * m - 1)))};
  }
  const R alpha = half_b + q(quarter - make_rational(m * (m + 1), 2));
  const R s = b - q(Rational((m - 1) * (m + 1)));
  return {alpha, -(s * s * q(Rational(m * m) / (4 * (2 * m - 1) * (2 * m + 1))))};
}

/// Printed seed P_1: x^2 - 3/4 (A) or x^2 + B/2 + 1/4 (B).
template <class R>
Polynomial<R> printed_p1(Case kind, const R& b) {
  const auto q = [](const Rational& v) { return scalar_cast<R>(v); };
  if (kind == Case::A) return Polynomial<R>({q(make_rational(-3, 4)), q(Rational(1))});
  return Polynomial<R>({b * q(make_rational(1, 2)) + q(make_rational(1, 4)), q(Rational(1))});
}

/// P_0..P_{n_max} over R. Corrected starts from P_{-1} = 0, P_0 = 1; AsPrinted
/// starts from the printed seeds P_0, P_1 and applies the printed recurrence
/// for n >= 2.
template <class R>
std::vector<Polynomial<R>> monic_recurrence_over(Case kind, unsigned n_max, const R& b, RecurrenceForm form) {
  using P = Polynomial<R>;
  const R one = scalar_cast<R>(Rational(1));
  std::vector<P> out;
  out.reserve(n_max + 1);
  out.push_back(P::constant(one));
  unsigned start = 1;
  if (form == RecurrenceForm::AsPrinted && n_max >= 1) {
    out.push_back(printed_p1<R>(kind, b));
    start = 2;
  }
  for (unsigned n = start; n <= n_max; ++n) {
    const auto [alpha, beta] = recurrence_coefficients<R>(kind, form, n, b);
    P next = out[n - 1] * P({-alpha, one});
    if (n >= 2) next -= out[n - 2] * beta;
    out.push_back(std::move(next));
  }
  return out;
}

/// Recurrence route; symbolic B is exact, numeric B is taken exactly. The
/// recurrence has no Gamma factors, so every B > -1 is accepted.
inline MonicTable monic_from_recurrence(const WilsonFamily& family, unsigned n_max,
                                        RecurrenceForm form = RecurrenceForm::Corrected) {
  MonicTable t{family, {}};
  if (family.kind() == Case::B && family.is_symbolic()) {
    t.polys = monic_recurrence_over<RationalPolynomial>(Case::B, n_max, RationalPolynomial::variable(), form);
  } else {
    for (auto& p : monic_recurrence_over<Rational>(family.kind(), n_max, family.exact_b(), form))
      t.polys.push_back(lift_b(p));
  }
  return t;
}

/// Outcome of cross-checking the printed and corrected recurrences against
/// the hypergeometric route, in symbolic B for case B.
struct RecurrenceDiscrepancy {
  Case kind = Case::A;
  unsigned n_max = 0;
  /// Printed recurrence applied at n = 1 (P_{-1} = 0) against the printed P_1.
  bool printed_seed_consistent = true;
  BParamPolynomial printed_seed_p1;
  BParamPolynomial printed_recurrence_p1;
  /// First n where the printed table (seeds + printed recurrence) differs
  /// from the hypergeometric route; empty if none up to n_max.
  std::optional<unsigned> printed_first_mismatch;
  BParamPolynomial printed_at_mismatch;
  BParamPolynomial reference_at_mismatch;
  std::optional<unsigned> corrected_first_mismatch;
  /// Case B: the printed coefficients at index n, with the sign of the second
  /// term flipped, step g_n -> g_{n+1} for g_n(z) = (-1)^n P_n(-z^2).
  bool printed_is_flipped_g_recurrence = false;
  /// Same check without the sign flip.
  bool printed_is_g_recurrence = false;
};

namespace detail {

/// (-1)^n p(-v) as a polynomial in v.
inline BParamPolynomial reflect_to_g(const BParamPolynomial& p, unsigned n) {
  std::vector<RationalPolynomial> c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if ((k + n) % 2 == 1) c[k] = -c[k];
  return BParamPolynomial(std::move(c));
}

inline bool printed_steps_g(unsigned n_max, const std::vector<BParamPolynomial>& reference, bool flip_second) {
  const RationalPolynomial b = RationalPolynomial::variable();
  const RationalPolynomial one = RationalPolynomial::constant(Rational(1));
  std::vector<BParamPolynomial> g{BParamPolynomial::constant(one)};
  for (unsigned m = 1; m <= n_max; ++m) {
    // printed bracket at index m-1 is (u - alpha), read with u -> v.
    const auto [alpha, beta] = recurrence_coefficients<RationalPolynomial>(Case::B, RecurrenceForm::AsPrinted, m - 1, b);
    BParamPolynomial next = g[m - 1] * BParamPolynomial({-alpha, one});
    if (m >= 2) {
      if (flip_second) next += g[m - 2] * beta;
      else next -= g[m - 2] * beta;
    }
    g.push_back(std::move(next));
    if (g[m] != reflect_to_g(reference[m], m)) return false;
  }
  return true;
}

}  // namespace detail

inline RecurrenceDiscrepancy recurrence_discrepancy(Case kind, unsigned n_max = 10) {
  const WilsonFamily family = kind == Case::A ? WilsonFamily::case_a() : WilsonFamily::case_b_symbolic();
  RecurrenceDiscrepancy d;
  d.kind = kind;
  d.n_max = n_max;
  std::vector<BParamPolynomial> reference;
  for (unsigned n = 0; n <= n_max; ++n) reference.push_back(monic_from_hypergeometric(family, n));

  const RationalPolynomial b = kind == Case::B ? RationalPolynomial::variable() : RationalPolynomial();
  const RationalPolynomial one = RationalPolynomial::constant(Rational(1));
  d.printed_seed_p1 = printed_p1<RationalPolynomial>(kind, b);
  const auto [alpha1, beta1] = recurrence_coefficients<RationalPolynomial>(kind, RecurrenceForm::AsPrinted, 1, b);
  (void)beta1;
  d.printed_recurrence_p1 = BParamPolynomial({-alpha1, one});
  d.printed_seed_consistent = d.printed_recurrence_p1 == d.printed_seed_p1;

  const auto printed = monic_from_recurrence(family, n_max, RecurrenceForm::AsPrinted).polys;
  const auto corrected = monic_from_recurrence(family, n_max, RecurrenceForm::Corrected).polys;
  for (unsigned n = 0; n <= n_max; ++n) {
    if (!d.printed_first_mismatch && printed[n] != reference[n]) {
      d.printed_first_mismatch = n;
      d.printed_at_mismatch = printed[n];
      d.reference_at_mismatch = reference[n];
    }
    if (!d.corrected_first_mismatch && corrected[n] != reference[n]) d.corrected_first_mismatch = n;
  }
  if (kind == Case::B) {
    d.printed_is_flipped_g_recurrence = detail::printed_steps_g(n_max, reference, true);
    d.printed_is_g_recurrence = detail::printed_steps_g(n_max, reference, false);
  }
  return d;
}

/// Fast double-precision evaluation of P_0..P_{n_max} via the corrected
/// recurrence.
class MonicEvaluator {
 public:
  MonicEvaluator(const WilsonFamily& family, unsigned n_max) : alpha_(n_max + 1), beta_(n_max + 1) {
    const double b = family.kind() == Case::B ? family.b() : 0.0;
    for (unsigned n = 1; n <= n_max; ++n) {
      const auto [a, bt] = recurrence_coefficients<double>(family.kind(), RecurrenceForm::Corrected, n, b);
      alpha_[n] = a;
      beta_[n] = bt;
    }
  }

  unsigned n_max() const { return static_cast<unsigned>(alpha_.size()) - 1; }

  /// Writes P_0(u)..P_{n_max}(u) into out (size n_max + 1).
  template <class U>
  void values(U u, std::span<U> out) const {
    out[0] = U(1);
    if (out.size() > 1) out[1] = u - alpha_[1];
    for (std::size_t n = 2; n < out.size(); ++n) out[n] = (u - alpha_[n]) * out[n - 1] - beta_[n] * out[n - 2];
  }

  std::vector<double> values(double u) const {
    std::vector<double> out(alpha_.size());
    values<double>(u, out);
    return out;
  }

  double operator()(unsigned n, double u) const {
    std::vector<double> out(n + 1);
    values<double>(u, out);
    return out[n];
  }

 private:
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

/// Envelope sum_k |c_k| x^{2k} of |p(x^2)| for x >= 1.
inline TailBound polynomial_envelope(const RealPolynomial& p) {
  double s = 0.0;
  for (double c : p.coefficients()) s += std::abs(c);
  return {0.0, static_cast<unsigned>(std::max(0, 2 * p.degree())), s, 1.0};
}

/// Atom of the orthogonality measure at x^2 = u (u < 0).
struct PointMass {
  double u = 0.0;
  double mass = 0.0;
};

/// Orthogonality weight with the overall constant folded in:
///   A: (pi^2/4) x (1+4x^2)^2 sinh(pi x) / cosh^3(pi x)
///   B: 4 pi^2 x tanh(pi x) / (cos(2 pi r) + cosh(2 pi x))
/// For case B with c = 1/2 - r < 0 the full measure also carries atoms at
/// x^2 = -(c+k)^2 for every k with c + k < 0; they are listed by
/// point_masses() and are not part of operator().
class WeightFunction {
 public:
  explicit WeightFunction(const WilsonFamily& family) : family_(family) {
    if (family.kind() == Case::B) {
      if (family.is_symbolic()) throw std::invalid_argument("weight needs a numeric B");
      family.require_nondegenerate("weight");
      r_ = family.root();
      const double s = std::cos(M_PI * r_);
      cos_sq_ = s * s;
      const double c = 0.5 - r_;
      const double sin_sq = std::pow(std::sin(M_PI * r_), 2);
      for (int k = 0; c + k < 0.0; ++k) {
        const double ck = c + k;
        masses_.push_back({-ck * ck, (2.0 * r_ - 1.0) * M_PI * M_PI / sin_sq * ck / c});
      }
    }
  }

  const WilsonFamily& family() const { return family_; }

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    const double px = M_PI * x;
    if (family_.kind() == Case::A) {
      const double ch = std::cosh(px);
      const double q = 1.0 + 4.0 * x * x;
      return 0.25 * M_PI * M_PI * x * q * q * std::tanh(px) / (ch * ch);
    }
    // cos(2 pi r) + cosh(2 pi x) = 2 (sinh^2(pi x) + cos^2(pi r)) without cancellation.
    const double sh = std::sinh(px);
    return 2.0 * M_PI * M_PI * x * std::tanh(px) / (sh * sh + cos_sq_);
  }

  /// Envelope C x^p e^{-2 pi x} of the weight for x >= 1.
  TailBound envelope() const {
    if (family_.kind() == Case::A) return {2.0 * M_PI, 5, 25.0 * M_PI * M_PI, 1.0};
    return {2.0 * M_PI, 1, 8.8 * M_PI * M_PI, 1.0};
  }

  const std::vector<PointMass>& point_masses() const { return masses_; }

 private:
  WilsonFamily family_;
  double r_ = 0.0;
  double cos_sq_ = 0.0;
  std::vector<PointMass> masses_;
};

/// Squared norm of P_n.
///
/// Case A: the printed closed form is
///   (n!)^2 ((n+1)!)^4 ((n+2)!)^4 / (((2n+2)!)^2 (2n+3)!),
/// while the measure w dx gives
///   2 (n!)^2 ((n+1)!)^4 ((n+2)!)^2 / ((2n+3)! (2n+2)!);
/// they agree only at n = 0.
/// Case B: (n!)^4 Gamma^2(n+1-r) Gamma^2(n+1+r) / ((2n)! (2n+1)!), with the
/// Gamma product written as (1-r)_n (1+r)_n pi r / sin(pi r). This is the
/// norm of the full measure including point masses.
struct Norm {
  double printed = 0.0;
  double corrected = 0.0;
  std::optional<Rational> printed_exact;
  std::optional<Rational> corrected_exact;
};

inline Rational norm_case_a_printed(unsigned n) {
  const Rational f2 = factorial(n + 2);
  const Rational g = factorial(2 * n + 2);
  return ipow(factorial(n), 2) * ipow(factorial(n + 1), 4) * ipow(f2, 4) / (g * g * factorial(2 * n + 3));
}

inline Rational norm_case_a_corrected(unsigned n) {
  return 2 * ipow(factorial(n), 2) * ipow(factorial(n + 1), 4) * ipow(factorial(n + 2), 2) /
         (factorial(2 * n + 3) * factorial(2 * n + 2));
}

inline double norm_case_b(double b, unsigned n) {
  const double r = std::sqrt(b + 1.0);
  const double reflection = M_PI * r / std::sin(M_PI * r);
  double gamma_pair = detail::gamma_pair_pochhammer<double>(n, b) * reflection;
  double v = gamma_pair * gamma_pair;
  for (unsigned k = 1; k <= n; ++k) v *= static_cast<double>(k) * k * k * k;
  for (unsigned k = 1; k <= 2 * n; ++k) v /= static_cast<double>(k);
  for (unsigned k = 1; k <= 2 * n + 1; ++k) v /= static_cast<double>(k);
  return v;
}

struct WeightAndNorm {
  WeightFunction weight;
  Norm norm;
};

inline WeightAndNorm weight_and_norm(const WilsonFamily& family, unsigned n) {
  WeightFunction w(family);
  Norm h;
  if (family.kind() == Case::A) {
    h.printed_exact = norm_case_a_printed(n);
    h.corrected_exact = norm_case_a_corrected(n);
    h.printed = to_double(*h.printed_exact);
    h.corrected = to_double(*h.corrected_exact);
  } else {
    h.printed = h.corrected = norm_case_b(family.b(), n);
  }
  return {std::move(w), h};
}

}  // namespace wilsonpar
