#pragma once

#include "wilsonpar/errors.hpp"
#include "wilsonpar/hypergeometric.hpp"
#include "wilsonpar/polynomial.hpp"
#include "wilsonpar/wilson.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace wilsonpar {

struct Eigenvalue {
  unsigned ell1 = 1;
  Rational alpha;
};

/// ell1 = 2n + 1 and alpha = (ell1^2 - 1) / 3.
inline Eigenvalue eigenvalue(unsigned n) {
  const unsigned l = 2 * n + 1;
  return {l, Rational(l * l - 1) / 3};
}

/// Eigenfunction f_n(W) = exp(i pi z) p_n(W), with z^2 = W + 1/4 (case A) or
/// z^2 = W + B + 1/4 (case B), and the matching g_n in the variable z^2.
struct EigenpairRecord {
  unsigned n = 0;
  unsigned ell1 = 1;
  Rational alpha;
  Case kind = Case::A;
  /// B for case B with a numeric value; empty when symbolic or case A.
  std::optional<Rational> b;
  /// Polynomial part p_n in W, coefficients polynomial in B. Empty for case
  /// A with n = 0, where f_0 is the prefactor alone.
  std::optional<BParamPolynomial> poly;
  /// g_n in z^2. Empty for case A with n = 0, where g_0 = 1/(z^2 - 1/4).
  std::optional<BParamPolynomial> g;

  bool rational_g() const { return kind == Case::A && n == 0; }
  std::string prefactor() const { return kind == Case::A ? "exp(i*pi*sqrt(W+1/4))" : "exp(i*pi*sqrt(W+B+1/4))"; }
};

namespace detail {

/// g in z^2 from P in x^2 via g(v) = sign * P(-v).
inline BParamPolynomial g_from_p(const BParamPolynomial& p, int sign) {
  std::vector<RationalPolynomial> c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if ((k % 2 == 1) != (sign < 0)) c[k] = -c[k];
  return BParamPolynomial(std::move(c));
}

}  // namespace detail

/// Case A: g_{n} = (-1)^{n-1} P_{n-1}(-z^2) for n >= 1 and
/// f_n(W) = exp(i pi z) W g_n(z) with z^2 = W + 1/4.
inline EigenpairRecord eigenfunction_case_a(unsigned n) {
  const auto [l, a] = eigenvalue(n);
  EigenpairRecord r{n, l, a, Case::A, std::nullopt, std::nullopt, std::nullopt};
  if (n == 0) return r;
  const BParamPolynomial p = monic_from_hypergeometric(WilsonFamily::case_a(), n - 1);
  r.g = detail::g_from_p(p, (n - 1) % 2 == 0 ? 1 : -1);
  const auto one = RationalPolynomial::constant(Rational(1));
  const BParamPolynomial z_sq_of_w({RationalPolynomial::constant(make_rational(1, 4)), one});
  r.poly = BParamPolynomial({RationalPolynomial(), one}) * r.g->compose(z_sq_of_w);
  return r;
}

namespace detail {

inline EigenpairRecord case_b_record(unsigned n, const BParamPolynomial& p, std::optional<Rational> b) {
  const auto [l, a] = eigenvalue(n);
  EigenpairRecord r{n, l, a, Case::B, std::move(b), std::nullopt, std::nullopt};
  r.g = g_from_p(p, n % 2 == 0 ? 1 : -1);
  const auto one = RationalPolynomial::constant(Rational(1));
  // z^2 = W + B + 1/4
  const BParamPolynomial z_sq_of_w({RationalPolynomial({make_rational(1, 4), Rational(1)}), one});
  BParamPolynomial poly = r.g->compose(z_sq_of_w);
  if (r.b) {
    poly = poly.map([&](const RationalPolynomial& c) { return RationalPolynomial::constant(c(*r.b)); });
    r.g = r.g->map([&](const RationalPolynomial& c) { return RationalPolynomial::constant(c(*r.b)); });
  }
  r.poly = std::move(poly);
  return r;
}

}  // namespace detail

/// Case B with symbolic B: g_n(B, z) = (-1)^n P_n(-z^2) and
/// f_n(B, W) = exp(i pi z) g_n(B, z), z^2 = W + B + 1/4.
inline EigenpairRecord eigenfunction_case_b(unsigned n) {
  return detail::case_b_record(n, monic_hypergeometric_case_b(n), std::nullopt);
}

/// Numeric B; throws DegenerateFamily when sqrt(B+1) is in {1, ..., n}.
inline EigenpairRecord eigenfunction_case_b(unsigned n, const Rational& b) {
  WilsonFamily::case_b(b).require_nondegenerate("eigenfunction_case_b", n);
  return detail::case_b_record(n, monic_hypergeometric_case_b(n), b);
}

inline EigenpairRecord eigenfunction_case_b(unsigned n, double b) { return eigenfunction_case_b(n, Rational(b)); }

/// Double-precision evaluator W -> f_n(W) for a record; B must be numeric
/// (pass it here for a symbolic record). The polynomial part is evaluated
/// through g_n in z^2, whose coefficients share one sign, so there is no
/// cancellation at negative W.
class Eigenfunction {
 public:
  explicit Eigenfunction(const EigenpairRecord& r, std::optional<double> b = std::nullopt)
      : shift_(0.25), times_w_(r.kind == Case::A) {
    double bv = 0.0;
    if (r.kind == Case::B) {
      if (r.b) bv = to_double(*r.b);
      else if (b) bv = *b;
      else throw std::invalid_argument("Eigenfunction needs a numeric B");
      shift_ += bv;
    }
    if (r.poly) poly_ = substitute_b(*r.poly, bv);
    else poly_ = RealPolynomial::constant(1.0);
    if (r.g) g_ = substitute_b(*r.g, bv);
    else {
      g_ = RealPolynomial::constant(1.0);
      times_w_ = false;
    }
  }

  /// Principal root of W + B + 1/4; tiny negative rounding is clamped.
  Complex operator()(double w) const {
    double rad = w + shift_;
    if (rad < 0.0) {
      if (rad < -1e-12 * std::max(1.0, std::abs(w))) throw DomainPole("negative radicand in the prefactor");
      rad = 0.0;
    }
    const double z = std::sqrt(rad);
    const double p = times_w_ ? w * g_(rad) : g_(rad);
    return std::polar(1.0, M_PI * z) * p;
  }

  /// Polynomial part in W.
  const RealPolynomial& polynomial() const { return poly_; }

 private:
  double shift_;
  bool times_w_;
  RealPolynomial poly_;
  RealPolynomial g_;
};

/// LHS - RHS of a difference equation, with the sum of the absolute values
/// of the terms as a scale for relative comparisons.
template <class S>
struct Residual {
  S value{};
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

namespace detail {

inline double magnitude(const Rational& v) { return std::abs(to_double(v)); }
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }

}  // namespace detail

/// Residual of the case-A g equation
///   (2z+1)(2z+3)^2 g(z+1) - 4z(2z-1)(2z+1) g(z) + (2z-1)(2z-3)^2 g(z-1) - 8z(ell1^2-1) g(z).
/// S is Rational for exact evaluation, double or Complex otherwise.
template <class S, class G>
Residual<S> residual_g_case_a(G&& g, const S& ell1, const S& z) {
  const S one(1), two(2), three(3), four(4), eight(8);
  const S gp = g(z + one), g0 = g(z), gm = g(z - one);
  const S t1 = (two * z + one) * (two * z + three) * (two * z + three) * gp;
  const S t2 = four * z * (two * z - one) * (two * z + one) * g0;
  const S t3 = (two * z - one) * (two * z - three) * (two * z - three) * gm;
  const S t4 = eight * z * (ell1 * ell1 - one) * g0;
  return {S(t1 - t2 + t3 - t4), detail::magnitude(t1) + detail::magnitude(t2) + detail::magnitude(t3) + detail::magnitude(t4)};
}

/// Residual of the case-B g equation
///   2(z^2-B-1/4) g(z) - [3z^2-B-3/4 + 2z(z^2-B-1/4)] g(z+1)/(2z)
///     + [3z^2-B-3/4 - 2z(z^2-B-1/4)] g(z-1)/(2z) - (1-ell1^2) g(z).
/// Throws DomainPole at z = 0.
template <class S, class G>
Residual<S> residual_g_case_b(G&& g, const S& b, const S& ell1, const S& z) {
  if (z == S(0)) throw DomainPole("the case-B g equation divides by 2z");
  const S one(1), two(2), three(3), quarter = S(1) / S(4);
  const S q = z * z - b - quarter;
  const S p = three * z * z - b - three * quarter;
  const S t1 = two * q * g(z);
  const S t2 = (p + two * z * q) * g(z + one) / (two * z);
  const S t3 = (p - two * z * q) * g(z - one) / (two * z);
  const S t4 = (one - ell1 * ell1) * g(z);
  return {S(t1 - t2 + t3 - t4), detail::magnitude(t1) + detail::magnitude(t2) + detail::magnitude(t3) + detail::magnitude(t4)};
}

/// Residual of the master equation with eigenvalue (1 - ell1^2):
///   2(W+mu) f(W) + (1/s){[2B+4W+(W-mu)(s-1)] f(W+1+s) + [-2B-4W+(W-mu)(s+1)] f(W+1-s)} - (1-ell1^2) f(W)
/// where s = sqrt(1+4B+4W) and mu = M/(B+W).
template <class F>
Residual<Complex> residual_master(F&& f, double b, double m, double ell1, double w) {
  if (b + w == 0.0) throw DomainPole("B + W = 0");
  const double rad = 1.0 + 4.0 * b + 4.0 * w;
  if (rad <= 0.0) throw DomainPole("1 + 4B + 4W <= 0");
  const double s = std::sqrt(rad);
  const double mu = m / (b + w);
  const Complex f0 = f(w);
  const Complex t1 = 2.0 * (w + mu) * f0;
  const Complex t2 = (2.0 * b + 4.0 * w + (w - mu) * (s - 1.0)) * f(w + 1.0 + s) / s;
  const Complex t3 = (-2.0 * b - 4.0 * w + (w - mu) * (s + 1.0)) * f(w + 1.0 - s) / s;
  const Complex t4 = (1.0 - ell1 * ell1) * f0;
  return {t1 + t2 + t3 - t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

/// Master equation at B = 0, M = 0 in its reduced form
///   2W f(W) + (3+s)W f(W+1+s)/s - (3-s)W f(W+1-s)/s - (1-ell1^2) f(W), s = sqrt(1+4W).
template <class F>
Residual<Complex> residual_reduced_case_a(F&& f, double ell1, double w) {
  const double rad = 1.0 + 4.0 * w;
  if (rad <= 0.0) throw DomainPole("1 + 4W <= 0");
  const double s = std::sqrt(rad);
  const Complex f0 = f(w);
  const Complex t1 = 2.0 * w * f0;
  const Complex t2 = (3.0 + s) * w * f(w + 1.0 + s) / s;
  const Complex t3 = (3.0 - s) * w * f(w + 1.0 - s) / s;
  const Complex t4 = (1.0 - ell1 * ell1) * f0;
  return {t1 + t2 - t3 - t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

/// Master equation at M = 0 in its reduced form
///   2W f + [(2B+3W+Ws) f(W+1+s) - (2B+3W-Ws) f(W+1-s)]/s - (1-ell1^2) f, s = sqrt(1+4B+4W).
template <class F>
Residual<Complex> residual_reduced_case_b(F&& f, double b, double ell1, double w) {
  const double rad = 1.0 + 4.0 * b + 4.0 * w;
  if (rad <= 0.0) throw DomainPole("1 + 4B + 4W <= 0");
  const double s = std::sqrt(rad);
  const Complex f0 = f(w);
  const Complex t1 = 2.0 * w * f0;
  const Complex t2 = (2.0 * b + 3.0 * w + w * s) * f(w + 1.0 + s) / s;
  const Complex t3 = (2.0 * b + 3.0 * w - w * s) * f(w + 1.0 - s) / s;
  const Complex t4 = (1.0 - ell1 * ell1) * f0;
  return {t1 + t2 - t3 - t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

/// Values on the lattice z0, z0 + 1, ..., z0 + length - 1.
struct LatticeFunction {
  double anchor = 0.0;
  std::vector<double> values;

  double at(double z) const {
    const double k = z - anchor;
    const long i = std::lround(k);
    if (std::abs(k - static_cast<double>(i)) > 1e-9 || i < 0 || i >= static_cast<long>(values.size()))
      throw DomainPole("point off the lattice");
    return values[static_cast<std::size_t>(i)];
  }
  double point(std::size_t k) const { return anchor + static_cast<double>(k); }
};

struct SecondSolution {
  unsigned n = 0;
  LatticeFunction g;
  LatticeFunction u;
  LatticeFunction h;
};

/// Case-A g_n as a double function of z; g_0 = 1/(z^2 - 1/4).
inline std::function<double(double)> case_a_g(unsigned n) {
  const auto rec = eigenfunction_case_a(n);
  if (rec.rational_g()) return [](double z) { return 1.0 / (z * z - 0.25); };
  const RealPolynomial g = substitute_b(*rec.g, 0.0);
  return [g](double z) { return g(z * z); };
}

/// Second solution h_n = g_n u_n of the case-A g equation by reduction of
/// order, with u_n(z0) = 0 and
///   u_n(z) - u_n(z-1) = 1 / ((2z-3)^2 (2z-1)^3 (2z+1)^2 g_n(z-1) g_n(z)).
/// Throws LatticePole when the lattice meets a zero of a factor or of g_n,
/// or a pole of g_0.
inline SecondSolution second_solution(unsigned n, double z0, unsigned length) {
  if (length < 4) throw std::invalid_argument("second_solution needs length >= 4");
  const auto g = case_a_g(n);
  SecondSolution s{n, {z0, {}}, {z0, {}}, {z0, {}}};
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  for (unsigned k = 0; k < length; ++k) {
    const double z = z0 + k;
    for (double bad : {-0.5, 0.5, 1.5})
      if (near(z, bad)) throw LatticePole("lattice point z = " + std::to_string(z) + " hits a denominator zero");
    const double gz = g(z);
    if (!std::isfinite(gz) || gz == 0.0) throw LatticePole("g_n vanishes or is singular at z = " + std::to_string(z));
    s.g.values.push_back(gz);
  }
  double u = 0.0;
  s.u.values.push_back(0.0);
  for (unsigned k = 1; k < length; ++k) {
    const double z = z0 + k;
    const double d = (2 * z - 3) * (2 * z - 3) * std::pow(2 * z - 1, 3) * (2 * z + 1) * (2 * z + 1) *
                     s.g.values[k - 1] * s.g.values[k];
    if (d == 0.0) throw LatticePole("vanishing denominator at z = " + std::to_string(z));
    u += 1.0 / d;
    s.u.values.push_back(u);
  }
  for (unsigned k = 0; k < length; ++k) s.h.values.push_back(s.g.values[k] * s.u.values[k]);
  return s;
}

/// Casoratian g(z) h(z+1) - g(z+1) h(z) at z0 + k for k = 0..length-2.
inline std::vector<double> casoratian(const SecondSolution& s) {
  std::vector<double> c;
  for (std::size_t k = 0; k + 1 < s.g.values.size(); ++k)
    c.push_back(s.g.values[k] * s.h.values[k + 1] - s.g.values[k + 1] * s.h.values[k]);
  return c;
}

/// Case-A g-equation residuals of a lattice function at its interior points.
inline std::vector<Residual<double>> lattice_residuals(const LatticeFunction& f, double ell1) {
  std::vector<Residual<double>> out;
  for (std::size_t k = 1; k + 1 < f.values.size(); ++k)
    out.push_back(residual_g_case_a<double>([&](double z) { return f.at(z); }, ell1, f.point(k)));
  return out;
}

struct ScanOptions {
  std::vector<double> grid;  // empty: 0.5, 1.0, ..., 10.0
  unsigned refinements = 50;
  double tol = 1e-14;
};

struct ScanReport {
  double b = 0.0;
  double m = 0.0;
  unsigned n = 0;
  unsigned degree = 0;
  double ell1_sq = 0.0;
  /// Imaginary part of the selected eigenvalue before refinement.
  double ell1_sq_imag = 0.0;
  /// ||(A + ell1^2 Phi) c|| / ||Phi c|| over the grid, with p normalised.
  double residual = 0.0;
  std::vector<double> coefficients;  // of p in powers of W
  unsigned iterations = 0;
};

/// Least-squares eigen-fit of f(W) = exp(i pi z) p(W), deg p = degree, to the
/// master equation on a W grid.
///
/// Along the shifts the prefactor continues to exp(i pi (z +- 1)), so the
/// equation reduces to the real relation L p + (ell1^2 - 1) p = 0 with
///   L p = 2(W+mu) p - {[2B+4W+(W-mu)(s-1)] p(W+1+s) + [-2B-4W+(W-mu)(s+1)] p(W+1-s)}/s.
/// With A = L Phi - Phi and Phi the basis values, the fit solves A c = -ell1^2 Phi c:
/// an initial guess from the eigenvalues of R^{-1} Q^T A (Phi = QR), taking
/// the n-th by ascending real part, then alternating solves for c and ell1^2.
/// Throws IllConditioned when Phi is numerically rank deficient.
inline ScanReport conjecture_scan(double b, double m, unsigned n, unsigned degree, const ScanOptions& opts = {}) {
  if (degree < n) throw std::invalid_argument("conjecture_scan needs degree >= n");
  std::vector<double> grid = opts.grid;
  if (grid.empty())
    for (int k = 1; k <= 20; ++k) grid.push_back(0.5 * k);
  const std::size_t rows = grid.size();
  const std::size_t cols = degree + 1;
  if (rows < cols) throw IllConditioned("grid has fewer points than ansatz coefficients");

  double w_scale = 0.0;
  for (double w : grid) w_scale = std::max(w_scale, std::abs(w));
  auto basis = [&](std::size_t j, double w) { return std::pow(w / w_scale, static_cast<double>(j)); };

  Eigen::MatrixXd A(rows, cols), Phi(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const double w = grid[i];
    if (b + w == 0.0) throw DomainPole("B + W = 0 on the grid");
    const double rad = 1.0 + 4.0 * b + 4.0 * w;
    if (rad <= 0.0) throw DomainPole("1 + 4B + 4W <= 0 on the grid");
    const double s = std::sqrt(rad);
    const double mu = m / (b + w);
    const double cp = 2.0 * b + 4.0 * w + (w - mu) * (s - 1.0);
    const double cm = -2.0 * b - 4.0 * w + (w - mu) * (s + 1.0);
    for (std::size_t j = 0; j < cols; ++j) {
      const double phi = basis(j, w);
      const double lp = 2.0 * (w + mu) * phi - (cp * basis(j, w + 1.0 + s) + cm * basis(j, w + 1.0 - s)) / s;
      A(i, j) = lp - phi;
      Phi(i, j) = phi;
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Phi);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cols; ++j) {
    rmax = std::max(rmax, std::abs(R(j, j)));
    rmin = std::min(rmin, std::abs(R(j, j)));
  }
  if (rmin <= 1e-13 * rmax) throw IllConditioned("basis matrix is numerically singular");
  const Eigen::MatrixXd QtA = (qr.householderQ().transpose() * A).topRows(cols);
  const Eigen::MatrixXd T = R.triangularView<Eigen::Upper>().solve(QtA);
  Eigen::EigenSolver<Eigen::MatrixXd> es(T);
  if (es.info() != Eigen::Success) throw IllConditioned("eigen-decomposition failed");
  std::vector<std::complex<double>> lambdas;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) lambdas.push_back(-es.eigenvalues()(k));
  std::sort(lambdas.begin(), lambdas.end(), [](auto x, auto y) { return x.real() < y.real(); });

  ScanReport rep;
  rep.b = b;
  rep.m = m;
  rep.n = n;
  rep.degree = degree;
  double lambda = lambdas[n].real();
  rep.ell1_sq_imag = lambdas[n].imag();

  Eigen::VectorXd c;
  for (unsigned it = 0; it < opts.refinements; ++it) {
    const Eigen::MatrixXd M = A + lambda * Phi;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinV);
    c = svd.matrixV().col(cols - 1);
    const Eigen::VectorXd pc = Phi * c;
    const double next = -pc.dot(A * c) / pc.squaredNorm();
    rep.iterations = it + 1;
    const bool done = std::abs(next - lambda) <= opts.tol * std::max(1.0, std::abs(lambda));
    lambda = next;
    if (done) break;
  }
  const Eigen::VectorXd pc = Phi * c;
  rep.ell1_sq = lambda;
  rep.residual = (A * c + lambda * pc).norm() / pc.norm();

  // Report p in powers of W, normalised to a unit leading nonzero coefficient.
  std::vector<double> coeffs(cols);
  for (std::size_t j = 0; j < cols; ++j) coeffs[j] = c(static_cast<Eigen::Index>(j)) / std::pow(w_scale, static_cast<double>(j));
  std::size_t lead = cols;
  while (lead > 0 && std::abs(c(static_cast<Eigen::Index>(lead - 1))) < 1e-10 * c.norm()) --lead;
  if (lead > 0) {
    const double top = coeffs[lead - 1];
    for (auto& v : coeffs) v /= top;
  }
  rep.coefficients = std::move(coeffs);
  return rep;
}

}  // namespace wilsonpar
