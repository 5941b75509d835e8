#pragma once

#include "wilsonpar/polynomial.hpp"
#include "wilsonpar/wilson.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <vector>

namespace wilsonpar {

/// Discrete measure: nodes u_i = x_i^2 (or atom positions) with masses m_i.
struct DiscreteMeasure {
  std::vector<double> u;
  std::vector<double> mass;
};

/// Composite 20-point Gauss-Legendre discretisation of w(x) dx on [0, x_max]
/// in panels of width h, plus the atoms of the weight.
inline DiscreteMeasure discretize(const WeightFunction& w, double x_max = 40.0, double h = 0.5) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = rule::abscissa();
  const auto& weights = rule::weights();
  DiscreteMeasure m;
  for (double a = 0.0; a < x_max; a += h) {
    const double mid = a + 0.5 * h;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      for (int s : {-1, 1}) {
        if (i == 0 && s == -1 && abscissa[0] == 0.0) continue;
        const double x = mid + s * 0.5 * h * abscissa[i];
        m.u.push_back(x * x);
        m.mass.push_back(0.5 * h * weights[i] * w(x));
      }
    }
  }
  for (const auto& atom : w.point_masses()) {
    m.u.push_back(atom.u);
    m.mass.push_back(atom.mass);
  }
  return m;
}

/// Monic orthogonal polynomials p_0..p_{n_max} of the discrete measure, by
/// Gram-Schmidt with two passes. The k-th input vector is u * p_{k-1}, which
/// spans the same space as {1, u, ..., u^k} but keeps the basis well
/// conditioned.
inline std::vector<RealPolynomial> gram_schmidt(const DiscreteMeasure& m, unsigned n_max) {
  const std::size_t N = m.u.size();
  std::vector<RealPolynomial> polys{RealPolynomial::constant(1.0)};
  std::vector<std::vector<double>> vals{std::vector<double>(N, 1.0)};
  std::vector<double> sq{0.0};
  for (std::size_t i = 0; i < N; ++i) sq[0] += m.mass[i];

  const RealPolynomial u_poly = RealPolynomial::variable();
  for (unsigned k = 1; k <= n_max; ++k) {
    RealPolynomial p = u_poly * polys[k - 1];
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = m.u[i] * vals[k - 1][i];
    for (int pass = 0; pass < 2; ++pass) {
      for (unsigned j = 0; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < N; ++i) dot += m.mass[i] * v[i] * vals[j][i];
        const double c = dot / sq[j];
        for (std::size_t i = 0; i < N; ++i) v[i] -= c * vals[j][i];
        p -= polys[j] * c;
      }
    }
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += m.mass[i] * v[i] * v[i];
    polys.push_back(std::move(p));
    vals.push_back(std::move(v));
    sq.push_back(s);
  }
  return polys;
}

}  // namespace wilsonpar
