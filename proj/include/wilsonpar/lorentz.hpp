#pragma once

#include "wilsonpar/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wilsonpar {

using Matrix = Eigen::MatrixXcd;

/// Nonnegative half-integer, stored as twice its value.
class Spin {
 public:
  static Spin from_twice(int twice) {
    if (twice < 0) throw InvalidSpin("spin must be nonnegative");
    return Spin(static_cast<unsigned>(twice));
  }

  /// Accepts "1/2", "3/2", "1", "0.5", "1.5".
  static Spin parse(std::string_view s) {
    const std::string text(s);
    try {
      if (const auto slash = text.find('/'); slash != std::string::npos) {
        const int num = std::stoi(text.substr(0, slash));
        const int den = std::stoi(text.substr(slash + 1));
        if (den == 1) return from_twice(2 * num);
        if (den == 2) return from_twice(num);
        throw InvalidSpin("spin '" + text + "' is not a half-integer");
      }
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw InvalidSpin("spin '" + text + "' is not a number");
      const double twice = 2.0 * v;
      if (twice != std::floor(twice)) throw InvalidSpin("spin '" + text + "' is not a half-integer");
      return from_twice(static_cast<int>(twice));
    } catch (const std::logic_error&) {
      throw InvalidSpin("spin '" + text + "' is not a number");
    }
  }

  unsigned twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  unsigned multiplicity() const { return twice_ + 1; }
  std::string str() const { return twice_ % 2 ? std::to_string(twice_) + "/2" : std::to_string(twice_ / 2); }

  friend bool operator==(Spin a, Spin b) { return a.twice_ == b.twice_; }

 private:
  explicit Spin(unsigned twice) : twice_(twice) {}
  unsigned twice_;
};

struct LorentzRep {
  std::string label;
  Eigen::Index dim = 0;
  std::array<Matrix, 3> K;
  std::array<Matrix, 3> L;
  Matrix parity;
  /// Minkowski metric of the defining representation; empty otherwise.
  std::optional<Matrix> metric;
};

namespace detail {

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Spin-j matrices (Jx, Jy, Jz) in the basis m = j, j-1, ..., -j.
inline std::array<Matrix, 3> spin_matrices(Spin j) {
  const Eigen::Index d = j.multiplicity();
  const double jv = j.value();
  Matrix jp = Matrix::Zero(d, d), jz = Matrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const double m = jv - static_cast<double>(a);
    jz(a, a) = m;
    if (a > 0) jp(a - 1, a) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  const Matrix jm = jp.adjoint();
  const std::complex<double> i(0.0, 1.0);
  return {(jp + jm) / 2.0, (jp - jm) / (2.0 * i), jz};
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Permutation taking V(d1) (x) V(d2) to V(d2) (x) V(d1).
inline Matrix swap_map(Eigen::Index d1, Eigen::Index d2) {
  Matrix s = Matrix::Zero(d1 * d2, d1 * d2);
  for (Eigen::Index a = 0; a < d1; ++a)
    for (Eigen::Index b = 0; b < d2; ++b) s(b * d1 + a, a * d2 + b) = 1.0;
  return s;
}

struct Block {
  std::array<Matrix, 3> K, L;
};

/// L = A + B, K = -i(A - B) with A acting on the first factor.
inline Block chiral_block(Spin j1, Spin j2) {
  const auto a = spin_matrices(j1);
  const auto b = spin_matrices(j2);
  const Matrix i1 = Matrix::Identity(j1.multiplicity(), j1.multiplicity());
  const Matrix i2 = Matrix::Identity(j2.multiplicity(), j2.multiplicity());
  const std::complex<double> i(0.0, 1.0);
  Block out;
  for (int k = 0; k < 3; ++k) {
    const Matrix ak = kron(a[k], i2), bk = kron(i1, b[k]);
    out.L[k] = ak + bk;
    out.K[k] = -i * (ak - bk);
  }
  return out;
}

}  // namespace detail

/// Defining representation: (J^{mu nu})^alpha_beta = i(eta^{mu alpha} delta^nu_beta - eta^{nu alpha} delta^mu_beta)
/// with eta = diag(1,-1,-1,-1), parity diag(1,-1,-1,-1), K^i = J^{0i} and
/// L^i = (1/2) eps^{ijk} J^{jk}.
inline LorentzRep build_vector_rep() {
  const std::complex<double> i(0.0, 1.0);
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  auto J = [&](int mu, int nu) {
    Matrix m = Matrix::Zero(4, 4);
    for (int alpha = 0; alpha < 4; ++alpha)
      for (int beta = 0; beta < 4; ++beta) {
        std::complex<double> v = 0.0;
        if (mu == alpha && nu == beta) v += eta[mu];
        if (nu == alpha && mu == beta) v -= eta[nu];
        m(alpha, beta) = i * v;
      }
    return m;
  };
  LorentzRep r;
  r.label = "vector";
  r.dim = 4;
  for (int a = 0; a < 3; ++a) {
    r.K[a] = J(0, a + 1);
    r.L[a] = Matrix::Zero(4, 4);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (const int e = detail::levi_civita(a, j, k)) r.L[a] += 0.5 * e * J(j + 1, k + 1);
  }
  Matrix p = Matrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) p(a, a) = eta[a];
  r.parity = p;
  r.metric = p;
  return r;
}

/// (j, j) with the factor swap as parity, or (j1, j2) + (j2, j1) on the
/// doubled space with parity exchanging the summands.
inline LorentzRep build_spin_rep(Spin j1, Spin j2) {
  LorentzRep r;
  const Eigen::Index d1 = j1.multiplicity(), d2 = j2.multiplicity();
  if (j1 == j2) {
    const auto blk = detail::chiral_block(j1, j2);
    r.label = "(" + j1.str() + "," + j2.str() + ")";
    r.dim = d1 * d2;
    r.K = blk.K;
    r.L = blk.L;
    r.parity = detail::swap_map(d1, d2);
    return r;
  }
  const auto b1 = detail::chiral_block(j1, j2);
  const auto b2 = detail::chiral_block(j2, j1);
  const Eigen::Index n = d1 * d2;
  r.label = "(" + j1.str() + "," + j2.str() + ")+(" + j2.str() + "," + j1.str() + ")";
  r.dim = 2 * n;
  for (int k = 0; k < 3; ++k) {
    r.K[k] = Matrix::Zero(2 * n, 2 * n);
    r.L[k] = Matrix::Zero(2 * n, 2 * n);
    r.K[k].topLeftCorner(n, n) = b1.K[k];
    r.K[k].bottomRightCorner(n, n) = b2.K[k];
    r.L[k].topLeftCorner(n, n) = b1.L[k];
    r.L[k].bottomRightCorner(n, n) = b2.L[k];
  }
  r.parity = Matrix::Zero(2 * n, 2 * n);
  r.parity.bottomLeftCorner(n, n) = detail::swap_map(d1, d2);
  r.parity.topRightCorner(n, n) = detail::swap_map(d2, d1);
  return r;
}

struct DerivedOperators {
  Matrix W, A, m, B, M;
};

inline DerivedOperators derived_operators(const LorentzRep& r) {
  DerivedOperators d;
  d.W = Matrix::Zero(r.dim, r.dim);
  d.A = Matrix::Zero(r.dim, r.dim);
  d.m = Matrix::Zero(r.dim, r.dim);
  for (int k = 0; k < 3; ++k) {
    d.W += r.K[k] * r.K[k];
    d.A += r.L[k] * r.L[k];
    d.m += r.K[k] * r.L[k];
  }
  d.B = d.A - d.W;
  d.M = d.m * d.m;
  return d;
}

struct AuditEntry {
  std::string id;
  /// Relation label in the form "10", "13", "parity" used by the traceability table.
  std::string group;
  double residual = 0.0;
};

/// Entrywise max-abs residual of every structural relation.
inline std::vector<AuditEntry> algebra_audit(const LorentzRep& r) {
  using detail::commutator;
  using detail::max_abs;
  const std::complex<double> i(0.0, 1.0);
  const auto d = derived_operators(r);
  const Matrix zero = Matrix::Zero(r.dim, r.dim);
  const Matrix id = Matrix::Identity(r.dim, r.dim);
  const auto& P = r.parity;
  std::vector<AuditEntry> out;
  auto add = [&](std::string id_, std::string group, const Matrix& m) { out.push_back({std::move(id_), std::move(group), max_abs(m)}); };
  auto eps_sum = [&](int a, int b, const std::array<Matrix, 3>& X) {
    Matrix s = zero;
    for (int c = 0; c < 3; ++c)
      if (const int e = detail::levi_civita(a, b, c)) s += static_cast<double>(e) * X[c];
    return s;
  };
  const std::string idx = "123";
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const std::string ab = std::string(1, idx[a]) + idx[b];
      add("LL-" + ab, "10", commutator(r.L[a], r.L[b]) - i * eps_sum(a, b, r.L));
      add("KL-" + ab, "10", commutator(r.K[a], r.L[b]) - i * eps_sum(a, b, r.K));
      add("KK-" + ab, "10", commutator(r.K[a], r.K[b]) + i * eps_sum(a, b, r.L));
    }
  add("W-A", "12", commutator(d.W, d.A));
  add("A-m", "12", commutator(d.A, d.m));
  add("m-W", "12", commutator(d.m, d.W));
  for (int a = 0; a < 3; ++a) {
    const std::string s(1, idx[a]);
    Matrix rhs = -2.0 * r.K[a];
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (const int e = detail::levi_civita(a, b, c)) rhs += -2.0 * i * static_cast<double>(e) * r.L[b] * r.K[c];
    add("W-K" + s, "13", commutator(d.W, r.K[a]) - rhs);
    add("A-K" + s, "13", commutator(d.A, r.K[a]) - rhs);
    add("W-L" + s, "13", commutator(d.W, r.L[a]));
    add("A-L" + s, "13", commutator(d.A, r.L[a]));
    add("m-K" + s, "13", commutator(d.m, r.K[a]));
    add("m-L" + s, "13", commutator(d.m, r.L[a]));
    add("B-K" + s, "15", commutator(d.B, r.K[a]));
    add("B-L" + s, "15", commutator(d.B, r.L[a]));
    add("P-L" + s, "parity", commutator(P, r.L[a]));
    add("P-K" + s, "parity", commutator(P, r.K[a]) + 2.0 * r.K[a] * P);
  }
  add("P-squared", "parity", P * P - id);
  add("B-P", "16", commutator(d.B, P));
  add("PmP", "17", P * d.m * P + d.m);
  add("B-M", "19", commutator(d.B, d.M));
  add("B-W", "19", commutator(d.B, d.W));
  add("M-W", "19", commutator(d.M, d.W));
  add("B-P", "19", commutator(d.B, P));
  add("M-P", "19", commutator(d.M, P));
  add("W-P", "19", commutator(d.W, P));
  return out;
}

/// Distance of a matrix from the nearest multiple of the identity, and that multiple.
struct ScalarCheck {
  std::complex<double> value;
  double deviation = 0.0;
};

inline ScalarCheck scalar_part(const Matrix& m) {
  const std::complex<double> v = m.trace() / static_cast<double>(m.rows());
  return {v, detail::max_abs(m - v * Matrix::Identity(m.rows(), m.cols()))};
}

struct N0Extraction {
  /// T^{ij} = -i [N_1^j, K^i] with N_1^j = 2i K^j P.
  std::array<std::array<Matrix, 3>, 3> tensor;
  Matrix n0;
  /// ||N0 - (4/3) sum_i K^i K^i P||, the Euclidean index contraction.
  double literal_residual = 0.0;
  /// ||N0 - (4/3) J^{0i} J_{0i} P|| with the spatial index lowered, i.e. N0 + (4/3) W P.
  double covariant_residual = 0.0;
  /// ||sum_i N_2^{ii}|| with N_2^{ij} = T^{ij} - delta^{ij} N0.
  double n2_trace = 0.0;
  /// ||N_2^{ij} - N_2^{ji}|| maximised over i, j.
  double n2_asymmetry = 0.0;
};

inline N0Extraction n0_extraction(const LorentzRep& r) {
  const std::complex<double> i(0.0, 1.0);
  N0Extraction e;
  e.n0 = Matrix::Zero(r.dim, r.dim);
  Matrix w = Matrix::Zero(r.dim, r.dim);
  for (int a = 0; a < 3; ++a) w += r.K[a] * r.K[a];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Matrix n1 = 2.0 * i * r.K[b] * r.parity;
      e.tensor[a][b] = -i * detail::commutator(n1, r.K[a]);
    }
  for (int a = 0; a < 3; ++a) e.n0 += e.tensor[a][a] / 3.0;
  const Matrix wp = w * r.parity;
  e.literal_residual = detail::max_abs(e.n0 - (4.0 / 3.0) * wp);
  e.covariant_residual = detail::max_abs(e.n0 + (4.0 / 3.0) * wp);
  Matrix trace = Matrix::Zero(r.dim, r.dim);
  for (int a = 0; a < 3; ++a) trace += e.tensor[a][a] - e.n0;
  e.n2_trace = detail::max_abs(trace);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) e.n2_asymmetry = std::max(e.n2_asymmetry, detail::max_abs(e.tensor[a][b] - e.tensor[b][a]));
  return e;
}

}  // namespace wilsonpar
