#pragma once

#include "wilsonpar/rational.hpp"

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

namespace wilsonpar {

template <class T>
class Polynomial;

namespace detail {

template <class T>
struct is_polynomial : std::false_type {};
template <class T>
struct is_polynomial<Polynomial<T>> : std::true_type {};

}  // namespace detail

/// Converts a coefficient into the scalar type used for evaluation.
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, Rational>) {
    if constexpr (std::is_same_v<To, double>) return to_double(v);
    else if constexpr (std::is_same_v<To, std::complex<double>>) return {to_double(v), 0.0};
    else if constexpr (detail::is_polynomial<To>::value) return To::constant(scalar_cast<typename To::coefficient_type>(v));
    else return To(v);
  } else if constexpr (detail::is_polynomial<To>::value) {
    return To::constant(scalar_cast<typename To::coefficient_type>(v));
  } else {
    return To(v);
  }
}

/// Dense univariate polynomial with coefficients in a commutative ring T.
/// Coefficient k multiplies the k-th power of the variable. The variable is
/// whatever the caller says it is; throughout this library it is usually a
/// squared quantity (x^2, z^2) or W.
///
/// The trailing coefficient is nonzero unless the polynomial is zero, in
/// which case the coefficient list is empty and degree() is -1.
template <class T>
class Polynomial {
 public:
  using coefficient_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }

  /// value * var^power
  static Polynomial monomial(T value, std::size_t power) {
    std::vector<T> c(power + 1);
    c[power] = std::move(value);
    return Polynomial(std::move(c));
  }

  /// The polynomial "var" itself.
  static Polynomial variable() { return monomial(scalar_cast<T>(Rational(1)), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }

  /// Coefficient of var^k; zero beyond the degree.
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }
  const T& leading() const { return c_.back(); }

  template <class U>
  U operator()(const U& x) const {
    U acc = scalar_cast<U>(T{});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + scalar_cast<U>(*it);
    return acc;
  }

  /// p(q(var)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  template <class F>
  auto map(F&& f) const -> Polynomial<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using R = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<R> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return Polynomial<R>(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  Polynomial& operator/=(const T& s) {
    for (auto& v : c_) v /= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const T& s) { return a /= s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Divides through by the leading coefficient.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this / leading();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }

  std::vector<T> c_;
};

using RationalPolynomial = Polynomial<Rational>;
/// Polynomial whose coefficients are themselves polynomials in the symbol B.
using BParamPolynomial = Polynomial<RationalPolynomial>;
using RealPolynomial = Polynomial<double>;

/// Horner evaluation of an exact polynomial at a complex point. The caller
/// supplies the already-squared variable where applicable.
inline std::complex<double> poly_eval(const RationalPolynomial& p, std::complex<double> u) {
  return p(u);
}

inline RealPolynomial to_real(const RationalPolynomial& p) {
  return p.map([](const Rational& r) { return to_double(r); });
}

/// Substitutes a value for B in every coefficient.
inline RationalPolynomial substitute_b(const BParamPolynomial& p, const Rational& b) {
  return p.map([&](const RationalPolynomial& c) { return c(b); });
}

inline RealPolynomial substitute_b(const BParamPolynomial& p, double b) {
  return p.map([&](const RationalPolynomial& c) { return to_real(c)(b); });
}

/// Embeds a B-free polynomial as a B-polynomial with constant coefficients.
inline BParamPolynomial lift_b(const RationalPolynomial& p) {
  return p.map([](const Rational& r) { return RationalPolynomial::constant(r); });
}

}  // namespace wilsonpar
