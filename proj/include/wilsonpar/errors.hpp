#pragma once

#include <stdexcept>
#include <string>

namespace wilsonpar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A denominator Pochhammer factor vanished before a series terminated.
class DenominatorPole : public Error {
 public:
  using Error::Error;
};

/// A series or adaptive scheme exceeded its work cap before meeting tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Case-B family evaluated where sqrt(B+1) is a positive integer (Gamma poles).
class DegenerateFamily : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the domain of a difference equation.
class DomainPole : public Error {
 public:
  using Error::Error;
};

/// A reduction-of-order lattice hit a zero of a denominator or of g_n.
class LatticePole : public Error {
 public:
  using Error::Error;
};

/// Least-squares system is numerically singular.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Spin label that is not a nonnegative half-integer.
class InvalidSpin : public Error {
 public:
  using Error::Error;
};

}  // namespace wilsonpar
