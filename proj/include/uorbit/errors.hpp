#pragma once

#include <stdexcept>
#include <string>

namespace uorbit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (non-square input, mismatched dimensions or lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar function was evaluated outside its domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double value) : Error(what), value_(value) {}
  explicit DomainError(const std::string& what) : Error(what) {}
  double value() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

/// An input failed a structural check. `kind()` says which one.
class ValidationError : public Error {
 public:
  enum class Kind {
    kNonFinite,
    kNonHermitian,
    kNonSkewHermitian,
    kNotUnitary,
    kNotPsd,
    kBadTrace,
    kNotProbability,
    kNotBistochastic,
    kNotPermutation,
  };

  ValidationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// An iterative method ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A full-rank operand was required.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A requested value lies outside the attainable interval [lo, hi].
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double lo, double hi) : Error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// An inverse square root was requested where the support changes.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double eigenvalue) : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Birkhoff extraction could not find a perfect matching while mass remained.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or command line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace uorbit
