// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace emcap {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at (or numerically indistinguishable from) a singular
/// point of a kernel or transform.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Two operands live on incompatible grids or have mismatched dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Wavenumber grid does not cover the support of the transforms it samples.
class GridTooNarrowError : public Error {
 public:
  using Error::Error;
};

/// Matrix too ill-conditioned for a stable log-determinant.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Iterative method gave up. Carries the best estimate and its error bound so
/// callers can decide whether it is usable anyway.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, std::complex<double> estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}

  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> estimate_;
  double error_bound_;
};

}  // namespace emcap
