#pragma once

#include <stdexcept>
#include <string>

namespace wavecorr {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters or run configuration (unknown filter name, level out of
/// range, malformed synthetic spec, inconsistent window plan). CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Defective input data (malformed CSV, non-positive price, non-monotone
/// timestamps, zero-variance series). CLI exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure (eigensolver did not converge, singular or
/// ill-conditioned covariance, degenerate expected returns). CLI exit code 4.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavecorr
