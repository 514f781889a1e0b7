#pragma once

#include <stdexcept>
#include <string>

namespace radialmp {

/// Invalid input parameters (bounds, exponents outside their admissible range).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the domain of a function (r <= 0, table hull, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ExtrapolationRefused : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Log-log regression did not look like a power law.
class FitFailed : public std::runtime_error {
 public:
  FitFailed(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Two discrete functions live on different grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nehari ray scaling impossible (u_+ vanishes where K > 0).
class NoScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A discrete function violates a support requirement.
class SupportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radialmp
