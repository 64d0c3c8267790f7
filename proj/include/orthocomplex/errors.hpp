#pragma once

#include <stdexcept>
#include <string>

namespace orthocomplex {

/// Input outside the mathematical domain of an operation (bad family
/// parameters, x outside the support, divergent endpoint exponents).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Structurally invalid arguments (wrong lengths, nonterminating series).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature failed to reach its tolerance or met a non-finite value.
/// The best available estimate is attached.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace orthocomplex
