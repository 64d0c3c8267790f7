#pragma once

// Extended-precision evaluation kernel shared by polycore and the
// quadrature code in measures. Not part of the public API.

#include <cmath>
#include <utility>
#include <vector>

#include "orthocomplex/polycore.hpp"

namespace orthocomplex::detail {

using ext = long double;

struct LogWeight {
  ext value;       // ln w(x)
  ext derivative;  // w'(x) / w(x)
};

/// Values of sqrt(w) p_n and sqrt(w) p_n' together with ln w and w'/w.
struct ScaledValue {
  ext p;
  ext dp;
  LogWeight log_weight;

  ext log_rho() const { return 2.0L * std::log(std::fabs(p)); }
  ext rho() const { return p == 0.0L ? 0.0L : std::exp(log_rho()); }
};

struct Recurrence {
  PolynomialFamily family;
  std::vector<ext> a;  // a_0 .. a_{n_max}
  std::vector<ext> b;  // b_0 = sqrt(mass), b_1 .. b_{n_max+1}
  ext log_mass;

  Recurrence(const PolynomialFamily& family, int n_max);

  /// p_n(x) and p_n'(x), classical sign convention.
  std::pair<ext, ext> value_and_derivative(int n, ext x) const;
  ext value(int n, ext x) const { return value_and_derivative(n, x).first; }

  /// sum_{k<m} p_k(x)^2 (the inverse Christoffel function).
  ext christoffel_sum(int m, ext x) const;

  /// ln w and w'/w at x. `gap_lower` = x - lower, `gap_upper` = upper - x
  /// for the finite endpoints; passing them separately keeps points near an
  /// endpoint accurate.
  LogWeight log_weight(ext x, ext gap_lower, ext gap_upper) const;
  LogWeight log_weight(ext x) const { return log_weight(x, x - lower(), upper() - x); }

  ext lower() const;
  ext upper() const;

  ScaledValue scaled(int n, ext x, ext gap_lower, ext gap_upper) const;
  ScaledValue scaled(int n, ext x) const { return scaled(n, x, x - lower(), upper() - x); }
};

/// Zeros of p_n from the n x n Jacobi matrix, polished by Newton steps.
std::vector<ext> recurrence_zeros(const Recurrence& rec, int n);

}  // namespace orthocomplex::detail
