#pragma once

// Orthonormal Hermite, Laguerre and Jacobi polynomials: three-term
// recurrences, pointwise evaluation of p_n, p_n' and the Rakhmanov density
// rho = w p_n^2, zeros, and Gauss rules for the classical weights.
//
// Normalization is orthonormal throughout: int p_j p_k w dx = delta_jk.
// Signs follow the classical polynomials (Laguerre L_n^(a) has leading
// coefficient (-1)^n / n!), so p_n of the Laguerre family is positive at 0.

#include <cmath>
#include <concepts>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "orthocomplex/errors.hpp"

namespace orthocomplex {

enum class FamilyKind { hermite, laguerre, jacobi };

struct Interval {
  double lower;
  double upper;
};

/// A classical weight w(x) together with its orthonormal polynomial system.
///   hermite          w = exp(-x^2)               on (-inf, inf)
///   laguerre(a)      w = x^a exp(-x)             on (0, inf),  a > -1
///   jacobi(a, b)     w = (1-x)^a (1+x)^b         on (-1, 1),   a, b > -1
class PolynomialFamily {
 public:
  static PolynomialFamily hermite();
  static PolynomialFamily laguerre(double alpha);
  static PolynomialFamily jacobi(double alpha, double beta);

  FamilyKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  Interval support() const noexcept;

  /// ln of the zeroth weight moment, int w dx.
  double log_weight_mass() const;

  /// Short human-readable tag, e.g. "jacobi(2,0.5)".
  std::string describe() const;

  bool operator==(const PolynomialFamily&) const = default;

 private:
  PolynomialFamily(FamilyKind kind, double alpha, double beta)
      : kind_(kind), alpha_(alpha), beta_(beta) {}

  FamilyKind kind_;
  double alpha_;
  double beta_;
};

std::string to_string(FamilyKind kind);

namespace detail {
struct Recurrence;
}

/// rho(x) = w(x) p_n(x)^2 for a family and a degree n >= 0.
class RakhmanovDensity {
 public:
  RakhmanovDensity(PolynomialFamily family, int degree);

  const PolynomialFamily& family() const noexcept { return family_; }
  int degree() const noexcept { return degree_; }

  const detail::Recurrence& recurrence() const noexcept { return *recurrence_; }

 private:
  PolynomialFamily family_;
  int degree_;
  std::shared_ptr<const detail::Recurrence> recurrence_;
};

/// Coefficients of x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
/// Entry k holds (a_k, b_k); b_0 is set to sqrt(int w dx) so that p_0 = 1/b_0.
struct RecurrencePair {
  double a;
  double b;
};

std::vector<RecurrencePair> recurrence_coefficients(const PolynomialFamily& family, int n_max);

struct PointEvaluation {
  double p;
  double dp;
  double rho;
};

/// p_n(x), p_n'(x) and rho(x). Throws DomainError for x outside the closed
/// support, or at an endpoint where the weight is infinite.
PointEvaluation evaluate(const RakhmanovDensity& density, double x);

/// The n zeros of p_n in ascending order (empty for n = 0).
std::vector<double> zeros(const RakhmanovDensity& density);

struct GaussRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive
  PolynomialFamily weight;
  int order;
};

/// m-point Gauss rule for the weight of `weight` (Golub-Welsch). Rules are
/// memoized; the returned object is an independent copy.
GaussRule gauss_rule(const PolynomialFamily& weight, int order);

/// sum_i w_i f(x_i) for the m-point rule. Throws IntegrationError naming the
/// node if f is not finite there.
template <class F>
  requires std::invocable<F&, double>
double integrate_against_weight(const PolynomialFamily& weight, F&& f, int order) {
  const GaussRule rule = gauss_rule(weight, order);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double value = static_cast<double>(f(rule.nodes[i]));
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "non-finite integrand at node x=" << rule.nodes[i] << " of the " << order
          << "-point " << weight.describe() << " rule";
      throw IntegrationError(msg.str(), static_cast<double>(sum), INFINITY);
    }
    sum += static_cast<long double>(rule.weights[i]) * value;
  }
  return static_cast<double>(sum);
}

}  // namespace orthocomplex
