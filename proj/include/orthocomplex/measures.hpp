#pragma once

// Single spreading measures of Rakhmanov densities: variance, Fisher
// information, Shannon entropy, entropic moments W_q and Renyi entropies,
// the disequilibrium W_2 through its combinatorial representations, and the
// derived lengths.

#include <optional>
#include <string>

#include "orthocomplex/polycore.hpp"

namespace orthocomplex {

enum class Method { closed_form, numeric, asymptotic };

std::string to_string(Method method);

/// Extended-real measure value (finite or +inf) with its provenance.
struct MeasureValue {
  double value = 0.0;
  Method method = Method::closed_form;
  bool ill_conditioned = false;

  bool is_infinite() const noexcept { return value == INFINITY; }
};

struct NumericOptions {
  /// Target absolute error for adaptive quadrature (relative once the
  /// integral's L1 norm exceeds one).
  double tolerance = 1e-9;
};

/// The density x -> lambda * rho(lambda * x). `scale` = 1 is rho itself.
/// Numeric routines integrate the transformed integrand directly, which
/// makes scale-invariance a genuine check of the pipeline.
class DensityView {
 public:
  DensityView(RakhmanovDensity density, double scale = 1.0);  // NOLINT(implicit)

  const RakhmanovDensity& density() const noexcept { return density_; }
  double scale() const noexcept { return scale_; }

 private:
  RakhmanovDensity density_;
  double scale_;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

struct EntropicProfile {
  double q;
  double moment;         // W_q
  double renyi_entropy;  // R_q
  double renyi_length;   // N_q
};

struct Lengths {
  double standard_deviation;
  double shannon_length;
  /// Empty when the Fisher information is infinite.
  std::optional<double> fisher_length;
};

// Closed forms.
double variance_closed(const RakhmanovDensity& density);
MeasureValue fisher_closed(const RakhmanovDensity& density);

// Quadrature oracles.
double variance_numeric(const DensityView& view);

/// Adaptive quadrature of rho'^2 / rho. `converged == false` means the
/// integral is numerically divergent (or the tolerance could not be met).
QuadratureResult fisher_numeric(const DensityView& view, const NumericOptions& options = {});

/// -int rho ln rho, split at the zeros of p_n. Throws IntegrationError when
/// the tolerance is not reached.
QuadratureResult shannon_entropy_numeric(const DensityView& view,
                                         const NumericOptions& options = {});

/// W_q = int rho^q. Integer q uses an exact Gauss rule for w^q; other q > 0
/// use endpoint-aware adaptive quadrature. Throws DomainError when the
/// endpoint exponent q*alpha (or q*beta) is <= -1.
QuadratureResult entropic_moment_numeric(const DensityView& view, double q,
                                         const NumericOptions& options = {});

EntropicProfile renyi_profile(const DensityView& view, double q,
                              const NumericOptions& options = {});

// Disequilibrium W_2 = int rho^2 via its terminating series forms.
// All require alpha > -1/2 (and beta > -1/2).
MeasureValue disequilibrium_laguerre_lauricella(int n, double alpha);
MeasureValue disequilibrium_laguerre_bell(int n, double alpha);
MeasureValue disequilibrium_jacobi_sd(int n, double alpha, double beta);
MeasureValue disequilibrium_jacobi_bell(int n, double alpha, double beta);

/// Degree at or below which the Bell representation is the default W_2 path.
inline constexpr int kBellDegreeLimit = 12;
/// The Bell forms are flagged ill-conditioned when the sum over absolute
/// values of every intermediate exceeds |W_2| by more than this factor.
inline constexpr double kBellConditionLimit = 1e16;

/// Default W_2: Bell representation for n <= kBellDegreeLimit unless it is
/// ill-conditioned, exact quadrature otherwise (and always for Hermite).
MeasureValue disequilibrium(const RakhmanovDensity& density);

Lengths lengths(const RakhmanovDensity& density, const NumericOptions& options = {});

}  // namespace orthocomplex
