#pragma once

// Piecewise adaptive integration of functionals of a Rakhmanov density.
// The support is split at the zeros of p_n; each piece is handed to the
// Boost.Math integrator suited to its shape.

#include <functional>

#include "orthocomplex/detail/recurrence.hpp"
#include "orthocomplex/measures.hpp"

namespace orthocomplex::detail {

/// Local data of the viewed density lambda * rho(lambda x) at one point.
struct LocalDensity {
  ext log_rho;       // ln of the viewed density
  ext fisher_term;   // (d/dx rho_view)^2 / rho_view
};

using LocalIntegrand = std::function<ext(const LocalDensity&)>;

enum class PieceStyle {
  smooth,    // integrand vanishes to second order at zeros (entropy, Fisher)
  singular,  // algebraic cusps at zeros (rho^q for non-integer q)
};

/// The integrand behaves like u^power in the distance u to each finite
/// endpoint. Negative powers are flattened by the substitution u = t^m.
struct EndpointPowers {
  double lower = 0.0;
  double upper = 0.0;
};

QuadratureResult integrate_density(const DensityView& view, const LocalIntegrand& integrand,
                                   PieceStyle style, const NumericOptions& options,
                                   EndpointPowers powers = {});

}  // namespace orthocomplex::detail
