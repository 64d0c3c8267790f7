#pragma once

// Composite complexity measures of Rakhmanov densities:
//   Cramer-Rao      C_CR  = F V
//   Fisher-Shannon  C_FS  = F exp(2S) / (2 pi e)
//   LMC             C_LMC = W_2 exp(S)
// plus the large-n laws for the Shannon length and the composites. The
// asymptotic evaluators are separate functions and never feed a report.

#include <bitset>
#include <optional>
#include <string>

#include "orthocomplex/measures.hpp"

namespace orthocomplex {

MeasureValue cramer_rao(const RakhmanovDensity& density);
MeasureValue fisher_shannon(const RakhmanovDensity& density, const NumericOptions& options = {});
/// Throws DomainError where the disequilibrium is undefined (alpha or beta <= -1/2).
MeasureValue lmc(const RakhmanovDensity& density, const NumericOptions& options = {});

// Leading-order large-n laws. n1_asymptotic and w2_hermite_asymptotic need
// n >= 1; the composite laws need n >= 2.
double n1_asymptotic(const PolynomialFamily& family, int n);
double w2_hermite_asymptotic(int n);
MeasureValue cfs_asymptotic(const PolynomialFamily& family, int n);
double clmc_hermite_asymptotic(int n);

enum class Measure { variance, fisher, shannon_entropy, w2, n1, c_cr, c_fs, c_lmc };
inline constexpr int kMeasureCount = 8;
using MeasureSet = std::bitset<kMeasureCount>;

inline MeasureSet all_measures() { return MeasureSet{}.set(); }
std::string measure_key(Measure m);

/// A measure slot of a report: either a value or the reason it is missing.
struct ReportEntry {
  std::optional<MeasureValue> value;
  std::string error;
  bool requested = true;
  /// The error came from quadrature (as opposed to a parameter outside the
  /// measure's domain).
  bool numeric_failure = false;
};

struct ComplexityReport {
  PolynomialFamily family;
  int degree;
  ReportEntry variance;
  ReportEntry fisher;
  ReportEntry shannon_entropy;
  ReportEntry w2;
  ReportEntry n1;
  ReportEntry c_cr;
  ReportEntry c_fs;
  ReportEntry c_lmc;

  const ReportEntry& entry(Measure m) const;
  ReportEntry& entry(Measure m);
  /// True when a requested entry could not be computed.
  bool has_failures() const;
  bool has_numeric_failures() const;
};

ComplexityReport report(const RakhmanovDensity& density, const NumericOptions& options = {},
                        MeasureSet measures = all_measures());

/// All three composites from quadrature alone (numeric V, F, S and W_2).
struct NumericComplexities {
  double cramer_rao;
  double fisher_shannon;
  double lmc;
};

NumericComplexities numeric_complexities(const DensityView& view,
                                         const NumericOptions& options = {});

}  // namespace orthocomplex
