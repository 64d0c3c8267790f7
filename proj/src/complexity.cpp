#include "orthocomplex/complexity.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <utility>

namespace orthocomplex {

namespace {

constexpr double kInf = INFINITY;
const double kTwoPiE = 2.0 * M_PI * M_E;
const double kPiOverECubed = M_PI / (M_E * M_E * M_E);

void require_degree(int n, int minimum, const char* what) {
  if (n < minimum) {
    std::ostringstream msg;
    msg << what << " needs n >= " << minimum << ", got n = " << n;
    throw ArgumentError(msg.str());
  }
}

template <class F>
void fill(ReportEntry& slot, bool requested, F&& compute) {
  slot.requested = requested;
  if (!requested) return;
  try {
    slot.value = compute();
  } catch (const IntegrationError& e) {
    slot.value.reset();
    slot.error = e.what();
    slot.numeric_failure = true;
  } catch (const std::exception& e) {
    slot.value.reset();
    slot.error = e.what();
  }
}

MeasureValue combine(double value, std::initializer_list<MeasureValue> parts) {
  MeasureValue out{value, Method::closed_form, false};
  for (const MeasureValue& p : parts) {
    if (p.method == Method::numeric) out.method = Method::numeric;
    out.ill_conditioned = out.ill_conditioned || p.ill_conditioned;
  }
  return out;
}

}  // namespace

MeasureValue cramer_rao(const RakhmanovDensity& density) {
  const MeasureValue fisher = fisher_closed(density);
  if (fisher.is_infinite()) return {kInf, Method::closed_form, false};
  return {fisher.value * variance_closed(density), Method::closed_form, false};
}

MeasureValue fisher_shannon(const RakhmanovDensity& density, const NumericOptions& options) {
  const MeasureValue fisher = fisher_closed(density);
  if (fisher.is_infinite()) return {kInf, Method::closed_form, false};
  const double entropy = shannon_entropy_numeric(density, options).value;
  return {fisher.value * std::exp(2.0 * entropy) / kTwoPiE, Method::numeric, false};
}

MeasureValue lmc(const RakhmanovDensity& density, const NumericOptions& options) {
  const MeasureValue w2 = disequilibrium(density);
  const double entropy = shannon_entropy_numeric(density, options).value;
  return {w2.value * std::exp(entropy), Method::numeric, w2.ill_conditioned};
}

double n1_asymptotic(const PolynomialFamily& family, int n) {
  require_degree(n, 1, "Shannon-length asymptotics");
  switch (family.kind()) {
    case FamilyKind::hermite:
      return M_PI / M_E * std::sqrt(2.0 * n);
    case FamilyKind::laguerre:
      return 2.0 * M_PI * n / M_E;
    case FamilyKind::jacobi:
      return M_PI / M_E;
  }
  return NAN;
}

double w2_hermite_asymptotic(int n) {
  require_degree(n, 1, "Hermite disequilibrium asymptotics");
  return 2.0 / (M_PI * M_PI) / std::sqrt(2.0 * n) * std::log(static_cast<double>(n));
}

MeasureValue cfs_asymptotic(const PolynomialFamily& family, int n) {
  require_degree(n, 2, "Fisher-Shannon asymptotics");
  const double nn = n;
  const double cube = nn * nn * nn;
  const double a = family.alpha();
  const double b = family.beta();
  MeasureValue out{kInf, Method::asymptotic, false};
  switch (family.kind()) {
    case FamilyKind::hermite:
      out.value = 4.0 * kPiOverECubed * nn * nn;
      break;
    case FamilyKind::laguerre:
      if (a == 0.0) {
        out.value = 8.0 * kPiOverECubed * cube;
      } else if (a > 1.0) {
        out.value = 4.0 * a / (a * a - 1.0) * kPiOverECubed * cube;
      }
      break;
    case FamilyKind::jacobi: {
      auto one_sided = [&](double p) {
        return 0.25 * kPiOverECubed * (1.0 / (p + 1.0) + 4.0 + 1.0 / (p - 1.0)) * cube;
      };
      if (a == 0.0 && b == 0.0) {
        out.value = 2.0 * kPiOverECubed * cube;
      } else if (a == 0.0 && b > 1.0) {
        out.value = one_sided(b);
      } else if (b == 0.0 && a > 1.0) {
        out.value = one_sided(a);
      } else if (a > 1.0 && b > 1.0) {
        out.value = 0.5 * kPiOverECubed * (b / (b * b - 1.0) + a / (a * a - 1.0)) * cube;
      }
      break;
    }
  }
  return out;
}

double clmc_hermite_asymptotic(int n) {
  require_degree(n, 2, "Hermite LMC asymptotics");
  return 2.0 / (M_PI * M_E) * std::log(static_cast<double>(n));
}

std::string measure_key(Measure m) {
  switch (m) {
    case Measure::variance:
      return "variance";
    case Measure::fisher:
      return "fisher";
    case Measure::shannon_entropy:
      return "shannon_entropy";
    case Measure::w2:
      return "w2";
    case Measure::n1:
      return "n1";
    case Measure::c_cr:
      return "c_cr";
    case Measure::c_fs:
      return "c_fs";
    case Measure::c_lmc:
      return "c_lmc";
  }
  return "unknown";
}

const ReportEntry& ComplexityReport::entry(Measure m) const {
  switch (m) {
    case Measure::variance:
      return variance;
    case Measure::fisher:
      return fisher;
    case Measure::shannon_entropy:
      return shannon_entropy;
    case Measure::w2:
      return w2;
    case Measure::n1:
      return n1;
    case Measure::c_cr:
      return c_cr;
    case Measure::c_fs:
      return c_fs;
    case Measure::c_lmc:
      return c_lmc;
  }
  return variance;
}

ReportEntry& ComplexityReport::entry(Measure m) {
  return const_cast<ReportEntry&>(std::as_const(*this).entry(m));
}

bool ComplexityReport::has_failures() const {
  for (int i = 0; i < kMeasureCount; ++i) {
    const ReportEntry& e = entry(static_cast<Measure>(i));
    if (e.requested && !e.value) return true;
  }
  return false;
}

bool ComplexityReport::has_numeric_failures() const {
  for (int i = 0; i < kMeasureCount; ++i) {
    const ReportEntry& e = entry(static_cast<Measure>(i));
    if (e.requested && !e.value && e.numeric_failure) return true;
  }
  return false;
}

ComplexityReport report(const RakhmanovDensity& density, const NumericOptions& options,
                        MeasureSet measures) {
  auto wants = [&measures](Measure m) { return measures.test(static_cast<std::size_t>(m)); };
  ComplexityReport out{density.family(), density.degree(), {}, {}, {}, {}, {}, {}, {}, {}};

  const bool need_entropy = wants(Measure::shannon_entropy) || wants(Measure::n1) ||
                            wants(Measure::c_fs) || wants(Measure::c_lmc);
  ReportEntry entropy;
  fill(entropy, need_entropy, [&] {
    return MeasureValue{shannon_entropy_numeric(density, options).value, Method::numeric, false};
  });
  ReportEntry fisher;
  fill(fisher, true, [&] { return fisher_closed(density); });
  ReportEntry w2;
  fill(w2, wants(Measure::w2) || wants(Measure::c_lmc), [&] { return disequilibrium(density); });

  auto propagate = [](const ReportEntry& source, ReportEntry& target) {
    target.value.reset();
    target.error = source.error;
    target.numeric_failure = source.numeric_failure;
  };

  fill(out.variance, wants(Measure::variance),
       [&] { return MeasureValue{variance_closed(density), Method::closed_form, false}; });
  out.fisher = fisher;
  out.fisher.requested = wants(Measure::fisher);
  if (!out.fisher.requested) out.fisher.value.reset();

  out.shannon_entropy = entropy;
  out.shannon_entropy.requested = wants(Measure::shannon_entropy);
  if (!out.shannon_entropy.requested) out.shannon_entropy.value.reset();

  out.w2 = w2;
  out.w2.requested = wants(Measure::w2);
  if (!out.w2.requested) out.w2.value.reset();

  out.n1.requested = wants(Measure::n1);
  if (out.n1.requested) {
    if (entropy.value) {
      out.n1.value = MeasureValue{std::exp(entropy.value->value), Method::numeric, false};
    } else {
      propagate(entropy, out.n1);
    }
  }

  fill(out.c_cr, wants(Measure::c_cr), [&] { return cramer_rao(density); });

  out.c_fs.requested = wants(Measure::c_fs);
  if (out.c_fs.requested) {
    if (fisher.value && fisher.value->is_infinite()) {
      out.c_fs.value = MeasureValue{kInf, Method::closed_form, false};
    } else if (!entropy.value) {
      propagate(entropy, out.c_fs);
    } else {
      const double value = fisher.value->value * std::exp(2.0 * entropy.value->value) / kTwoPiE;
      out.c_fs.value = combine(value, {*fisher.value, *entropy.value});
    }
  }

  out.c_lmc.requested = wants(Measure::c_lmc);
  if (out.c_lmc.requested) {
    if (!w2.value) {
      propagate(w2, out.c_lmc);
    } else if (!entropy.value) {
      propagate(entropy, out.c_lmc);
    } else {
      const double value = w2.value->value * std::exp(entropy.value->value);
      out.c_lmc.value = combine(value, {*w2.value, *entropy.value});
    }
  }
  return out;
}

NumericComplexities numeric_complexities(const DensityView& view, const NumericOptions& options) {
  const double variance = variance_numeric(view);
  const QuadratureResult fisher = fisher_numeric(view, options);
  if (!fisher.converged) {
    throw IntegrationError("Fisher information is numerically divergent", fisher.value,
                           fisher.error_estimate);
  }
  const double entropy = shannon_entropy_numeric(view, options).value;
  const double w2 = entropic_moment_numeric(view, 2.0, options).value;
  return {fisher.value * variance, fisher.value * std::exp(2.0 * entropy) / kTwoPiE,
          w2 * std::exp(entropy)};
}

}  // namespace orthocomplex
