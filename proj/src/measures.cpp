#include "orthocomplex/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "density_quadrature.hpp"
#include "orthocomplex/detail/recurrence.hpp"
#include "orthocomplex/specfun.hpp"

namespace orthocomplex {

namespace {

using detail::ext;

constexpr double kInf = std::numeric_limits<double>::infinity();

ext lg(ext x) { return std::lgamma(x); }

ext log_binomial(ext top, ext k) { return lg(top + 1.0L) - lg(k + 1.0L) - lg(top - k + 1.0L); }

bool is_positive_integer(double q) { return q >= 1.0 && q == std::floor(q) && q <= 1024.0; }

void require_disequilibrium_domain(int n, double alpha, double beta, bool jacobi) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  if (!(alpha > -0.5) || (jacobi && !(beta > -0.5))) {
    std::ostringstream msg;
    msg << "disequilibrium requires alpha > -1/2" << (jacobi ? " and beta > -1/2" : "")
        << ", got alpha = " << alpha;
    if (jacobi) msg << ", beta = " << beta;
    throw DomainError(msg.str());
  }
}

void require_endpoint_exponents(const PolynomialFamily& family, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << "entropic moment order must satisfy q > 0, got q = " << q;
    throw DomainError(msg.str());
  }
  std::ostringstream msg;
  if (family.kind() == FamilyKind::laguerre && !(q * family.alpha() > -1.0)) {
    msg << "entropic moment W_q diverges at x = 0: requires q*alpha > -1, got q*alpha = "
        << q * family.alpha();
    throw DomainError(msg.str());
  }
  if (family.kind() == FamilyKind::jacobi &&
      !(q * family.alpha() > -1.0 && q * family.beta() > -1.0)) {
    msg << "entropic moment W_q diverges at an endpoint: requires min(q*alpha, q*beta) > -1, got "
        << "q*alpha = " << q * family.alpha() << ", q*beta = " << q * family.beta();
    throw DomainError(msg.str());
  }
}

// rho^k behaves like u^(k a) at an endpoint whose weight exponent is a.
detail::EndpointPowers endpoint_powers(const PolynomialFamily& family, double k) {
  switch (family.kind()) {
    case FamilyKind::hermite:
      return {};
    case FamilyKind::laguerre:
      return {k * family.alpha(), 0.0};
    case FamilyKind::jacobi:
      return {k * family.beta(), k * family.alpha()};
  }
  return {};
}

// Exact int rho^q for integer q: Gauss rule for w^q after the substitution
// that maps w^q back onto a classical weight.
double integer_moment(const RakhmanovDensity& density, int q, double scale) {
  const PolynomialFamily& fam = density.family();
  const int n = density.degree();
  const detail::Recurrence& rec = density.recurrence();
  const int order = q * n + 1;
  const ext qq = q;
  PolynomialFamily weight = fam;
  ext node_scale = 1.0L;
  ext prefactor = 1.0L;
  switch (fam.kind()) {
    case FamilyKind::hermite:
      node_scale = 1.0L / std::sqrt(qq);
      prefactor = node_scale;
      break;
    case FamilyKind::laguerre:
      weight = PolynomialFamily::laguerre(q * fam.alpha());
      node_scale = 1.0L / qq;
      prefactor = std::pow(qq, -(qq * fam.alpha() + 1.0L));
      break;
    case FamilyKind::jacobi:
      weight = PolynomialFamily::jacobi(q * fam.alpha(), q * fam.beta());
      break;
  }
  const GaussRule rule = gauss_rule(weight, order);
  CompensatedSum<ext> sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const ext p = rec.value(n, node_scale * rule.nodes[i]);
    sum.add(static_cast<ext>(rule.weights[i]) * std::pow(p * p, qq));
  }
  // lambda^(q-1) from rho_view = lambda rho(lambda x).
  return static_cast<double>(prefactor * sum.value() *
                             std::pow(static_cast<ext>(scale), qq - 1.0L));
}

// Coefficient-of-x^k route: W_2 = sum_k [4!/(k+4)!] B_{k+4,4}(1!c_0, 2!c_1, ...) m_k.
// The inputs arrive with their Gamma-function prefactors stripped, so every
// wide_real entry is a finite product of rationals in alpha and beta. The
// `abs` entries are the same sums taken over absolute values.
struct BellInputs {
  std::vector<wide_real> coefficients;
  std::vector<wide_real> coefficient_abs;
  std::vector<wide_real> moments;
  std::vector<wide_real> moment_abs;
};

MeasureValue bell_sum(const BellInputs& in, int n, ext log_prefactor) {
  const int k_max = 4 * n;
  std::vector<wide_real> a(static_cast<std::size_t>(n) + 1);
  std::vector<wide_real> a_abs(a.size());
  wide_real factorial = 1;
  for (int j = 1; j <= n + 1; ++j) {
    factorial *= j;
    const auto t = static_cast<std::size_t>(j) - 1;
    a[t] = factorial * in.coefficients[t];
    a_abs[t] = factorial * in.coefficient_abs[t];
  }
  const auto bell = partial_bell_table(std::span<const wide_real>(a), k_max + 4, 4);
  const auto bell_abs = partial_bell_table(std::span<const wide_real>(a_abs), k_max + 4, 4);
  CompensatedSum<wide_real> sum;
  wide_real shadow = 0;
  wide_real scale = 1;  // 4! / (k+4)!
  for (int k = 0; k <= k_max; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    scale /= k + 4 == 4 ? 1 : k + 4;
    sum.add(scale * bell[kk + 4][4] * in.moments[kk]);
    shadow += scale * bell_abs[kk + 4][4] * in.moment_abs[kk];
  }
  const wide_real value = sum.value();
  MeasureValue out;
  out.value = static_cast<double>(std::exp(log_prefactor) * static_cast<ext>(value));
  out.method = Method::closed_form;
  // shadow / |value| is the condition number of the whole evaluation.
  out.ill_conditioned = !(shadow <= kBellConditionLimit * abs(value));
  return out;
}

double jacobi_fisher_alpha_zero(double n, double beta) {
  return (2.0 * n + beta + 1.0) / 4.0 *
         (n * n / (beta + 1.0) + n + (4.0 * n + 1.0) * (n + beta + 1.0) +
          (n + 1.0) * (n + 1.0) / (beta - 1.0));
}

double jacobi_fisher_both(double n, double alpha, double beta) {
  const double s = alpha + beta;
  return (2.0 * n + s + 1.0) / (4.0 * (n + s - 1.0)) *
         (n * (n + s - 1.0) * ((n + alpha) / (beta + 1.0) + 2.0 + (n + beta) / (alpha + 1.0)) +
          (n + 1.0) * (n + s) * ((n + alpha) / (beta - 1.0) + 2.0 + (n + beta) / (alpha - 1.0)));
}

// b_k^2 term of the Jacobi variance; k = 0 contributes nothing and k = 1
// carries the (k + alpha + beta) cancellation.
double jacobi_variance_term(double k, double alpha, double beta) {
  if (k == 0.0) return 0.0;
  const double s = alpha + beta;
  if (k == 1.0) return 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
  const double t = 2.0 * k + s;
  return 4.0 * k * (k + alpha) * (k + beta) * (k + s) / ((t - 1.0) * t * t * (t + 1.0));
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::closed_form:
      return "closed-form";
    case Method::numeric:
      return "numeric";
    case Method::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

DensityView::DensityView(RakhmanovDensity density, double scale)
    : density_(std::move(density)), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ArgumentError("view scale must be positive");
}

double variance_closed(const RakhmanovDensity& density) {
  const double n = density.degree();
  const PolynomialFamily& fam = density.family();
  switch (fam.kind()) {
    case FamilyKind::hermite:
      return n + 0.5;
    case FamilyKind::laguerre: {
      const double a = fam.alpha();
      return 2.0 * n * n + 2.0 * (a + 1.0) * n + a + 1.0;
    }
    case FamilyKind::jacobi:
      return jacobi_variance_term(n + 1.0, fam.alpha(), fam.beta()) +
             jacobi_variance_term(n, fam.alpha(), fam.beta());
  }
  return 0.0;
}

MeasureValue fisher_closed(const RakhmanovDensity& density) {
  const double n = density.degree();
  const PolynomialFamily& fam = density.family();
  const double a = fam.alpha();
  const double b = fam.beta();
  MeasureValue out{kInf, Method::closed_form, false};
  switch (fam.kind()) {
    case FamilyKind::hermite:
      out.value = 4.0 * n + 2.0;
      break;
    case FamilyKind::laguerre:
      if (a == 0.0) {
        out.value = 4.0 * n + 1.0;
      } else if (a > 1.0) {
        out.value = ((2.0 * n + 1.0) * a + 1.0) / (a * a - 1.0);
      }
      break;
    case FamilyKind::jacobi:
      if (a == 0.0 && b == 0.0) {
        out.value = 2.0 * n * (n + 1.0) * (2.0 * n + 1.0);
      } else if (a == 0.0 && b > 1.0) {
        out.value = jacobi_fisher_alpha_zero(n, b);
      } else if (b == 0.0 && a > 1.0) {
        // x -> -x swaps alpha and beta.
        out.value = jacobi_fisher_alpha_zero(n, a);
      } else if (a > 1.0 && b > 1.0) {
        out.value = jacobi_fisher_both(n, a, b);
      }
      break;
  }
  return out;
}

double variance_numeric(const DensityView& view) {
  const RakhmanovDensity& density = view.density();
  const int n = density.degree();
  const GaussRule rule = gauss_rule(density.family(), n + 2);
  const detail::Recurrence& rec = density.recurrence();
  const ext inv_scale = 1.0L / static_cast<ext>(view.scale());
  CompensatedSum<ext> first;
  CompensatedSum<ext> second;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const ext t = rule.nodes[i];
    const ext p = rec.value(n, t);
    const ext mass = static_cast<ext>(rule.weights[i]) * p * p;
    const ext x = t * inv_scale;
    first.add(mass * x);
    second.add(mass * x * x);
  }
  const ext mean = first.value();
  return static_cast<double>(second.value() - mean * mean);
}

QuadratureResult fisher_numeric(const DensityView& view, const NumericOptions& options) {
  const detail::LocalIntegrand integrand = [](const detail::LocalDensity& local) {
    return local.fisher_term;
  };
  try {
    return detail::integrate_density(view, integrand, detail::PieceStyle::smooth, options);
  } catch (const std::exception&) {
    // Non-finite integrand values near an endpoint: the integral diverges.
    return {kInf, kInf, false};
  }
}

QuadratureResult shannon_entropy_numeric(const DensityView& view, const NumericOptions& options) {
  const detail::LocalIntegrand integrand = [](const detail::LocalDensity& local) -> ext {
    if (!std::isfinite(local.log_rho)) return 0.0L;
    return -std::exp(local.log_rho) * local.log_rho;
  };
  QuadratureResult r;
  try {
    r = detail::integrate_density(view, integrand, detail::PieceStyle::smooth, options,
                                  endpoint_powers(view.density().family(), 1.0));
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("Shannon entropy quadrature failed: ") + e.what(), NAN, INFINITY);
  }
  if (!r.converged) {
    std::ostringstream msg;
    msg << "Shannon entropy of " << view.density().family().describe() << " n="
        << view.density().degree() << " did not reach tolerance " << options.tolerance
        << " (estimate " << r.value << ", error " << r.error_estimate << ")";
    throw IntegrationError(msg.str(), r.value, r.error_estimate);
  }
  return r;
}

QuadratureResult entropic_moment_numeric(const DensityView& view, double q,
                                         const NumericOptions& options) {
  require_endpoint_exponents(view.density().family(), q);
  if (is_positive_integer(q)) {
    const double value = integer_moment(view.density(), static_cast<int>(q), view.scale());
    return {value, 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(value), true};
  }
  const ext qq = q;
  const detail::LocalIntegrand integrand = [qq](const detail::LocalDensity& local) -> ext {
    if (!std::isfinite(local.log_rho)) return 0.0L;
    return std::exp(qq * local.log_rho);
  };
  QuadratureResult r;
  try {
    r = detail::integrate_density(view, integrand, detail::PieceStyle::singular, options,
                                  endpoint_powers(view.density().family(), q));
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("entropic moment quadrature failed: ") + e.what(), NAN, INFINITY);
  }
  if (!r.converged) {
    std::ostringstream msg;
    msg << "entropic moment W_" << q << " did not reach tolerance " << options.tolerance
        << " (estimate " << r.value << ", error " << r.error_estimate << ")";
    throw IntegrationError(msg.str(), r.value, r.error_estimate);
  }
  return r;
}

EntropicProfile renyi_profile(const DensityView& view, double q, const NumericOptions& options) {
  EntropicProfile profile{q, 1.0, 0.0, 1.0};
  if (q == 1.0) {
    profile.renyi_entropy = shannon_entropy_numeric(view, options).value;
  } else {
    profile.moment = entropic_moment_numeric(view, q, options).value;
    profile.renyi_entropy = std::log(profile.moment) / (1.0 - q);
  }
  profile.renyi_length = std::exp(profile.renyi_entropy);
  return profile;
}

MeasureValue disequilibrium_laguerre_lauricella(int n, double alpha) {
  require_disequilibrium_domain(n, alpha, 0.0, false);
  const ext nn = n;
  const ext a = alpha;
  const ext log_prefactor = 2.0L * (lg(nn + 1.0L) - lg(a + nn + 1.0L)) + lg(2.0L * a + 1.0L) -
                            (2.0L * a + 1.0L) * std::log(2.0L) + 4.0L * log_binomial(nn + a, nn);
  const double neg_n = -static_cast<double>(n);
  const LauricellaFA4Spec spec{2.0 * alpha + 1.0,
                               {neg_n, neg_n, neg_n, neg_n},
                               {alpha + 1.0, alpha + 1.0, alpha + 1.0, alpha + 1.0},
                               {0.5, 0.5, 0.5, 0.5}};
  const SeriesValue series = lauricella_fa4(spec);
  const ext prefactor = std::exp(log_prefactor);
  MeasureValue out{static_cast<double>(prefactor * series.value), Method::closed_form,
                   series.ill_conditioned};
  return out;
}

MeasureValue disequilibrium_laguerre_bell(int n, double alpha) {
  require_disequilibrium_domain(n, alpha, 0.0, false);
  const ext nn = n;
  const ext a = alpha;
  // c_t = root (-1)^t C(n,t) / Gamma(alpha+t+1) and
  // m_k = Gamma(2alpha+k+1) / 2^(2alpha+k+1), with Gamma(alpha+1) and
  // Gamma(2alpha+1) / 2^(2alpha+1) moved into the prefactor.
  const ext log_root = 0.5L * (lg(nn + a + 1.0L) - lg(nn + 1.0L)) - lg(a + 1.0L);
  const ext log_prefactor =
      4.0L * log_root + lg(2.0L * a + 1.0L) - (2.0L * a + 1.0L) * std::log(2.0L);
  const wide_real wa = alpha;
  BellInputs in;
  in.coefficients.resize(static_cast<std::size_t>(n) + 1);
  wide_real binom = 1;
  wide_real rising = 1;
  for (int t = 0; t <= n; ++t) {
    if (t > 0) {
      binom = binom * (n - t + 1) / t;
      rising *= wa + t;
    }
    in.coefficients[static_cast<std::size_t>(t)] = (t % 2 == 0 ? binom : -binom) / rising;
  }
  in.coefficient_abs.resize(in.coefficients.size());
  std::transform(in.coefficients.begin(), in.coefficients.end(), in.coefficient_abs.begin(),
                 [](const wide_real& v) { return wide_real(abs(v)); });
  in.moments.resize(static_cast<std::size_t>(4 * n) + 1);
  wide_real m = 1;
  for (int k = 0; k <= 4 * n; ++k) {
    if (k > 0) m = m * (2 * wa + k) / 2;
    in.moments[static_cast<std::size_t>(k)] = m;
  }
  in.moment_abs = in.moments;
  return bell_sum(in, n, log_prefactor);
}

MeasureValue disequilibrium_jacobi_sd(int n, double alpha, double beta) {
  require_disequilibrium_domain(n, alpha, beta, true);
  const ext nn = n;
  const ext a = alpha;
  const ext b = beta;
  const ext ln2 = std::log(2.0L);
  const ext log_dn = (a + b + 1.0L) * ln2 + lg(a + nn + 1.0L) + lg(b + nn + 1.0L) - lg(nn + 1.0L) -
                     std::log(a + b + 2.0L * nn + 1.0L) - lg(a + b + nn + 1.0L);
  const ext log_d0_doubled =
      (2.0L * a + 2.0L * b + 1.0L) * ln2 + lg(2.0L * a + 1.0L) + lg(2.0L * b + 1.0L) -
      lg(2.0L * a + 2.0L * b + 2.0L);
  const ext log_prefactor = log_d0_doubled - 2.0L * log_dn + 4.0L * log_binomial(nn + a, nn);
  const double neg_n = -static_cast<double>(n);
  const double upper = alpha + beta + n + 1.0;
  const SrivastavaDaoustSpec spec{2.0 * alpha + 1.0,
                                  2.0 * alpha + 2.0 * beta + 2.0,
                                  {neg_n, neg_n, neg_n, neg_n},
                                  {upper, upper, upper, upper},
                                  {alpha + 1.0, alpha + 1.0, alpha + 1.0, alpha + 1.0},
                                  {1.0, 1.0, 1.0, 1.0}};
  const SeriesValue series = srivastava_daoust_f4(spec);
  MeasureValue out{static_cast<double>(std::exp(log_prefactor) * series.value), Method::closed_form,
                   series.ill_conditioned};
  return out;
}

MeasureValue disequilibrium_jacobi_bell(int n, double alpha, double beta) {
  require_disequilibrium_domain(n, alpha, beta, true);
  const ext nn = n;
  const ext a = alpha;
  const ext b = beta;
  const ext s = a + b;
  const ext ln2 = std::log(2.0L);
  // Monomial coefficients of the orthonormal P_n:
  //   c_t = root sum_{i>=t} (-1)^(i-t) C(n,i) C(i,t) Gamma(s+n+i+1) / (2^i Gamma(a+i+1)),
  // with Gamma(s+n+1) / Gamma(a+1) moved into the prefactor.
  const ext log_root = 0.5L * (lg(a + nn + 1.0L) + std::log(2.0L * nn + s + 1.0L) -
                               lg(nn + 1.0L) - (s + 1.0L) * ln2 - lg(s + nn + 1.0L) -
                               lg(nn + b + 1.0L)) +
                       lg(s + nn + 1.0L) - lg(a + 1.0L);
  // int_{-1}^{1} x^k (1-x)^{2a} (1+x)^{2b} dx = (-1)^k base 2F1(-k, 1+2b; 2+2a+2b; 2).
  const ext qa = 2.0L * a;
  const ext qb = 2.0L * b;
  const ext log_base = (1.0L + qa + qb) * ln2 + lg(qa + 1.0L) + lg(qb + 1.0L) - lg(qa + qb + 2.0L);
  const wide_real wa = alpha;
  const wide_real ws = wide_real(alpha) + wide_real(beta);

  // inner[i] = C(n,i) (s+n+1)_i / (2^i (a+1)_i)
  std::vector<wide_real> inner(static_cast<std::size_t>(n) + 1);
  inner[0] = 1;
  for (int i = 1; i <= n; ++i) {
    inner[static_cast<std::size_t>(i)] = inner[static_cast<std::size_t>(i) - 1] * (n - i + 1) / i *
                                         (ws + n + i) / (2 * (wa + i));
  }
  BellInputs in;
  in.coefficients.assign(static_cast<std::size_t>(n) + 1, wide_real(0));
  in.coefficient_abs.assign(in.coefficients.size(), wide_real(0));
  for (int t = 0; t <= n; ++t) {
    CompensatedSum<wide_real> sum;
    wide_real sum_abs = 0;
    wide_real binom = 1;  // C(i, t)
    for (int i = t; i <= n; ++i) {
      if (i > t) binom = binom * i / (i - t);
      const wide_real magnitude = binom * inner[static_cast<std::size_t>(i)];
      sum.add((i - t) % 2 == 0 ? magnitude : wide_real(-magnitude));
      sum_abs += magnitude;
    }
    in.coefficients[static_cast<std::size_t>(t)] = sum.value();
    in.coefficient_abs[static_cast<std::size_t>(t)] = sum_abs;
  }
  in.moments.resize(static_cast<std::size_t>(4 * n) + 1);
  in.moment_abs.resize(in.moments.size());
  const wide_real hb = 1 + 2 * wide_real(beta);
  const wide_real hc = 2 + 2 * wide_real(alpha) + 2 * wide_real(beta);
  for (int k = 0; k <= 4 * n; ++k) {
    const TerminatingSum<wide_real> f = gauss_2f1_terminating_sum(k, hb, hc, wide_real(2));
    in.moments[static_cast<std::size_t>(k)] = k % 2 == 0 ? f.value : wide_real(-f.value);
    in.moment_abs[static_cast<std::size_t>(k)] = f.abs_sum;
  }
  return bell_sum(in, n, 4.0L * log_root + log_base);
}

MeasureValue disequilibrium(const RakhmanovDensity& density) {
  const PolynomialFamily& fam = density.family();
  const int n = density.degree();
  if (fam.kind() != FamilyKind::hermite) {
    const bool jacobi = fam.kind() == FamilyKind::jacobi;
    require_disequilibrium_domain(n, fam.alpha(), fam.beta(), jacobi);
    if (n <= kBellDegreeLimit) {
      const MeasureValue bell = jacobi ? disequilibrium_jacobi_bell(n, fam.alpha(), fam.beta())
                                       : disequilibrium_laguerre_bell(n, fam.alpha());
      if (!bell.ill_conditioned) return bell;
    }
  }
  return {entropic_moment_numeric(density, 2.0).value, Method::numeric, false};
}

Lengths lengths(const RakhmanovDensity& density, const NumericOptions& options) {
  Lengths out{};
  out.standard_deviation = std::sqrt(variance_numeric(density));
  out.shannon_length = std::exp(shannon_entropy_numeric(density, options).value);
  const MeasureValue fisher = fisher_closed(density);
  if (!fisher.is_infinite()) out.fisher_length = 1.0 / std::sqrt(fisher.value);
  return out;
}

}  // namespace orthocomplex
