#include "orthocomplex/polycore.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "orthocomplex/detail/recurrence.hpp"

namespace orthocomplex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_weight_parameter(double value, const char* name) {
  if (!std::isfinite(value) || !(value > -1.0)) {
    std::ostringstream msg;
    msg << "parameter " << name << " = " << value << " violates " << name << " > -1";
    throw DomainError(msg.str());
  }
}

}  // namespace

PolynomialFamily PolynomialFamily::hermite() { return {FamilyKind::hermite, 0.0, 0.0}; }

PolynomialFamily PolynomialFamily::laguerre(double alpha) {
  require_weight_parameter(alpha, "alpha");
  return {FamilyKind::laguerre, alpha, 0.0};
}

PolynomialFamily PolynomialFamily::jacobi(double alpha, double beta) {
  require_weight_parameter(alpha, "alpha");
  require_weight_parameter(beta, "beta");
  return {FamilyKind::jacobi, alpha, beta};
}

Interval PolynomialFamily::support() const noexcept {
  switch (kind_) {
    case FamilyKind::hermite:
      return {-kInf, kInf};
    case FamilyKind::laguerre:
      return {0.0, kInf};
    case FamilyKind::jacobi:
      return {-1.0, 1.0};
  }
  return {-kInf, kInf};
}

double PolynomialFamily::log_weight_mass() const {
  switch (kind_) {
    case FamilyKind::hermite:
      return 0.5 * std::log(M_PI);
    case FamilyKind::laguerre:
      return static_cast<double>(std::lgamma(static_cast<long double>(alpha_) + 1.0L));
    case FamilyKind::jacobi: {
      const long double a = alpha_;
      const long double b = beta_;
      return static_cast<double>((a + b + 1.0L) * std::log(2.0L) + std::lgamma(a + 1.0L) +
                                 std::lgamma(b + 1.0L) - std::lgamma(a + b + 2.0L));
    }
  }
  return 0.0;
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::hermite:
      return "hermite";
    case FamilyKind::laguerre:
      return "laguerre";
    case FamilyKind::jacobi:
      return "jacobi";
  }
  return "unknown";
}

std::string PolynomialFamily::describe() const {
  std::ostringstream out;
  out << to_string(kind_);
  if (kind_ == FamilyKind::laguerre) out << '(' << alpha_ << ')';
  if (kind_ == FamilyKind::jacobi) out << '(' << alpha_ << ',' << beta_ << ')';
  return out.str();
}

RakhmanovDensity::RakhmanovDensity(PolynomialFamily family, int degree)
    : family_(family), degree_(degree) {
  if (degree < 0) throw ArgumentError("polynomial degree must be nonnegative");
  recurrence_ = std::make_shared<const detail::Recurrence>(family_, degree_);
}

namespace detail {

Recurrence::Recurrence(const PolynomialFamily& fam, int n_max) : family(fam) {
  if (n_max < 0) throw ArgumentError("n_max must be nonnegative");
  log_mass = fam.log_weight_mass();
  a.resize(static_cast<std::size_t>(n_max) + 1);
  b.resize(static_cast<std::size_t>(n_max) + 2);
  b[0] = std::exp(0.5L * log_mass);
  const ext alpha = fam.alpha();
  const ext beta = fam.beta();
  for (int k = 0; k <= n_max + 1; ++k) {
    const ext kk = k;
    ext ak = 0.0L;
    ext bk2 = 0.0L;
    switch (fam.kind()) {
      case FamilyKind::hermite:
        ak = 0.0L;
        bk2 = kk / 2.0L;
        break;
      case FamilyKind::laguerre:
        ak = 2.0L * kk + alpha + 1.0L;
        bk2 = kk * (kk + alpha);
        break;
      case FamilyKind::jacobi: {
        const ext s = alpha + beta;
        if (k == 0) {
          ak = (beta - alpha) / (s + 2.0L);
        } else {
          ak = (beta - alpha) * (beta + alpha) / ((2.0L * kk + s) * (2.0L * kk + s + 2.0L));
        }
        if (k == 1) {
          // (k + s) cancels against (2k + s - 1); exact for s = -1.
          bk2 = 4.0L * (1.0L + alpha) * (1.0L + beta) / ((2.0L + s) * (2.0L + s) * (3.0L + s));
        } else if (k > 1) {
          const ext t = 2.0L * kk + s;
          bk2 = 4.0L * kk * (kk + alpha) * (kk + beta) * (kk + s) / (t * t * (t + 1.0L) * (t - 1.0L));
        }
        break;
      }
    }
    if (k <= n_max) a[static_cast<std::size_t>(k)] = ak;
    if (k >= 1) b[static_cast<std::size_t>(k)] = std::sqrt(bk2);
  }
}

std::pair<ext, ext> Recurrence::value_and_derivative(int n, ext x) const {
  ext p_prev = 0.0L;
  ext p = 1.0L / b[0];
  ext dp_prev = 0.0L;
  ext dp = 0.0L;
  for (int k = 0; k < n; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const ext shift = x - a[ks];
    const ext p_next = (shift * p - b[ks] * p_prev) / b[ks + 1];
    const ext dp_next = (shift * dp + p - b[ks] * dp_prev) / b[ks + 1];
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  if (family.kind() == FamilyKind::laguerre && (n % 2 == 1)) return {-p, -dp};
  return {p, dp};
}

ext Recurrence::christoffel_sum(int m, ext x) const {
  ext p_prev = 0.0L;
  ext p = 1.0L / b[0];
  ext sum = p * p;
  for (int k = 0; k + 1 < m; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const ext p_next = ((x - a[ks]) * p - b[ks] * p_prev) / b[ks + 1];
    p_prev = p;
    p = p_next;
    sum += p * p;
  }
  return sum;
}

ext Recurrence::lower() const {
  return static_cast<ext>(family.support().lower);
}

ext Recurrence::upper() const {
  return static_cast<ext>(family.support().upper);
}

LogWeight Recurrence::log_weight(ext x, ext gap_lower, ext gap_upper) const {
  const ext alpha = family.alpha();
  const ext beta = family.beta();
  switch (family.kind()) {
    case FamilyKind::hermite:
      return {-x * x, -2.0L * x};
    case FamilyKind::laguerre: {
      LogWeight lw{-x, -1.0L};
      if (alpha != 0.0L) {
        lw.value += alpha * std::log(gap_lower);
        lw.derivative += alpha / gap_lower;
      }
      return lw;
    }
    case FamilyKind::jacobi: {
      LogWeight lw{0.0L, 0.0L};
      if (alpha != 0.0L) {
        lw.value += alpha * std::log(gap_upper);
        lw.derivative -= alpha / gap_upper;
      }
      if (beta != 0.0L) {
        lw.value += beta * std::log(gap_lower);
        lw.derivative += beta / gap_lower;
      }
      return lw;
    }
  }
  return {0.0L, 0.0L};
}

ScaledValue Recurrence::scaled(int n, ext x, ext gap_lower, ext gap_upper) const {
  const auto [p, dp] = value_and_derivative(n, x);
  const LogWeight lw = log_weight(x, gap_lower, gap_upper);
  const ext root_weight = std::exp(0.5L * lw.value);
  return {root_weight * p, root_weight * dp, lw};
}

std::vector<ext> recurrence_zeros(const Recurrence& rec, int n) {
  std::vector<ext> roots;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(rec.a[0]);
    return roots;
  }
  using Vector = Eigen::Matrix<ext, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<ext, Eigen::Dynamic, Eigen::Dynamic>;
  Vector diag(n);
  Vector sub(n - 1);
  for (int k = 0; k < n; ++k) diag(k) = rec.a[static_cast<std::size_t>(k)];
  for (int k = 0; k + 1 < n; ++k) sub(k) = rec.b[static_cast<std::size_t>(k) + 1];
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("tridiagonal eigensolver did not converge");
  const Vector& values = solver.eigenvalues();
  roots.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ext x = values(i);
    // Polish; accept only small corrections so the ordering cannot change.
    for (int iter = 0; iter < 3; ++iter) {
      const auto [p, dp] = rec.value_and_derivative(n, x);
      if (dp == 0.0L || !std::isfinite(p / dp)) break;
      const ext step = p / dp;
      if (std::fabs(step) > 1e-8L * (1.0L + std::fabs(x))) break;
      x -= step;
      if (std::fabs(step) <= std::numeric_limits<ext>::epsilon() * std::fabs(x)) break;
    }
    roots[static_cast<std::size_t>(i)] = x;
  }
  return roots;
}

}  // namespace detail

std::vector<RecurrencePair> recurrence_coefficients(const PolynomialFamily& family, int n_max) {
  if (n_max < 0) throw ArgumentError("n_max must be nonnegative");
  const detail::Recurrence rec(family, n_max);
  std::vector<RecurrencePair> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int k = 0; k <= n_max; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    out.push_back({static_cast<double>(rec.a[ks]), static_cast<double>(rec.b[ks])});
  }
  return out;
}

PointEvaluation evaluate(const RakhmanovDensity& density, double x) {
  const Interval s = density.family().support();
  if (std::isnan(x) || x < s.lower || x > s.upper) {
    std::ostringstream msg;
    msg << "x = " << x << " lies outside the support of " << density.family().describe();
    throw DomainError(msg.str());
  }
  const detail::Recurrence& rec = density.recurrence();
  const auto [p, dp] = rec.value_and_derivative(density.degree(), x);
  const detail::LogWeight lw = rec.log_weight(x);
  if (lw.value == std::numeric_limits<detail::ext>::infinity()) {
    std::ostringstream msg;
    msg << "the weight of " << density.family().describe() << " is infinite at x = " << x;
    throw DomainError(msg.str());
  }
  const detail::ext rho = p == 0.0L ? 0.0L : std::exp(lw.value + 2.0L * std::log(std::fabs(p)));
  return {static_cast<double>(p), static_cast<double>(dp), static_cast<double>(rho)};
}

std::vector<double> zeros(const RakhmanovDensity& density) {
  const auto roots = detail::recurrence_zeros(density.recurrence(), density.degree());
  return {roots.begin(), roots.end()};
}

namespace {

using RuleKey = std::tuple<int, double, double, int>;

class RuleCache {
 public:
  std::shared_ptr<const GaussRule> find(const RuleKey& key) const {
    std::shared_lock lock(mutex_);
    const auto it = rules_.find(key);
    return it == rules_.end() ? nullptr : it->second;
  }

  void insert(const RuleKey& key, std::shared_ptr<const GaussRule> rule) {
    std::unique_lock lock(mutex_);
    if (rules_.size() >= kCapacity) rules_.clear();
    rules_.emplace(key, std::move(rule));
  }

 private:
  static constexpr std::size_t kCapacity = 4096;
  mutable std::shared_mutex mutex_;
  std::map<RuleKey, std::shared_ptr<const GaussRule>> rules_;
};

RuleCache& rule_cache() {
  static RuleCache cache;
  return cache;
}

std::shared_ptr<const GaussRule> build_rule(const PolynomialFamily& weight, int order) {
  const detail::Recurrence rec(weight, order);
  const auto roots = detail::recurrence_zeros(rec, order);
  auto rule = std::make_shared<GaussRule>(GaussRule{{}, {}, weight, order});
  rule->nodes.reserve(roots.size());
  rule->weights.reserve(roots.size());
  for (const detail::ext x : roots) {
    const double w = static_cast<double>(1.0L / rec.christoffel_sum(order, x));
    if (!std::isfinite(w)) {
      throw DomainError("Gauss weight overflows double precision for " + weight.describe());
    }
    rule->nodes.push_back(static_cast<double>(x));
    rule->weights.push_back(w);
  }
  return rule;
}

}  // namespace

GaussRule gauss_rule(const PolynomialFamily& weight, int order) {
  if (order < 1) throw ArgumentError("Gauss rule order must be at least 1");
  const RuleKey key{static_cast<int>(weight.kind()), weight.alpha(), weight.beta(), order};
  auto rule = rule_cache().find(key);
  if (!rule) {
    rule = build_rule(weight, order);
    rule_cache().insert(key, rule);
  }
  return *rule;
}

}  // namespace orthocomplex
