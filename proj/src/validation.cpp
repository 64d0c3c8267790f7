#include "orthocomplex/validation.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "orthocomplex/complexity.hpp"
#include "orthocomplex/parallel.hpp"

namespace orthocomplex {

namespace {

using Checks = std::vector<CheckResult>;
using Task = std::function<Checks()>;

double relative_error(double value, double reference) {
  if (reference == 0.0) return std::fabs(value);
  return std::fabs(value - reference) / std::fabs(reference);
}

std::string label(const PolynomialFamily& family, int n) {
  std::ostringstream s;
  s << family.describe() << " n=" << n;
  return s.str();
}

CheckResult compare(std::string name, double value, double reference, double tolerance) {
  CheckResult r;
  r.name = std::move(name);
  r.achieved = relative_error(value, reference);
  r.tolerance = tolerance;
  r.passed = r.achieved <= tolerance;
  std::ostringstream d;
  d.precision(17);
  d << "value " << value << " reference " << reference;
  r.detail = d.str();
  return r;
}

CheckResult failed(std::string name, double tolerance, const std::exception& e) {
  CheckResult r;
  r.name = std::move(name);
  r.achieved = NAN;
  r.tolerance = tolerance;
  r.detail = e.what();
  return r;
}

// Closed forms against quadrature ------------------------------------------

Checks closed_vs_numeric_point(const PolynomialFamily& family, int n, const NumericOptions& opts) {
  Checks out;
  const RakhmanovDensity density(family, n);
  const std::string tag = label(family, n);
  const double v_closed = variance_closed(density);
  double v_numeric = NAN;
  try {
    v_numeric = variance_numeric(density);
    out.push_back(compare("variance " + tag, v_numeric, v_closed, 1e-10));
  } catch (const std::exception& e) {
    out.push_back(failed("variance " + tag, 1e-10, e));
  }

  const MeasureValue f_closed = fisher_closed(density);
  const QuadratureResult f_numeric = fisher_numeric(density, opts);
  if (f_closed.is_infinite()) {
    CheckResult r;
    r.name = "fisher divergence " + tag;
    r.passed = !f_numeric.converged || std::isinf(f_numeric.value);
    r.achieved = r.passed ? 0.0 : 1.0;
    r.detail = r.passed ? "quadrature reports divergence" : "quadrature converged on a divergent branch";
    out.push_back(r);
    return out;
  }
  if (!f_numeric.converged) {
    CheckResult r;
    r.name = "fisher " + tag;
    r.tolerance = 1e-6;
    r.achieved = NAN;
    r.detail = "quadrature did not converge";
    out.push_back(r);
    return out;
  }
  out.push_back(compare("fisher " + tag, f_numeric.value, f_closed.value, 1e-6));
  out.push_back(compare("c_cr " + tag, f_numeric.value * v_numeric, cramer_rao(density).value,
                        1e-6));
  return out;
}

std::vector<Task> closed_vs_numeric_tasks(const ValidationOptions& options) {
  const int n_max = options.n_max > 0 ? options.n_max : 20;
  const std::vector<PolynomialFamily> grid{
      PolynomialFamily::hermite(),        PolynomialFamily::laguerre(0.0),
      PolynomialFamily::laguerre(2.0),    PolynomialFamily::laguerre(5.0),
      PolynomialFamily::laguerre(0.5),    PolynomialFamily::jacobi(0.0, 0.0),
      PolynomialFamily::jacobi(0.0, 2.0), PolynomialFamily::jacobi(2.0, 0.0),
      PolynomialFamily::jacobi(2.0, 2.0), PolynomialFamily::jacobi(2.0, 5.0),
      PolynomialFamily::jacobi(5.0, 5.0), PolynomialFamily::jacobi(0.5, 2.0)};
  std::vector<Task> tasks;
  for (const auto& family : grid) {
    for (int n = 0; n <= n_max; ++n) {
      tasks.push_back([family, n, opts = options.numeric] {
        return closed_vs_numeric_point(family, n, opts);
      });
    }
  }
  return tasks;
}

// W_2 representations ---------------------------------------------------------

Checks representation_point(const PolynomialFamily& family, int n) {
  Checks out;
  const std::string tag = label(family, n);
  const bool jacobi = family.kind() == FamilyKind::jacobi;
  const char* series_name = jacobi ? "srivastava-daoust" : "lauricella";
  try {
    const double bell = jacobi ? disequilibrium_jacobi_bell(n, family.alpha(), family.beta()).value
                               : disequilibrium_laguerre_bell(n, family.alpha()).value;
    const double series = jacobi ? disequilibrium_jacobi_sd(n, family.alpha(), family.beta()).value
                                 : disequilibrium_laguerre_lauricella(n, family.alpha()).value;
    const double quadrature = entropic_moment_numeric(RakhmanovDensity(family, n), 2.0).value;
    out.push_back(compare(std::string("w2 bell~") + series_name + " " + tag, bell, series, 1e-10));
    out.push_back(compare("w2 bell~quadrature " + tag, bell, quadrature, 1e-10));
    out.push_back(
        compare(std::string("w2 ") + series_name + "~quadrature " + tag, series, quadrature, 1e-10));
  } catch (const std::exception& e) {
    out.push_back(failed("w2 representations " + tag, 1e-10, e));
  }
  return out;
}

std::vector<Task> representation_tasks(const ValidationOptions& options) {
  const int n_max = options.n_max > 0 ? options.n_max : 8;
  std::vector<PolynomialFamily> grid{PolynomialFamily::laguerre(0.0), PolynomialFamily::laguerre(1.0),
                                     PolynomialFamily::laguerre(2.5)};
  for (double a : {0.0, 1.0, 2.0}) {
    for (double b : {0.0, 1.0, 2.0}) grid.push_back(PolynomialFamily::jacobi(a, b));
  }
  std::vector<Task> tasks;
  for (const auto& family : grid) {
    for (int n = 0; n <= n_max; ++n) {
      tasks.push_back([family, n] { return representation_point(family, n); });
    }
  }
  return tasks;
}

// Large-n laws ----------------------------------------------------------------

constexpr int kTrendDegrees[] = {20, 50, 100};

// |numeric/asymptotic - 1| must shrink along 20, 50, 100.
CheckResult trend(const std::string& name, const std::function<double(int)>& numeric,
                  const std::function<double(int)>& asymptotic) {
  CheckResult r;
  r.name = name;
  std::ostringstream d;
  double previous = INFINITY;
  bool shrinking = true;
  try {
    for (int n : kTrendDegrees) {
      const double gap = std::fabs(numeric(n) / asymptotic(n) - 1.0);
      d << "n=" << n << ": " << gap << " ";
      shrinking = shrinking && gap < previous;
      previous = gap;
    }
  } catch (const std::exception& e) {
    r.achieved = NAN;
    r.detail = e.what();
    return r;
  }
  r.passed = shrinking;
  r.achieved = previous;
  r.tolerance = NAN;
  r.detail = d.str();
  return r;
}

double shannon_length(const PolynomialFamily& family, int n, const NumericOptions& opts) {
  return std::exp(shannon_entropy_numeric(RakhmanovDensity(family, n), opts).value);
}

std::vector<Task> asymptotic_tasks(const ValidationOptions& options) {
  const NumericOptions opts = options.numeric;
  std::vector<Task> tasks;
  const std::vector<PolynomialFamily> n1_grid{
      PolynomialFamily::hermite(), PolynomialFamily::laguerre(2.0), PolynomialFamily::laguerre(0.0),
      PolynomialFamily::jacobi(0.0, 0.0), PolynomialFamily::jacobi(2.0, 2.0)};
  for (const auto& family : n1_grid) {
    tasks.push_back([family, opts] {
      return Checks{trend(
          "n1 trend " + family.describe(), [&](int n) { return shannon_length(family, n, opts); },
          [&](int n) { return n1_asymptotic(family, n); })};
    });
  }
  for (const auto& family : {PolynomialFamily::jacobi(0.0, 0.0), PolynomialFamily::jacobi(2.0, 2.0),
                             PolynomialFamily::jacobi(0.5, -0.3)}) {
    tasks.push_back([family, opts] {
      try {
        return Checks{compare("n1 " + family.describe() + " n=100 near pi/e",
                              shannon_length(family, 100, opts), n1_asymptotic(family, 100), 0.1)};
      } catch (const std::exception& e) {
        return Checks{failed("n1 " + family.describe() + " n=100 near pi/e", 0.1, e)};
      }
    });
  }
  const std::vector<PolynomialFamily> cfs_grid{
      PolynomialFamily::hermite(),         PolynomialFamily::laguerre(0.0),
      PolynomialFamily::laguerre(2.0),     PolynomialFamily::jacobi(0.0, 0.0),
      PolynomialFamily::jacobi(0.0, 2.0),  PolynomialFamily::jacobi(2.0, 0.0),
      PolynomialFamily::jacobi(2.0, 2.0)};
  for (const auto& family : cfs_grid) {
    tasks.push_back([family, opts] {
      return Checks{trend(
          "c_fs trend " + family.describe(),
          [&](int n) { return fisher_shannon(RakhmanovDensity(family, n), opts).value; },
          [&](int n) { return cfs_asymptotic(family, n).value; })};
    });
  }
  tasks.push_back([] {
    return Checks{trend(
        "w2 trend hermite",
        [](int n) { return disequilibrium(RakhmanovDensity(PolynomialFamily::hermite(), n)).value; },
        w2_hermite_asymptotic)};
  });
  tasks.push_back([opts] {
    return Checks{trend(
        "c_lmc trend hermite",
        [&](int n) { return lmc(RakhmanovDensity(PolynomialFamily::hermite(), n), opts).value; },
        clmc_hermite_asymptotic)};
  });
  return tasks;
}

}  // namespace

std::optional<ValidationSuite> parse_suite(std::string_view name) {
  if (name == "closed-vs-numeric") return ValidationSuite::closed_vs_numeric;
  if (name == "representations") return ValidationSuite::representations;
  if (name == "asymptotics") return ValidationSuite::asymptotics;
  if (name == "all") return ValidationSuite::all;
  return std::nullopt;
}

std::string to_string(ValidationSuite suite) {
  switch (suite) {
    case ValidationSuite::closed_vs_numeric:
      return "closed-vs-numeric";
    case ValidationSuite::representations:
      return "representations";
    case ValidationSuite::asymptotics:
      return "asymptotics";
    case ValidationSuite::all:
      return "all";
  }
  return "unknown";
}

std::vector<CheckResult> run_validation(ValidationSuite suite, const ValidationOptions& options) {
  std::vector<Task> tasks;
  auto append = [&tasks](std::vector<Task> more) {
    for (auto& t : more) tasks.push_back(std::move(t));
  };
  if (suite == ValidationSuite::closed_vs_numeric || suite == ValidationSuite::all) {
    append(closed_vs_numeric_tasks(options));
  }
  if (suite == ValidationSuite::representations || suite == ValidationSuite::all) {
    append(representation_tasks(options));
  }
  if (suite == ValidationSuite::asymptotics || suite == ValidationSuite::all) {
    append(asymptotic_tasks(options));
  }
  const auto groups = parallel_map(tasks.size(), options.jobs, [&](std::size_t i) {
    try {
      return tasks[i]();
    } catch (const std::exception& e) {
      return Checks{failed("task " + std::to_string(i), NAN, e)};
    }
  });
  std::vector<CheckResult> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

}  // namespace orthocomplex
