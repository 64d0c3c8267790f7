#pragma once

// Cross-validation suites: closed forms against quadrature, the series
// representations of W_2 against each other and against the exact Gauss
// rule, and the large-n laws against numeric values.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthocomplex/measures.hpp"

namespace orthocomplex {

enum class ValidationSuite { closed_vs_numeric, representations, asymptotics, all };

std::optional<ValidationSuite> parse_suite(std::string_view name);
std::string to_string(ValidationSuite suite);

struct CheckResult {
  std::string name;
  bool passed = false;
  double achieved = 0.0;   // relative error, or |ratio - 1| for trend checks
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  /// Largest degree; 0 picks the suite default (20 closed-vs-numeric, 8 representations).
  int n_max = 0;
  NumericOptions numeric{};
  int jobs = 1;
};

std::vector<CheckResult> run_validation(ValidationSuite suite, const ValidationOptions& options = {});

}  // namespace orthocomplex
