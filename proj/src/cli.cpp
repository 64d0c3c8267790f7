#include "orthocomplex/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "orthocomplex/complexity.hpp"
#include "orthocomplex/parallel.hpp"
#include "orthocomplex/validation.hpp"

namespace orthocomplex::cli {

namespace {

using nlohmann::json;

/// A bad flag value discovered after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyArgs {
  std::string family;
  double alpha = 0.0;
  double beta = 0.0;
};

PolynomialFamily make_family(const std::string& name, double alpha, double beta) {
  if (name == "hermite") return PolynomialFamily::hermite();
  if (name == "laguerre") return PolynomialFamily::laguerre(alpha);
  if (name == "jacobi") return PolynomialFamily::jacobi(alpha, beta);
  throw UsageError("unknown family '" + name + "'");
}

MeasureSet parse_measures(const std::string& list) {
  if (list.empty() || list == "all") return all_measures();
  MeasureSet set;
  std::stringstream in(list);
  std::string key;
  while (std::getline(in, key, ',')) {
    bool found = false;
    for (int i = 0; i < kMeasureCount; ++i) {
      if (measure_key(static_cast<Measure>(i)) == key) {
        set.set(static_cast<std::size_t>(i));
        found = true;
      }
    }
    if (!found) throw UsageError("unknown measure '" + key + "'");
  }
  if (set.none()) throw UsageError("empty measure list");
  return set;
}

// %.17g, with the spellings inf / nan.
std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest round-trip form, for parameter columns.
std::string format_parameter(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json value_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json report_json(const ComplexityReport& r) {
  json doc;
  doc["family"] = to_string(r.family.kind());
  doc["n"] = r.degree;
  if (r.family.kind() != FamilyKind::hermite) doc["alpha"] = r.family.alpha();
  if (r.family.kind() == FamilyKind::jacobi) doc["beta"] = r.family.beta();
  json measures = json::object();
  for (int i = 0; i < kMeasureCount; ++i) {
    const auto m = static_cast<Measure>(i);
    const ReportEntry& e = r.entry(m);
    if (!e.requested) continue;
    json entry;
    if (e.value) {
      entry["value"] = value_json(e.value->value);
      entry["method"] = to_string(e.value->method);
      entry["ill_conditioned"] = e.value->ill_conditioned;
    } else {
      entry["value"] = nullptr;
      entry["error"] = e.error;
    }
    measures[measure_key(m)] = entry;
  }
  doc["measures"] = measures;
  return doc;
}

std::string csv_row(const ComplexityReport& r) {
  std::ostringstream row;
  row << to_string(r.family.kind()) << ',' << r.degree << ',';
  if (r.family.kind() != FamilyKind::hermite) row << format_parameter(r.family.alpha());
  row << ',';
  if (r.family.kind() == FamilyKind::jacobi) row << format_parameter(r.family.beta());
  std::string flags;
  for (int i = 0; i < kMeasureCount; ++i) {
    const auto m = static_cast<Measure>(i);
    const ReportEntry& e = r.entry(m);
    row << ',';
    if (!e.requested) continue;
    if (!flags.empty()) flags += ';';
    if (e.value) {
      row << format_value(e.value->value);
      flags += measure_key(m) + '=' + to_string(e.value->method);
      if (e.value->ill_conditioned) flags += "!";
    } else {
      row << "nan";
      flags += measure_key(m) + "=failed";
    }
  }
  row << ',' << flags;
  return row.str();
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

NumericOptions numeric_options(double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw UsageError("--tolerance must be a positive number");
  }
  NumericOptions o;
  o.tolerance = tolerance;
  return o;
}

int exit_for(bool any_numeric, bool any_domain) {
  if (any_numeric) return kExitNumeric;
  if (any_domain) return kExitUsage;
  return kExitOk;
}

// Alpha grid start, start+step, ... <= stop, rounded to 10 decimals so that
// the grid points print as the decimals a user would type.
std::vector<double> alpha_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw UsageError("--alpha-step must be positive");
  if (!(stop >= start)) throw UsageError("alpha range is empty");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::round((start + static_cast<double>(i) * step) * 1e10) / 1e10;
  }
  return grid;
}

bool needs_fisher(const MeasureSet& m) {
  return m.test(static_cast<std::size_t>(Measure::fisher)) ||
         m.test(static_cast<std::size_t>(Measure::c_cr)) ||
         m.test(static_cast<std::size_t>(Measure::c_fs));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spreading and complexity measures of Rakhmanov densities"};
  app.require_subcommand(1);
  const std::vector<std::string> families{"hermite", "laguerre", "jacobi"};

  // compute
  auto* compute = app.add_subcommand("compute", "Report every measure of one density as JSON");
  FamilyArgs c_family;
  int c_n = 0;
  std::string c_measures;
  std::string c_out;
  double c_tolerance = 1e-9;
  compute->add_option("--family", c_family.family, "hermite | laguerre | jacobi")
      ->required()
      ->check(CLI::IsMember(families));
  compute->add_option("--n", c_n, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
  compute->add_option("--alpha", c_family.alpha, "Laguerre/Jacobi alpha");
  compute->add_option("--beta", c_family.beta, "Jacobi beta");
  compute->add_option("--measures", c_measures, "comma-separated subset (default all)");
  compute->add_option("--out", c_out, "output path (default stdout)");
  compute->add_option("--tolerance", c_tolerance, "adaptive quadrature tolerance");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tabulate measures over a degree or alpha grid");
  FamilyArgs s_family;
  std::string s_vary = "degree";
  int s_n = 2;
  int s_n_max = 40;
  std::optional<double> s_alpha_start;
  std::optional<double> s_alpha_stop;
  double s_alpha_step = 0.1;
  std::string s_measures;
  std::string s_out;
  std::string s_format = "csv";
  double s_tolerance = 1e-9;
  int s_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  sweep->add_option("--family", s_family.family)->required()->check(CLI::IsMember(families));
  sweep->add_option("--vary", s_vary, "degree | alpha")->check(CLI::IsMember({"degree", "alpha"}));
  sweep->add_option("--alpha", s_family.alpha, "fixed alpha (degree sweeps)");
  sweep->add_option("--beta", s_family.beta, "fixed Jacobi beta");
  sweep->add_option("--n", s_n, "fixed degree (alpha sweeps)")->check(CLI::NonNegativeNumber);
  sweep->add_option("--n-max", s_n_max, "last degree of a degree sweep")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--alpha-start", s_alpha_start);
  sweep->add_option("--alpha-stop", s_alpha_stop);
  sweep->add_option("--alpha-step", s_alpha_step);
  sweep->add_option("--measures", s_measures, "comma-separated subset (default all)");
  sweep->add_option("--out", s_out, "output path (default stdout)");
  sweep->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--tolerance", s_tolerance);
  sweep->add_option("--jobs", s_jobs)->check(CLI::PositiveNumber);

  // validate
  auto* validate = app.add_subcommand("validate", "Run the cross-validation suites");
  std::string v_suite = "all";
  int v_n_max = 0;
  double v_tolerance = 1e-9;
  int v_jobs = s_jobs;
  validate->add_option("--suite", v_suite, "closed-vs-numeric | representations | asymptotics | all")
      ->check(CLI::IsMember({"closed-vs-numeric", "representations", "asymptotics", "all"}));
  validate->add_option("--n-max", v_n_max)->check(CLI::NonNegativeNumber);
  validate->add_option("--tolerance", v_tolerance);
  validate->add_option("--jobs", v_jobs)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (compute->parsed()) {
      const NumericOptions opts = numeric_options(c_tolerance);
      const MeasureSet measures = parse_measures(c_measures);
      const RakhmanovDensity density(make_family(c_family.family, c_family.alpha, c_family.beta),
                                     c_n);
      const ComplexityReport r = report(density, opts, measures);
      Output sink(c_out, out);
      sink.stream() << report_json(r).dump(2) << '\n';
      return r.has_numeric_failures() ? kExitNumeric : kExitOk;
    }

    if (sweep->parsed()) {
      const NumericOptions opts = numeric_options(s_tolerance);
      const MeasureSet measures = parse_measures(s_measures);
      std::vector<RakhmanovDensity> points;
      if (s_vary == "degree") {
        const PolynomialFamily family = make_family(s_family.family, s_family.alpha, s_family.beta);
        for (int n = 0; n <= s_n_max; ++n) points.emplace_back(family, n);
      } else {
        if (s_family.family == "hermite") throw UsageError("hermite has no alpha parameter");
        // Fisher is finite for alpha > 1, the disequilibrium for alpha > -1/2.
        const bool fisher = needs_fisher(measures);
        const double start = s_alpha_start.value_or(fisher ? 1.1 : -0.49);
        const double stop = s_alpha_stop.value_or(fisher ? 9.9 : 9.91);
        for (double a : alpha_grid(start, stop, s_alpha_step)) {
          points.emplace_back(make_family(s_family.family, a, s_family.beta), s_n);
        }
      }
      const auto reports = parallel_map(points.size(), s_jobs, [&](std::size_t i) {
        return report(points[i], opts, measures);
      });
      Output sink(s_out, out);
      std::size_t failed_points = 0;
      bool any_numeric = false;
      for (const auto& r : reports) {
        if (r.has_failures()) ++failed_points;
        any_numeric = any_numeric || r.has_numeric_failures();
      }
      if (s_format == "csv") {
        sink.stream() << kCsvHeader << '\n';
        for (const auto& r : reports) sink.stream() << csv_row(r) << '\n';
      } else {
        json doc = json::array();
        for (const auto& r : reports) doc.push_back(report_json(r));
        sink.stream() << doc.dump(2) << '\n';
      }
      sink.stream().flush();
      if (failed_points > 0) {
        err << "sweep: " << failed_points << " of " << reports.size()
            << " points have failed entries\n";
      }
      return exit_for(any_numeric, failed_points > 0);
    }

    if (validate->parsed()) {
      ValidationOptions opts;
      opts.n_max = v_n_max;
      opts.numeric = numeric_options(v_tolerance);
      opts.jobs = v_jobs;
      const auto results = run_validation(*parse_suite(v_suite), opts);
      std::size_t failures = 0;
      for (const auto& r : results) {
        if (!r.passed) ++failures;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  achieved=" << format_value(r.achieved);
        if (!std::isnan(r.tolerance)) out << " tolerance=" << format_value(r.tolerance);
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << '\n';
      }
      out << results.size() - failures << " of " << results.size() << " checks passed\n";
      return failures == 0 ? kExitOk : kExitValidationFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace orthocomplex::cli
