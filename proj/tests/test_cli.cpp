#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orthocomplex/cli.hpp"

using nlohmann::json;
namespace cli = orthocomplex::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Column `name` of a CSV sweep, parsed with strtod (which reads inf and nan).
std::vector<double> column(const std::string& csv, const std::string& name) {
  const auto rows = lines(csv);
  const auto header = fields(rows.at(0));
  const auto it = std::find(header.begin(), header.end(), name);
  REQUIRE(it != header.end());
  const auto index = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    out.push_back(std::strtod(fields(rows[i]).at(index).c_str(), nullptr));
  }
  return out;
}

}  // namespace

TEST_CASE("compute examples") {
  const Run h = run({"compute", "--family", "hermite", "--n", "3"});
  REQUIRE(h.code == cli::kExitOk);
  const json hj = json::parse(h.out);
  CHECK(hj["measures"]["c_cr"]["value"].get<double>() == 49.0);
  CHECK(hj["measures"]["c_cr"]["method"] == "closed-form");
  CHECK(hj["family"] == "hermite");
  CHECK(hj["n"] == 3);

  const Run l = run({"compute", "--family", "laguerre", "--alpha", "0.5", "--n", "2"});
  REQUIRE(l.code == cli::kExitOk);
  const json lj = json::parse(l.out);
  CHECK(lj["measures"]["fisher"]["value"] == "inf");
  CHECK(lj["alpha"].get<double>() == 0.5);

  const Run j = run({"compute", "--family", "jacobi", "--alpha", "0", "--beta", "0", "--n", "0"});
  REQUIRE(j.code == cli::kExitOk);
  const json jj = json::parse(j.out);
  CHECK(jj["measures"]["c_lmc"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jj["measures"]["c_lmc"]["ill_conditioned"] == false);
}

TEST_CASE("compute reports domain failures per entry") {
  const Run r = run({"compute", "--family", "laguerre", "--alpha", "-0.7", "--n", "2"});
  const json doc = json::parse(r.out);
  CHECK(doc["measures"]["c_lmc"]["value"].is_null());
  CHECK(!doc["measures"]["c_lmc"]["error"].get<std::string>().empty());
  CHECK(doc["measures"]["variance"]["value"].is_number());
}

TEST_CASE("invalid parameters exit 2 with one diagnostic line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"compute", "--family", "laguerre", "--alpha", "-2", "--n", "1"},
           {"compute", "--family", "jacobi", "--alpha", "0", "--beta", "-1", "--n", "1"},
           {"compute", "--family", "legendre", "--n", "1"},
           {"compute", "--family", "hermite", "--n", "-1"},
           {"compute", "--family", "hermite", "--n", "2", "--tolerance", "0"},
           {"compute", "--family", "hermite", "--n", "2", "--measures", "entropy"},
           {"compute", "--family", "hermite"},
           {"sweep", "--family", "hermite", "--vary", "alpha"},
           {"sweep", "--family", "laguerre", "--vary", "alpha", "--alpha-start", "3", "--alpha-stop",
            "2"},
           {"frobnicate"},
           {}}) {
    const Run r = run(args);
    CAPTURE(r.err);
    CHECK(r.code == cli::kExitUsage);
    CHECK(lines(r.err).size() == 1);
  }
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("compute") != std::string::npos);
  CHECK(run({"sweep", "--help"}).code == cli::kExitOk);
}

TEST_CASE("sweep csv layout") {
  const Run r = run({"sweep", "--family", "jacobi", "--alpha", "2", "--beta", "0.5", "--n-max", "4"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == cli::kCsvHeader);
  CHECK(r.out.find('\r') == std::string::npos);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    REQUIRE(f.size() == 13);
    CHECK(f[0] == "jacobi");
    CHECK(f[1] == std::to_string(i - 1));
    CHECK(f[2] == "2");
    CHECK(f[3] == "0.5");
    CHECK(f[12].find("c_cr=closed-form") != std::string::npos);
    // Fisher diverges for beta in (0, 1): inf in fisher, c_cr and c_fs.
    CHECK(f[5] == "inf");
    CHECK(f[9] == "inf");
    CHECK(f[10] == "inf");
  }
  // 17 significant digits round-trip the values.
  const auto v = column(r.out, "variance");
  for (double x : v) CHECK(std::isfinite(x));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v[2]);
  CHECK(fields(rows[3])[4] == buf);
}

TEST_CASE("sweep leaves unrequested and inapplicable columns empty") {
  const Run r = run({"sweep", "--family", "hermite", "--n-max", "2", "--measures", "c_cr,w2"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  const auto f = fields(rows[1]);
  REQUIRE(f.size() == 13);
  CHECK(f[2].empty());
  CHECK(f[3].empty());
  CHECK(f[4].empty());
  CHECK(!f[7].empty());
  CHECK(!f[9].empty());
  CHECK(f[11].empty());
  CHECK(f[12] == "w2=numeric;c_cr=closed-form");
}

TEST_CASE("alpha sweep grids") {
  const Run fisher = run({"sweep", "--family", "laguerre", "--vary", "alpha"});
  REQUIRE(fisher.code == cli::kExitOk);
  const auto a = column(fisher.out, "alpha");
  REQUIRE(a.size() == 89);
  CHECK(a.front() == 1.1);
  CHECK(a.back() == 9.9);
  CHECK(lines(fisher.out)[5].find("laguerre,2,1.5,,") == 0);

  const Run lmc = run({"sweep", "--family", "jacobi", "--vary", "alpha", "--beta", "2", "--measures",
                       "c_lmc"});
  REQUIRE(lmc.code == cli::kExitOk);
  const auto b = column(lmc.out, "alpha");
  REQUIRE(b.size() == 105);
  CHECK(b.front() == -0.49);
  CHECK(b.back() == 9.91);
  for (double x : column(lmc.out, "c_lmc")) CHECK(std::isfinite(x));

  const Run custom = run({"sweep", "--family", "laguerre", "--vary", "alpha", "--n", "3",
                          "--alpha-start", "2", "--alpha-stop", "3", "--alpha-step", "0.25"});
  CHECK(column(custom.out, "alpha") == std::vector<double>{2, 2.25, 2.5, 2.75, 3});
  CHECK(column(custom.out, "n") == std::vector<double>{3, 3, 3, 3, 3});
}

TEST_CASE("per-point failures give nan and a nonzero exit") {
  const Run r = run({"sweep", "--family", "laguerre", "--vary", "alpha", "--measures", "w2,c_lmc",
                     "--alpha-start", "-0.8", "--alpha-stop", "0", "--alpha-step", "0.2"});
  CHECK(r.code != cli::kExitOk);
  CHECK(r.err.find("2 of 5 points") != std::string::npos);
  const auto w2 = column(r.out, "w2");
  REQUIRE(w2.size() == 5);
  CHECK(std::isnan(w2[0]));
  CHECK(std::isnan(w2[1]));
  CHECK(std::isfinite(w2[2]));
  CHECK(lines(r.out)[1].find("w2=failed") != std::string::npos);
}

TEST_CASE("sentinels only where the formulas diverge") {
  const Run r = run({"sweep", "--family", "laguerre", "--alpha", "2", "--n-max", "6"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("inf") == std::string::npos);
  CHECK(r.out.find("nan") == std::string::npos);
}

TEST_CASE("sweeps are deterministic across job counts") {
  const std::vector<std::string> base{"sweep", "--family", "laguerre", "--alpha", "50", "--n-max", "30"};
  auto with_jobs = [&](const char* jobs) {
    auto args = base;
    args.insert(args.end(), {"--jobs", jobs});
    return run(args).out;
  };
  const std::string one = with_jobs("1");
  CHECK(one == with_jobs("4"));
  CHECK(one == with_jobs("16"));
  CHECK(lines(one).size() == 32);
}

TEST_CASE("json sweep and output file") {
  const auto path = std::filesystem::temp_directory_path() / "orthocomplex_cli_test.json";
  const Run r = run({"sweep", "--family", "hermite", "--n-max", "3", "--format", "json", "--out",
                     path.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const json doc = json::parse(in);
  REQUIRE(doc.size() == 4);
  CHECK(doc[3]["measures"]["c_cr"]["value"].get<double>() == 49.0);
  std::filesystem::remove(path);
}

TEST_CASE("degree sweep shapes") {
  SUBCASE("cramer-rao grows with n") {
    for (const auto& family : std::vector<std::vector<std::string>>{
             {"--family", "hermite"},
             {"--family", "laguerre", "--alpha", "2"},
             {"--family", "jacobi", "--alpha", "2", "--beta", "2"}}) {
      auto args = std::vector<std::string>{"sweep", "--n-max", "40", "--measures", "c_cr"};
      args.insert(args.end(), family.begin(), family.end());
      const auto c = column(run(args).out, "c_cr");
      REQUIRE(c.size() == 41);
      for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
    }
  }
  SUBCASE("laguerre lmc dips first") {
    const auto c = column(run({"sweep", "--family", "laguerre", "--alpha", "50", "--n-max", "30",
                               "--measures", "c_lmc"})
                              .out,
                          "c_lmc");
    REQUIRE(c.size() == 31);
    CHECK(c[1] < c[0]);
    CHECK(c[30] > *std::min_element(c.begin(), c.end()));
  }
  SUBCASE("jacobi lmc has an interior minimum in alpha") {
    const auto c = column(run({"sweep", "--family", "jacobi", "--vary", "alpha", "--beta", "2",
                               "--measures", "c_lmc"})
                              .out,
                          "c_lmc");
    const auto low = std::min_element(c.begin(), c.end());
    CHECK(low != c.begin());
    CHECK(low != c.end() - 1);
  }
}

TEST_CASE("validate") {
  const Run r = run({"validate", "--suite", "representations", "--n-max", "8"});
  CHECK(r.code == cli::kExitOk);
  const auto out = lines(r.out);
  REQUIRE(out.size() > 100);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    CHECK(out[i].rfind("PASS ", 0) == 0);
    CHECK(out[i].find("achieved=") != std::string::npos);
  }
  CHECK(out.back().find("checks passed") != std::string::npos);

  const Run c = run({"validate", "--suite", "closed-vs-numeric", "--n-max", "20", "--jobs", "4"});
  CHECK(c.code == cli::kExitOk);
  CHECK(c.out.find("FAIL") == std::string::npos);

  const Run a = run({"validate", "--suite", "asymptotics"});
  CHECK(a.code == cli::kExitOk);

  CHECK(run({"validate", "--suite", "everything"}).code == cli::kExitUsage);
}
