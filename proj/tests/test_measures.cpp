#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "orthocomplex/measures.hpp"

using namespace orthocomplex;

namespace {

const auto H = PolynomialFamily::hermite();
PolynomialFamily L(double a) { return PolynomialFamily::laguerre(a); }
PolynomialFamily J(double a, double b) { return PolynomialFamily::jacobi(a, b); }

double rel(double value, double reference) {
  return std::fabs(value - reference) / std::fabs(reference);
}

std::vector<PolynomialFamily> closed_grid() {
  std::vector<PolynomialFamily> grid{H, L(0), L(2), L(5)};
  for (double a : {0.0, 2.0, 5.0}) {
    for (double b : {0.0, 2.0, 5.0}) grid.push_back(J(a, b));
  }
  return grid;
}

// sup rho by dense sampling of the support (the tails are monotone).
double sampled_sup(const RakhmanovDensity& d) {
  const Interval s = d.family().support();
  const double lo = std::isfinite(s.lower) ? s.lower : -12.0;
  const double hi = std::isfinite(s.upper) ? s.upper : 12.0 + 6.0 * d.degree();
  double sup = 0.0;
  const int count = 20000;
  for (int i = 1; i < count; ++i) {
    sup = std::max(sup, evaluate(d, lo + (hi - lo) * i / count).rho);
  }
  return sup;
}

// Independent high-precision quadratures of the definitions (mpmath, 30 digits).
struct Oracle {
  PolynomialFamily family;
  int n;
  double value;
};

}  // namespace

TEST_CASE("variance closed form examples") {
  CHECK(variance_closed(RakhmanovDensity(H, 3)) == 3.5);
  CHECK(variance_closed(RakhmanovDensity(L(2), 0)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(variance_closed(RakhmanovDensity(J(0, 0), 0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("fisher closed form examples") {
  CHECK(fisher_closed(RakhmanovDensity(H, 2)).value == 10.0);
  CHECK(fisher_closed(RakhmanovDensity(L(0), 3)).value == 13.0);
  const MeasureValue divergent = fisher_closed(RakhmanovDensity(L(0.5), 3));
  CHECK(divergent.is_infinite());
  CHECK(divergent.method == Method::closed_form);
  CHECK(fisher_closed(RakhmanovDensity(J(0, 0), 1)).value == 12.0);
  CHECK(fisher_closed(RakhmanovDensity(J(0, 0), 0)).value == 0.0);
  CHECK(fisher_closed(RakhmanovDensity(L(1.0), 2)).is_infinite());
  CHECK(fisher_closed(RakhmanovDensity(J(0.5, 3), 2)).is_infinite());
  CHECK(fisher_closed(RakhmanovDensity(J(2, 0.7), 2)).is_infinite());
}

TEST_CASE("numeric variance and fisher examples") {
  const RakhmanovDensity h0(H, 0);
  CHECK(variance_numeric(h0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fisher_numeric(h0).value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fisher_numeric(RakhmanovDensity(L(0), 0)).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fisher_numeric(RakhmanovDensity(J(0, 0), 1)).value == doctest::Approx(12.0).epsilon(1e-9));
}

TEST_CASE("laguerre fisher reading against the definition") {
  // mpmath quadrature of rho'^2/rho for (n, alpha) in {0..5} x {2, 3, 5}.
  const double oracle[6][3] = {{1.0, 0.5, 0.25},
                               {7.0 / 3.0, 1.25, 2.0 / 3.0},
                               {11.0 / 3.0, 2.0, 13.0 / 12.0},
                               {5.0, 2.75, 1.5},
                               {19.0 / 3.0, 3.5, 23.0 / 12.0},
                               {23.0 / 3.0, 4.25, 7.0 / 3.0}};
  const double alphas[3] = {2.0, 3.0, 5.0};
  for (int n = 0; n <= 5; ++n) {
    for (int i = 0; i < 3; ++i) {
      const RakhmanovDensity d(L(alphas[i]), n);
      CAPTURE(n);
      CAPTURE(alphas[i]);
      CHECK(rel(fisher_closed(d).value, oracle[n][i]) <= 1e-14);
      CHECK(rel(fisher_numeric(d).value, oracle[n][i]) <= 1e-8);
    }
  }
}

TEST_CASE("jacobi fisher branches against the definition") {
  const Oracle oracles[] = {{J(0, 3), 2, 123.0}, {J(3, 0), 2, 123.0}, {J(2, 5), 3, 232.75}};
  for (const auto& o : oracles) {
    const RakhmanovDensity d(o.family, o.n);
    CAPTURE(o.family.describe());
    CHECK(rel(fisher_closed(d).value, o.value) <= 1e-13);
    CHECK(rel(fisher_numeric(d).value, o.value) <= 1e-7);
  }
}

TEST_CASE("mirror symmetry of the jacobi density") {
  for (int n : {0, 1, 4, 7}) {
    const RakhmanovDensity a(J(2.0, 0.0), n);
    const RakhmanovDensity b(J(0.0, 2.0), n);
    for (double x : {-0.9, -0.3, 0.1, 0.65}) {
      CHECK(evaluate(a, x).rho == doctest::Approx(evaluate(b, -x).rho).epsilon(1e-13));
    }
    CHECK(fisher_closed(a).value == fisher_closed(b).value);
    CHECK(variance_closed(a) == doctest::Approx(variance_closed(b)).epsilon(1e-14));
  }
}

TEST_CASE("closed forms against quadrature on the grid") {
  for (const auto& family : closed_grid()) {
    for (int n = 0; n <= 20; ++n) {
      const RakhmanovDensity d(family, n);
      CAPTURE(family.describe());
      CAPTURE(n);
      CHECK(rel(variance_numeric(d), variance_closed(d)) <= 1e-9);
      const MeasureValue f = fisher_closed(d);
      if (f.is_infinite()) continue;
      const QuadratureResult q = fisher_numeric(d);
      REQUIRE(q.converged);
      if (f.value == 0.0) {
        CHECK(std::fabs(q.value) <= 1e-12);
      } else {
        CHECK(rel(q.value, f.value) <= 1e-6);
      }
    }
  }
}

TEST_CASE("fisher quadrature does not converge on divergent branches") {
  for (const auto& d : {RakhmanovDensity(L(0.5), 2), RakhmanovDensity(J(0.5, 2), 3)}) {
    const QuadratureResult q = fisher_numeric(d);
    CHECK((!q.converged || std::isinf(q.value)));
  }
}

TEST_CASE("shannon entropy examples") {
  CHECK(shannon_entropy_numeric(RakhmanovDensity(H, 0)).value ==
        doctest::Approx(0.5 * std::log(std::numbers::pi * std::numbers::e)).epsilon(1e-12));
  CHECK(shannon_entropy_numeric(RakhmanovDensity(L(0), 0)).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shannon_entropy_numeric(RakhmanovDensity(J(0, 0), 0)).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("shannon entropy against high-precision quadrature") {
  const Oracle oracles[] = {
      {H, 1, 1.3427277883861782571},       {H, 2, 1.4986092332517278406},
      {H, 5, 1.7680612532383330453},       {H, 10, 2.010178125467437754},
      {L(0), 2, 2.2064054954332891252},    {L(2), 3, 2.7610787049692885838},
      {L(-0.5), 1, 1.5168542202410161009}, {J(1, 2), 3, 0.32391574312056236811},
      {J(2, 2), 2, 0.36787969046201015035}, {J(-0.4, 0.3), 1, 0.1753006635139169073}};
  for (const auto& o : oracles) {
    CAPTURE(o.family.describe());
    CAPTURE(o.n);
    CHECK(rel(shannon_entropy_numeric(RakhmanovDensity(o.family, o.n)).value, o.value) <= 1e-10);
  }
}

TEST_CASE("shannon entropy is stable under tolerance halving") {
  for (const auto& family : {H, L(0), L(2.5), J(0, 0), J(2, 5), J(-0.4, 0.3)}) {
    for (int n = 0; n <= 20; ++n) {
      const RakhmanovDensity d(family, n);
      const QuadratureResult coarse = shannon_entropy_numeric(d, {1e-9});
      const QuadratureResult fine = shannon_entropy_numeric(d, {5e-10});
      CAPTURE(family.describe());
      CAPTURE(n);
      CHECK(std::fabs(coarse.value - fine.value) <= coarse.error_estimate);
    }
  }
}

TEST_CASE("entropic moment examples") {
  for (const auto& d : {RakhmanovDensity(H, 4), RakhmanovDensity(L(1.5), 3),
                        RakhmanovDensity(J(0.5, -0.5), 2)}) {
    CHECK(entropic_moment_numeric(d, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(entropic_moment_numeric(RakhmanovDensity(L(0), 1), 2.0).value ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(entropic_moment_numeric(RakhmanovDensity(H, 0), 2.0).value ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("entropic moments against high-precision quadrature") {
  struct MomentOracle {
    PolynomialFamily family;
    int n;
    double q;
    double value;
  };
  const MomentOracle oracles[] = {
      {L(0), 1, 2.0, 0.25},
      {L(2.5), 2, 2.0, 0.09056674142610234583},
      {J(0, 0), 1, 2.0, 0.9},
      {J(2, 2), 2, 2.0, 0.7801022506904859846},
      {H, 3, 2.0, 0.22908013757426017054},
      {H, 3, 2.5, 0.11650643399086490633},
      {L(1), 2, 1.5, 0.32222123780322198232},
      {L(-0.5), 1, 1.5, 0.63480883907675539674},
      {J(0.5, -0.3), 2, 0.7, 1.101572632001374279},
      {L(-0.5), 2, 1.99, 9.0371522039073300461}};
  for (const auto& o : oracles) {
    CAPTURE(o.family.describe());
    CAPTURE(o.n);
    CAPTURE(o.q);
    CHECK(rel(entropic_moment_numeric(RakhmanovDensity(o.family, o.n), o.q).value, o.value) <=
          1e-10);
  }
}

// d/dq ln W_q is the rho^q-weighted mean of ln rho: nonpositive when sup rho < 1,
// bounded by ln sup rho, nondecreasing in q (log-convexity), and equal to -S at q = 1.
TEST_CASE("entropic moments in q: monotonicity, slope bound and log-convexity") {
  const double qs[] = {1.0, 1.5, 2.0, 3.0};
  int decreasing = 0;
  int increasing = 0;
  for (const auto& family : {H, L(0.5), L(2), L(5), J(0, 0), J(2, 2), J(0, 5), J(5, 5), J(0, 50),
                             J(40, 60)}) {
    for (int n : {0, 1, 3, 6}) {
      const RakhmanovDensity d(family, n);
      const double sup = sampled_sup(d);
      const double entropy = shannon_entropy_numeric(d).value;
      std::vector<double> lw;
      for (double q : qs) lw.push_back(std::log(entropic_moment_numeric(d, q).value));
      CAPTURE(family.describe());
      CAPTURE(n);
      CAPTURE(sup);
      CAPTURE(entropy);
      for (std::size_t i = 1; i < lw.size(); ++i) {
        const double slope = (lw[i] - lw[i - 1]) / (qs[i] - qs[i - 1]);
        CHECK(slope <= std::log(sup) + 1e-9);
        if (sup < 1.0) CHECK(lw[i] < lw[i - 1]);
        if (entropy < 0.0) CHECK(lw[i] > lw[i - 1]);
        if (i >= 2) {
          const double before = (lw[i - 1] - lw[i - 2]) / (qs[i - 1] - qs[i - 2]);
          CHECK(slope >= before - 1e-9);
        }
      }
      if (sup < 1.0) ++decreasing;
      if (entropy < 0.0) ++increasing;
    }
  }
  CHECK(decreasing >= 8);
  CHECK(increasing >= 4);
}

TEST_CASE("endpoint domain rule for entropic moments") {
  const RakhmanovDensity lag(L(-0.5), 2);
  CHECK_NOTHROW(entropic_moment_numeric(lag, 1.5));
  CHECK_NOTHROW(entropic_moment_numeric(lag, 1.99));
  // Inside the domain, so never a DomainError; this close to the boundary
  // the quadrature may report that it cannot reach the tolerance.
  bool domain_error = false;
  try {
    entropic_moment_numeric(lag, 1.9999);
  } catch (const DomainError&) {
    domain_error = true;
  } catch (const IntegrationError&) {
  }
  CHECK(!domain_error);
  CHECK_THROWS_AS(entropic_moment_numeric(lag, 2.0), DomainError);
  CHECK_THROWS_AS(entropic_moment_numeric(lag, 2.5), DomainError);

  const RakhmanovDensity jac(J(0.3, -0.6), 1);
  CHECK_NOTHROW(entropic_moment_numeric(jac, 1.6));
  CHECK_THROWS_AS(entropic_moment_numeric(jac, 1.7), DomainError);
  CHECK_THROWS_AS(entropic_moment_numeric(jac, 2.0), DomainError);
  CHECK_THROWS_AS(entropic_moment_numeric(RakhmanovDensity(J(-0.5, 0.2), 1), 2.0), DomainError);

  CHECK_NOTHROW(entropic_moment_numeric(RakhmanovDensity(H, 3), 7.0));
  CHECK_THROWS_AS(entropic_moment_numeric(RakhmanovDensity(H, 3), 0.0), DomainError);
  CHECK_THROWS_AS(entropic_moment_numeric(RakhmanovDensity(H, 3), -1.0), DomainError);
}

TEST_CASE("renyi profile") {
  const RakhmanovDensity d(L(1), 3);
  const EntropicProfile p = renyi_profile(d, 2.0);
  CHECK(p.moment == doctest::Approx(entropic_moment_numeric(d, 2.0).value).epsilon(1e-15));
  CHECK(p.renyi_entropy == doctest::Approx(-std::log(p.moment)).epsilon(1e-14));
  CHECK(p.renyi_length == doctest::Approx(std::exp(p.renyi_entropy)).epsilon(1e-14));
  // R_q decreases with q and tends to S as q -> 1.
  const double s = shannon_entropy_numeric(d).value;
  CHECK(renyi_profile(d, 0.999).renyi_entropy == doctest::Approx(s).epsilon(1e-3));
  CHECK(renyi_profile(d, 0.5).renyi_entropy > s);
  CHECK(p.renyi_entropy < s);
}

TEST_CASE("disequilibrium representation examples") {
  CHECK(disequilibrium_laguerre_lauricella(0, 0).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(disequilibrium_laguerre_lauricella(1, 0).value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(disequilibrium_laguerre_bell(0, 0).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(disequilibrium_laguerre_bell(1, 0).value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(disequilibrium_jacobi_sd(0, 0, 0).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(disequilibrium_jacobi_sd(1, 0, 0).value == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(disequilibrium_jacobi_bell(0, 0, 0).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(disequilibrium_jacobi_bell(1, 0, 0).value == doctest::Approx(0.9).epsilon(1e-15));

  const double lag = 0.09056674142610234583;
  CHECK(rel(disequilibrium_laguerre_lauricella(2, 2.5).value, lag) <= 1e-12);
  CHECK(rel(disequilibrium_laguerre_bell(2, 2.5).value, lag) <= 1e-12);
  const double jac = 0.7801022506904859846;
  CHECK(rel(disequilibrium_jacobi_sd(2, 2, 2).value, jac) <= 1e-12);
  CHECK(rel(disequilibrium_jacobi_bell(2, 2, 2).value, jac) <= 1e-12);
}

TEST_CASE("disequilibrium representations agree") {
  for (double a : {0.0, 1.0, 2.5}) {
    for (int n = 0; n <= 8; ++n) {
      const double series = disequilibrium_laguerre_lauricella(n, a).value;
      const double bell = disequilibrium_laguerre_bell(n, a).value;
      const double gauss = entropic_moment_numeric(RakhmanovDensity(L(a), n), 2.0).value;
      CAPTURE(a);
      CAPTURE(n);
      CHECK(rel(bell, series) <= 1e-10);
      CHECK(rel(bell, gauss) <= 1e-10);
      CHECK(rel(series, gauss) <= 1e-10);
    }
  }
  for (double a : {0.0, 1.0, 2.0}) {
    for (double b : {0.0, 1.0, 2.0}) {
      for (int n = 0; n <= 8; ++n) {
        const double series = disequilibrium_jacobi_sd(n, a, b).value;
        const double bell = disequilibrium_jacobi_bell(n, a, b).value;
        const double gauss = entropic_moment_numeric(RakhmanovDensity(J(a, b), n), 2.0).value;
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(n);
        CHECK(rel(bell, series) <= 1e-10);
        CHECK(rel(bell, gauss) <= 1e-10);
        CHECK(rel(series, gauss) <= 1e-10);
      }
    }
  }
}

TEST_CASE("disequilibrium domain and default path") {
  CHECK_THROWS_AS(disequilibrium_laguerre_bell(2, -0.5), DomainError);
  CHECK_THROWS_AS(disequilibrium_laguerre_lauricella(2, -0.7), DomainError);
  CHECK_THROWS_AS(disequilibrium_jacobi_sd(2, 0.0, -0.5), DomainError);
  CHECK_THROWS_AS(disequilibrium_jacobi_bell(2, -0.6, 1.0), DomainError);
  CHECK_THROWS_AS(disequilibrium(RakhmanovDensity(L(-0.5), 1)), DomainError);

  const MeasureValue small = disequilibrium(RakhmanovDensity(L(1), 4));
  CHECK(small.method == Method::closed_form);
  CHECK(!small.ill_conditioned);
  const MeasureValue large = disequilibrium(RakhmanovDensity(L(1), kBellDegreeLimit + 1));
  CHECK(large.method == Method::numeric);
  CHECK(disequilibrium(RakhmanovDensity(H, 2)).method == Method::numeric);

  // Past the conditioning limit the default path must still be accurate.
  for (int n = 0; n <= kBellDegreeLimit + 3; ++n) {
    for (const auto& family : {L(0), L(2.5), J(2, 2), J(0, 5)}) {
      const RakhmanovDensity d(family, n);
      CAPTURE(family.describe());
      CAPTURE(n);
      CHECK(rel(disequilibrium(d).value, entropic_moment_numeric(d, 2.0).value) <= 1e-12);
    }
  }
}

TEST_CASE("lengths") {
  const Lengths h = lengths(RakhmanovDensity(H, 0));
  CHECK(h.standard_deviation == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(h.shannon_length ==
        doctest::Approx(std::sqrt(std::numbers::pi * std::numbers::e)).epsilon(1e-12));
  REQUIRE(h.fisher_length.has_value());
  CHECK(*h.fisher_length == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lengths(RakhmanovDensity(J(0, 0), 0)).shannon_length == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lengths(RakhmanovDensity(L(0), 0)).shannon_length ==
        doctest::Approx(std::numbers::e).epsilon(1e-12));
  CHECK(!lengths(RakhmanovDensity(L(0.5), 2)).fisher_length.has_value());
}

TEST_CASE("scaled views transform the numeric measures") {
  const RakhmanovDensity d(L(3), 4);
  for (double lambda : {0.5, 2.0, 10.0}) {
    const DensityView v(d, lambda);
    CAPTURE(lambda);
    CHECK(rel(variance_numeric(v), variance_closed(d) / (lambda * lambda)) <= 1e-10);
    CHECK(rel(fisher_numeric(v).value, fisher_closed(d).value * lambda * lambda) <= 1e-8);
    CHECK(std::fabs(shannon_entropy_numeric(v).value -
                    (shannon_entropy_numeric(d).value - std::log(lambda))) <= 1e-10);
    CHECK(rel(entropic_moment_numeric(v, 2.0).value, lambda * disequilibrium(d).value) <= 1e-10);
  }
  CHECK_THROWS_AS(DensityView(d, 0.0), ArgumentError);
}
