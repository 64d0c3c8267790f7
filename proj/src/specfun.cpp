#include "orthocomplex/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace orthocomplex {

namespace {

using ext = long double;
using std::fabs;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Pascal rows 0..n_max; rows[n][k] = C(n, k).
template <class T>
std::vector<std::vector<T>> binomial_rows(int n_max) {
  std::vector<std::vector<T>> rows(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto& row = rows[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n) + 1, T(1));
    for (int k = 1; k < n; ++k) {
      const auto& prev = rows[static_cast<std::size_t>(n) - 1];
      row[static_cast<std::size_t>(k)] =
          prev[static_cast<std::size_t>(k) - 1] + prev[static_cast<std::size_t>(k)];
    }
  }
  return rows;
}

// sum over 0 <= k_i <= extent_i of joint[k_1+..+k_4] * prod_i factor_i[k_i].
SeriesValue quadruple_sum(const std::vector<wide_real>& joint,
                          const std::array<std::vector<wide_real>, 4>& factor,
                          SummationOrder order) {
  const std::array<int, 4> extent{static_cast<int>(factor[0].size()) - 1,
                                  static_cast<int>(factor[1].size()) - 1,
                                  static_cast<int>(factor[2].size()) - 1,
                                  static_cast<int>(factor[3].size()) - 1};
  const bool reverse = order == SummationOrder::reverse;
  auto index = [reverse](int step, int top) { return reverse ? top - step : step; };

  CompensatedSum<wide_real> sum;
  wide_real max_term = 0;
  long long count = 0;
  for (int s1 = 0; s1 <= extent[0]; ++s1) {
    const int k1 = index(s1, extent[0]);
    const wide_real& f1 = factor[0][static_cast<std::size_t>(k1)];
    for (int s2 = 0; s2 <= extent[1]; ++s2) {
      const int k2 = index(s2, extent[1]);
      const wide_real f12 = f1 * factor[1][static_cast<std::size_t>(k2)];
      for (int s3 = 0; s3 <= extent[2]; ++s3) {
        const int k3 = index(s3, extent[2]);
        const wide_real f123 = f12 * factor[2][static_cast<std::size_t>(k3)];
        const int base = k1 + k2 + k3;
        for (int s4 = 0; s4 <= extent[3]; ++s4) {
          const int k4 = index(s4, extent[3]);
          const wide_real term = f123 * factor[3][static_cast<std::size_t>(k4)] *
                                 joint[static_cast<std::size_t>(base + k4)];
          if (fabs(term) > max_term) max_term = fabs(term);
          sum.add(term);
          ++count;
        }
      }
    }
  }
  SeriesValue out;
  const wide_real value = sum.value();
  out.value = static_cast<double>(value);
  out.max_abs_term = static_cast<double>(max_term);
  out.terms = count;
  out.ill_conditioned = max_term > kIllConditionedRatio * fabs(value);
  return out;
}

std::string describe_parameter(const char* name, int i, double value) {
  std::ostringstream msg;
  msg << name << "_" << (i + 1) << " = " << value;
  return msg.str();
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << "log_gamma requires x > 0, got " << x;
    throw DomainError(msg.str());
  }
  return static_cast<double>(std::lgamma(static_cast<ext>(x)));
}

long double pochhammer_ext(long double a, int k) {
  if (k < 0) throw ArgumentError("Pochhammer index must be nonnegative");
  ext product = 1.0L;
  for (int j = 0; j < k; ++j) product *= a + static_cast<ext>(j);
  return product;
}

double pochhammer(double a, int k) { return static_cast<double>(pochhammer_ext(a, k)); }

template <class T>
std::vector<std::vector<T>> partial_bell_table(std::span<const T> a, int m_max, int l_max) {
  if (m_max < 0 || l_max < 0) throw ArgumentError("Bell table bounds must be nonnegative");
  const auto binom = binomial_rows<T>(std::max(m_max, 1));
  const T zero(0);
  auto a_at = [&](int j) -> const T& {
    return j >= 1 && static_cast<std::size_t>(j) <= a.size() ? a[static_cast<std::size_t>(j) - 1]
                                                            : zero;
  };
  std::vector<std::vector<T>> table(static_cast<std::size_t>(m_max) + 1,
                                    std::vector<T>(static_cast<std::size_t>(l_max) + 1, zero));
  table[0][0] = T(1);
  for (int m = 1; m <= m_max; ++m) {
    for (int l = 1; l <= std::min(l_max, m); ++l) {
      CompensatedSum<T> sum;
      for (int j = 1; j <= m - l + 1; ++j) {
        const T& prev = table[static_cast<std::size_t>(m - j)][static_cast<std::size_t>(l - 1)];
        if (prev == 0) continue;
        sum.add(binom[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(j) - 1] * a_at(j) *
                prev);
      }
      table[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)] = sum.value();
    }
  }
  return table;
}

template std::vector<std::vector<long double>> partial_bell_table(std::span<const long double>,
                                                                  int, int);
template std::vector<std::vector<wide_real>> partial_bell_table(std::span<const wide_real>, int,
                                                                int);

double partial_bell(const BellInput& input) {
  if (input.m < 1 || input.l < 1 || input.l > input.m) {
    throw ArgumentError("partial Bell polynomial needs 1 <= l <= m");
  }
  if (static_cast<int>(input.a.size()) != input.m - input.l + 1) {
    throw ArgumentError("partial Bell polynomial B_{m,l} takes exactly m-l+1 arguments");
  }
  const std::vector<ext> a(input.a.begin(), input.a.end());
  const auto table = partial_bell_table(std::span<const ext>(a), input.m, input.l);
  return static_cast<double>(
      table[static_cast<std::size_t>(input.m)][static_cast<std::size_t>(input.l)]);
}

template <class T>
TerminatingSum<T> gauss_2f1_terminating_sum(int k, const T& b, const T& c, const T& z) {
  if (k < 0) throw ArgumentError("terminating 2F1 needs k >= 0");
  CompensatedSum<T> sum;
  T abs_sum(1);
  T term(1);
  sum.add(term);
  for (int j = 0; j < k; ++j) {
    const T denom = c + j;
    if (denom == 0) {
      std::ostringstream msg;
      msg << "terminating 2F1: denominator Pochhammer (c)_j vanishes for c = "
          << static_cast<double>(c);
      throw ArgumentError(msg.str());
    }
    term *= (T(j - k) * (b + j)) / (denom * (j + 1)) * z;
    sum.add(term);
    abs_sum += fabs(term);
  }
  return {sum.value(), abs_sum};
}

template TerminatingSum<long double> gauss_2f1_terminating_sum(int, const long double&,
                                                               const long double&,
                                                               const long double&);
template TerminatingSum<wide_real> gauss_2f1_terminating_sum(int, const wide_real&,
                                                             const wide_real&, const wide_real&);

long double gauss_2f1_terminating_ext(int k, long double b, long double c, long double z) {
  return gauss_2f1_terminating_sum<ext>(k, b, c, z).value;
}

double gauss_2f1_terminating(int k, double b, double c, double z) {
  return static_cast<double>(gauss_2f1_terminating_ext(k, b, c, z));
}

SeriesValue lauricella_fa4(const LauricellaFA4Spec& spec, SummationOrder order) {
  std::array<std::vector<wide_real>, 4> factor;
  int total = 0;
  for (int i = 0; i < 4; ++i) {
    const auto is = static_cast<std::size_t>(i);
    if (!is_nonpositive_integer(spec.b[is])) {
      throw ArgumentError("Lauricella F_A: nonterminating numerator " +
                          describe_parameter("b", i, spec.b[is]));
    }
    if (is_nonpositive_integer(spec.c[is])) {
      throw ArgumentError("Lauricella F_A: denominator " + describe_parameter("c", i, spec.c[is]) +
                          " is a nonpositive integer");
    }
    const int extent = static_cast<int>(-spec.b[is]);
    total += extent;
    auto& f = factor[is];
    f.resize(static_cast<std::size_t>(extent) + 1);
    f[0] = 1;
    for (int k = 0; k < extent; ++k) {
      const wide_real kk = k;
      f[static_cast<std::size_t>(k) + 1] = f[static_cast<std::size_t>(k)] * (spec.b[is] + kk) /
                                           (spec.c[is] + kk) * spec.x[is] / (kk + 1);
    }
  }
  std::vector<wide_real> joint(static_cast<std::size_t>(total) + 1);
  joint[0] = 1;
  for (int k = 0; k < total; ++k) {
    joint[static_cast<std::size_t>(k) + 1] =
        joint[static_cast<std::size_t>(k)] * (spec.a + wide_real(k));
  }
  return quadruple_sum(joint, factor, order);
}

SeriesValue srivastava_daoust_f4(const SrivastavaDaoustSpec& spec, SummationOrder order) {
  std::array<std::vector<wide_real>, 4> factor;
  int total = 0;
  for (int i = 0; i < 4; ++i) {
    const auto is = static_cast<std::size_t>(i);
    const bool first = is_nonpositive_integer(spec.b[is]);
    const bool second = is_nonpositive_integer(spec.b_prime[is]);
    if (!first && !second) {
      throw ArgumentError("Srivastava-Daoust: nonterminating numerator pair " +
                          describe_parameter("b", i, spec.b[is]) + ", " +
                          describe_parameter("b'", i, spec.b_prime[is]));
    }
    if (is_nonpositive_integer(spec.c[is])) {
      throw ArgumentError("Srivastava-Daoust: denominator " +
                          describe_parameter("c", i, spec.c[is]) + " is a nonpositive integer");
    }
    int extent = std::numeric_limits<int>::max();
    if (first) extent = std::min(extent, static_cast<int>(-spec.b[is]));
    if (second) extent = std::min(extent, static_cast<int>(-spec.b_prime[is]));
    total += extent;
    auto& f = factor[is];
    f.resize(static_cast<std::size_t>(extent) + 1);
    f[0] = 1;
    for (int k = 0; k < extent; ++k) {
      const wide_real kk = k;
      f[static_cast<std::size_t>(k) + 1] = f[static_cast<std::size_t>(k)] *
                                           ((spec.b[is] + kk) * (spec.b_prime[is] + kk)) /
                                           (spec.c[is] + kk) * spec.x[is] / (kk + 1);
    }
  }
  std::vector<wide_real> joint(static_cast<std::size_t>(total) + 1);
  joint[0] = 1;
  for (int k = 0; k < total; ++k) {
    const wide_real denom = spec.B + wide_real(k);
    if (denom == 0) {
      throw ArgumentError("Srivastava-Daoust: joint denominator Pochhammer (B)_K vanishes");
    }
    joint[static_cast<std::size_t>(k) + 1] =
        joint[static_cast<std::size_t>(k)] * (spec.A + wide_real(k)) / denom;
  }
  return quadruple_sum(joint, factor, order);
}

}  // namespace orthocomplex
