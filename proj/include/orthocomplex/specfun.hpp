#pragma once

// Terminating combinatorial and hypergeometric kernels: log-gamma and
// Pochhammer symbols, partial Bell polynomials, terminating 2F1, and the
// four-variable Lauricella F_A and Srivastava-Daoust series.

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "orthocomplex/detail/wide.hpp"
#include "orthocomplex/errors.hpp"

namespace orthocomplex {

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
 public:
  void add(T value) {
    using std::fabs;
    const T t = sum_ + value;
    if (fabs(sum_) >= fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(T value) {
    add(value);
    return *this;
  }

  /// Merge a partial sum accumulated elsewhere.
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  T value() const { return sum_ + compensation_; }

 private:
  T sum_ = 0;
  T compensation_ = 0;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1.
double pochhammer(double a, int k);
long double pochhammer_ext(long double a, int k);

struct BellInput {
  int m;
  int l;
  std::vector<double> a;  // a_1 .. a_{m-l+1}
};

/// Partial exponential Bell polynomial B_{m,l}(a_1, ..., a_{m-l+1}).
double partial_bell(const BellInput& input);

/// Table T[mm][ll] = B_{mm,ll}(a_1, a_2, ...) for mm <= m_max, ll <= l_max.
/// `a[j-1]` holds a_j; entries past the end of `a` count as zero.
/// Instantiated for long double and wide_real.
template <class T>
std::vector<std::vector<T>> partial_bell_table(std::span<const T> a, int m_max, int l_max);

/// sum_{j=0}^{k} (-k)_j (b)_j / ((c)_j j!) z^j.
double gauss_2f1_terminating(int k, double b, double c, double z);
long double gauss_2f1_terminating_ext(int k, long double b, long double c, long double z);

/// The same series together with sum_j |term_j|, for condition estimates.
/// Instantiated for long double and wide_real.
template <class T>
struct TerminatingSum {
  T value;
  T abs_sum;
};

template <class T>
TerminatingSum<T> gauss_2f1_terminating_sum(int k, const T& b, const T& c, const T& z);

/// Value of a terminating multiple series with conditioning diagnostic.
struct SeriesValue {
  double value = 0.0;
  double max_abs_term = 0.0;
  bool ill_conditioned = false;  // max|term| / |value| > 1e12
  // Terms are formed and summed in wide_real; value is the rounded result.
  long long terms = 0;
};

enum class SummationOrder { forward, reverse };

inline constexpr double kIllConditionedRatio = 1e12;

/// F_A^(4)(a; b_1..b_4; c_1..c_4; x_1..x_4) with every b_i a nonpositive integer.
struct LauricellaFA4Spec {
  double a;
  std::array<double, 4> b;
  std::array<double, 4> c;
  std::array<double, 4> x;
};

SeriesValue lauricella_fa4(const LauricellaFA4Spec& spec,
                           SummationOrder order = SummationOrder::forward);

/// Srivastava-Daoust F^{1:2;...;2}_{1:1;...;1} with a joint numerator A and
/// denominator B, per-variable numerator pairs (b_i, b'_i) each containing a
/// nonpositive integer, and per-variable denominators c_i.
struct SrivastavaDaoustSpec {
  double A;
  double B;
  std::array<double, 4> b;
  std::array<double, 4> b_prime;
  std::array<double, 4> c;
  std::array<double, 4> x;
};

SeriesValue srivastava_daoust_f4(const SrivastavaDaoustSpec& spec,
                                 SummationOrder order = SummationOrder::forward);

}  // namespace orthocomplex
