#include "density_quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "orthocomplex/specfun.hpp"

namespace orthocomplex::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

enum class PieceKind {
  interior,        // (lo, hi), both zeros of p_n
  anchored_lower,  // (lower, hi); integrate in u = x - lower
  anchored_upper,  // (lo, upper); integrate in u = upper - x
  tail_right,      // (lo, +inf)
  tail_left,       // (-inf, hi)
  whole_line,      // (-inf, +inf)
  half_line,       // (lower, +inf); integrate in u = x - lower
};

struct Piece {
  PieceKind kind;
  double lo;
  double hi;
};

struct PieceResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

class Evaluator {
 public:
  Evaluator(const DensityView& view, const LocalIntegrand& integrand)
      : rec_(view.density().recurrence()),
        degree_(view.density().degree()),
        scale_(view.scale()),
        log_scale_(std::log(static_cast<ext>(view.scale()))),
        integrand_(integrand) {
    const Interval s = view.density().family().support();
    lower_ = s.lower / view.scale();
    upper_ = s.upper / view.scale();
  }

  double lower() const { return lower_; }
  double upper() const { return upper_; }

  // Integrand at x with explicit distances to the finite endpoints.
  ext value(ext x, ext gap_lower, ext gap_upper) const {
    const ext lambda = scale_;
    const ScaledValue sv = rec_.scaled(degree_, lambda * x, lambda * gap_lower, lambda * gap_upper);
    LocalDensity local{};
    local.log_rho = sv.p == 0.0L ? -std::numeric_limits<ext>::infinity() : log_scale_ + sv.log_rho();
    const ext q_prime = 0.5L * sv.log_weight.derivative * sv.p + sv.dp;
    local.fisher_term = 4.0L * lambda * lambda * lambda * q_prime * q_prime;
    if (std::isnan(local.fisher_term)) local.fisher_term = 0.0L;  // exact endpoint hit
    return integrand_(local);
  }

  double at(ext x, ext gap_lower, ext gap_upper) const {
    return static_cast<double>(value(x, gap_lower, gap_upper));
  }

  double at(ext x) const {
    return at(x, x - static_cast<ext>(lower_), static_cast<ext>(upper_) - x);
  }

 private:
  const Recurrence& rec_;
  int degree_;
  double scale_;
  ext log_scale_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  const LocalIntegrand& integrand_;
};

std::vector<Piece> build_pieces(const Evaluator& eval, const DensityView& view) {
  const auto roots = recurrence_zeros(view.density().recurrence(), view.density().degree());
  std::vector<double> breaks;
  breaks.reserve(roots.size() + 2);
  breaks.push_back(eval.lower());
  for (const ext z : roots) breaks.push_back(static_cast<double>(z / view.scale()));
  breaks.push_back(eval.upper());

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    const bool lo_edge = i == 0;
    const bool hi_edge = i + 2 == breaks.size();
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (lo_inf && hi_inf) {
      pieces.push_back({PieceKind::whole_line, lo, hi});
    } else if (lo_inf) {
      pieces.push_back({PieceKind::tail_left, lo, hi});
    } else if (hi_inf) {
      pieces.push_back({lo_edge ? PieceKind::half_line : PieceKind::tail_right, lo, hi});
    } else if (lo_edge && hi_edge) {
      const double mid = 0.5 * (lo + hi);
      pieces.push_back({PieceKind::anchored_lower, lo, mid});
      pieces.push_back({PieceKind::anchored_upper, mid, hi});
    } else if (lo_edge) {
      pieces.push_back({PieceKind::anchored_lower, lo, hi});
    } else if (hi_edge) {
      pieces.push_back({PieceKind::anchored_upper, lo, hi});
    } else {
      pieces.push_back({PieceKind::interior, lo, hi});
    }
  }
  return pieces;
}

template <class F>
PieceResult run_gauss_kronrod(F&& f, double a, double b, double tol) {
  PieceResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, tol,
                                                                          &r.error, &r.l1);
  return r;
}

template <class F>
PieceResult run_tanh_sinh(F&& f, double a, double b, double tol) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  PieceResult r;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, a, b, tol, &r.error, &r.l1, &levels);
  return r;
}

template <class F>
PieceResult run_exp_sinh(F&& f, double tol) {
  static thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
  PieceResult r;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, 0.0, kInf, tol, &r.error, &r.l1, &levels);
  return r;
}

template <class F>
PieceResult run_sinh_sinh(F&& f, double tol) {
  static thread_local boost::math::quadrature::sinh_sinh<double> integrator(12);
  PieceResult r;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, tol, &r.error, &r.l1, &levels);
  return r;
}

// u = t^m with m = 1/(1+p) turns u^p dx into a constant in t. Capped so
// that t^m stays inside the long double range where it matters.
class Stretch {
 public:
  explicit Stretch(double power)
      : m_(power < 0.0 ? std::min(1.0L / (1.0L + static_cast<ext>(power)), 200.0L) : 1.0L) {}

  ext gap(double t) const { return m_ == 1.0L ? t : std::pow(static_cast<ext>(t), m_); }
  ext jacobian(double t) const {
    return m_ == 1.0L ? 1.0L : m_ * std::pow(static_cast<ext>(t), m_ - 1.0L);
  }
  double limit(double width) const {
    return m_ == 1.0L ? width : static_cast<double>(std::pow(static_cast<ext>(width), 1.0L / m_));
  }

 private:
  ext m_;
};

PieceResult integrate_piece(const Evaluator& eval, const Piece& piece, PieceStyle style,
                            EndpointPowers powers, double tol) {
  const ext lower = eval.lower();
  const ext upper = eval.upper();
  const bool smooth = style == PieceStyle::smooth;
  switch (piece.kind) {
    case PieceKind::interior: {
      // Zeros are endpoints here, so even the smooth integrands carry
      // u^2 ln u terms there; GK bisects those to full depth.
      auto f = [&](double x) { return eval.at(x); };
      return run_tanh_sinh(f, piece.lo, piece.hi, tol);
    }
    case PieceKind::anchored_lower: {
      const Stretch s(powers.lower);
      auto f = [&](double t) {
        const ext u = s.gap(t);
        if (u == 0.0L) return 0.0;
        const ext x = lower + u;
        return static_cast<double>(eval.value(x, u, upper - x) * s.jacobian(t));
      };
      return run_tanh_sinh(f, 0.0, s.limit(piece.hi - piece.lo), tol);
    }
    case PieceKind::anchored_upper: {
      const Stretch s(powers.upper);
      auto f = [&](double t) {
        const ext u = s.gap(t);
        if (u == 0.0L) return 0.0;
        const ext x = upper - u;
        return static_cast<double>(eval.value(x, x - lower, u) * s.jacobian(t));
      };
      return run_tanh_sinh(f, 0.0, s.limit(piece.hi - piece.lo), tol);
    }
    case PieceKind::tail_right: {
      if (smooth) {
        auto f = [&](double x) { return eval.at(x); };
        return run_gauss_kronrod(f, piece.lo, kInf, tol);
      }
      const ext start = piece.lo;
      auto f = [&](double u) { return eval.at(start + u); };
      return run_exp_sinh(f, tol);
    }
    case PieceKind::tail_left: {
      if (smooth) {
        auto f = [&](double x) { return eval.at(x); };
        return run_gauss_kronrod(f, -kInf, piece.hi, tol);
      }
      const ext start = piece.hi;
      auto f = [&](double u) { return eval.at(start - u); };
      return run_exp_sinh(f, tol);
    }
    case PieceKind::whole_line: {
      auto f = [&](double x) { return eval.at(x); };
      return smooth ? run_gauss_kronrod(f, -kInf, kInf, tol) : run_sinh_sinh(f, tol);
    }
    case PieceKind::half_line: {
      const Stretch s(powers.lower);
      auto f = [&](double t) {
        const ext u = s.gap(t);
        if (u == 0.0L) return 0.0;
        const ext x = lower + u;
        return static_cast<double>(eval.value(x, u, upper - x) * s.jacobian(t));
      };
      return run_exp_sinh(f, tol);
    }
  }
  return {};
}

}  // namespace

QuadratureResult integrate_density(const DensityView& view, const LocalIntegrand& integrand,
                                   PieceStyle style, const NumericOptions& options,
                                   EndpointPowers powers) {
  const Evaluator eval(view, integrand);
  const auto pieces = build_pieces(eval, view);
  const double piece_tol = std::max(options.tolerance * 1e-3, 1e-14);

  CompensatedSum<long double> total;
  double error = 0.0;
  double l1 = 0.0;
  bool finite = true;
  for (const Piece& piece : pieces) {
    const PieceResult r = integrate_piece(eval, piece, style, powers, piece_tol);
    if (!std::isfinite(r.value) || !std::isfinite(r.error)) finite = false;
    total.add(r.value);
    error += r.error + 64.0 * kEps * r.l1;
    l1 += r.l1;
  }
  QuadratureResult out;
  out.value = static_cast<double>(total.value());
  out.error_estimate = error;
  out.converged = finite && error <= options.tolerance * std::max(1.0, l1);
  return out;
}

}  // namespace orthocomplex::detail
