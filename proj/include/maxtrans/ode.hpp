#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "maxtrans/curve.hpp"
#include "maxtrans/errors.hpp"

namespace maxtrans {

/// The three first-order equations for the planar generator of a surface
/// with a pseudo-null generator. Each has the shape f' = -g(p x + q f + a)
/// with g = tan or tanh.
enum class OdeKind {
  TanRotation,  ///< f' = -tan(k(cos(theta) f - x sin(theta)) + a)
  TanhNull,     ///< f' = -tanh(m(x - f) + a)
  TanhBoost,    ///< f' = -tanh(k(cosh(theta) f - x sinh(theta)) + a)
};

constexpr std::string_view to_string(OdeKind k) {
  switch (k) {
    case OdeKind::TanRotation: return "tan_rotation";
    case OdeKind::TanhNull: return "tanh_null";
    case OdeKind::TanhBoost: return "tanh_boost";
  }
  return "?";
}

/// Right-hand side f' = -g(psi), psi = p x + q f + a, with its chain-rule
/// derivatives along solutions.
struct ImplicitSlope {
  OdeKind kind = OdeKind::TanRotation;
  double p = 0.0;
  double q = 1.0;
  double a = 0.0;

  static ImplicitSlope tan_rotation(double k, double theta, double a) {
    return {OdeKind::TanRotation, -k * std::sin(theta), k * std::cos(theta), a};
  }
  static ImplicitSlope tanh_null(double m, double a) { return {OdeKind::TanhNull, m, -m, a}; }
  static ImplicitSlope tanh_boost(double k, double theta, double a) {
    return {OdeKind::TanhBoost, -k * std::sinh(theta), k * std::cosh(theta), a};
  }

  bool uses_tan() const { return kind == OdeKind::TanRotation; }
  double psi(double x, double f) const { return p * x + q * f + a; }

  /// g(psi), g'(psi), g''(psi).
  void g(double u, double& g0, double& g1, double& g2) const {
    if (uses_tan()) {
      g0 = std::tan(u);
      g1 = 1.0 + g0 * g0;
      g2 = 2.0 * g0 * g1;
    } else {
      g0 = std::tanh(u);
      g1 = 1.0 - g0 * g0;
      g2 = -2.0 * g0 * g1;
    }
  }

  double slope(double x, double f) const {
    double g0, g1, g2;
    g(psi(x, f), g0, g1, g2);
    return -g0;
  }

  /// f^(order)(x) for order 1..3 along the solution through (x, f).
  double derivative(double x, double f, int order) const {
    double g0, g1, g2;
    g(psi(x, f), g0, g1, g2);
    const double f1 = -g0;
    if (order == 1) return f1;
    const double dpsi = p + q * f1;
    const double f2 = -g1 * dpsi;
    if (order == 2) return f2;
    return -g2 * dpsi * dpsi - g1 * q * f2;
  }

  /// Distance of psi(x, f) from the nearest pole of tan; infinite for tanh.
  double pole_distance(double x, double f) const {
    if (!uses_tan()) return kInf;
    return std::abs(std::remainder(psi(x, f) - std::numbers::pi / 2, std::numbers::pi));
  }

  /// Index of the branch (pi/2 + n pi, pi/2 + (n+1) pi) of tan containing psi.
  long branch(double x, double f) const {
    if (!uses_tan()) return 0;
    return static_cast<long>(std::floor((psi(x, f) - std::numbers::pi / 2) / std::numbers::pi));
  }
};

enum class StopReason { ReachedEnd, BlowUp, NearPole, NonFinite };

constexpr std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::ReachedEnd: return "reached_end";
    case StopReason::BlowUp: return "blowup";
    case StopReason::NearPole: return "near_pole";
    case StopReason::NonFinite: return "non_finite";
  }
  return "?";
}

struct OdeOptions {
  double blowup_cap = 1e6;
  double pole_margin = 1e-3;
  /// Step as a fraction of the domain width when no step is given.
  double relative_step = 2.5e-4;
};

/// Node table of an integrated solution with a C^2 quintic Hermite
/// interpolant built from f, f', f'' at the nodes.
class OdeSolution {
 public:
  ImplicitSlope rhs;
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> df;
  std::vector<double> ddf;
  double step = 0.0;
  /// Richardson estimate of the error of the reported nodes,
  /// max (16/15) |f_h - f_{h/2}| over the nodes.
  double max_step_error = 0.0;
  StopReason stop_lo = StopReason::ReachedEnd;
  StopReason stop_hi = StopReason::ReachedEnd;
  Interval requested{};

  bool truncated() const { return stop_lo != StopReason::ReachedEnd || stop_hi != StopReason::ReachedEnd; }

  /// Closed node range as an open interval (interpolation is valid inside).
  Interval usable() const { return {x.front(), x.back()}; }

  /// Interpolated f (order 0) or its interpolant derivative (orders 1..2).
  double interpolate(double xq, int order = 0) const {
    if (xq < x.front() || xq > x.back()) {
      throw DomainError("x = " + std::to_string(xq) + " outside integrated range");
    }
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    i = std::min(i, x.size() - 2);
    const double h = x[i + 1] - x[i];
    const double t = (xq - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double y0 = f[i], d0 = df[i] * h, s0 = ddf[i] * h * h;
    const double y1 = f[i + 1], d1 = df[i + 1] * h, s1 = ddf[i + 1] * h * h;
    if (order == 0) {
      return y0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + d0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
             s0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) + y1 * (10 * t3 - 15 * t4 + 6 * t5) +
             d1 * (-4 * t3 + 7 * t4 - 3 * t5) + s1 * (0.5 * t3 - t4 + 0.5 * t5);
    }
    if (order == 1) {
      return (y0 * (-30 * t2 + 60 * t3 - 30 * t4) + d0 * (1 - 18 * t2 + 32 * t3 - 15 * t4) +
              s0 * (t - 4.5 * t2 + 6 * t3 - 2.5 * t4) + y1 * (30 * t2 - 60 * t3 + 30 * t4) +
              d1 * (-12 * t2 + 28 * t3 - 15 * t4) + s1 * (1.5 * t2 - 4 * t3 + 2.5 * t4)) /
             h;
    }
    return (y0 * (-60 * t + 180 * t2 - 120 * t3) + d0 * (-36 * t + 96 * t2 - 60 * t3) +
            s0 * (1 - 9 * t + 18 * t2 - 10 * t3) + y1 * (60 * t - 180 * t2 + 120 * t3) +
            d1 * (-24 * t + 84 * t2 - 60 * t3) + s1 * (3 * t - 12 * t2 + 10 * t3)) /
           (h * h);
  }

  /// f^(order)(x) for order 0..3: position from the interpolant, higher
  /// derivatives from the equation itself evaluated at that position.
  double eval(double xq, int order) const {
    const double v = interpolate(xq, 0);
    return order == 0 ? v : rhs.derivative(xq, v, order);
  }
};

namespace detail {

struct Sweep {
  std::vector<double> x, f;
  StopReason reason = StopReason::ReachedEnd;
};

inline StopReason classify(const ImplicitSlope& rhs, double x, double f, const OdeOptions& opt) {
  if (!std::isfinite(f)) return StopReason::NonFinite;
  if (rhs.pole_distance(x, f) < opt.pole_margin) return StopReason::NearPole;
  const double s = rhs.slope(x, f);
  if (!std::isfinite(s)) return StopReason::NonFinite;
  if (std::abs(s) > opt.blowup_cap) return StopReason::BlowUp;
  return StopReason::ReachedEnd;
}

/// RK4 from (x0, f0) towards `end` with step magnitude h; the final step is
/// shortened to land on `end`.
inline Sweep rk4_sweep(const ImplicitSlope& rhs, double x0, double f0, double end, double h, const OdeOptions& opt) {
  Sweep out;
  out.x.push_back(x0);
  out.f.push_back(f0);
  if (end == x0) return out;
  const double dir = end > x0 ? 1.0 : -1.0;
  const auto n = static_cast<long>(std::ceil(std::abs(end - x0) / h - 1e-9));
  double xc = x0, fc = f0;
  for (long i = 1; i <= n; ++i) {
    const double xn = i == n ? end : x0 + dir * static_cast<double>(i) * h;
    const double hs = xn - xc;
    const double k1 = rhs.slope(xc, fc);
    const double k2 = rhs.slope(xc + 0.5 * hs, fc + 0.5 * hs * k1);
    const double k3 = rhs.slope(xc + 0.5 * hs, fc + 0.5 * hs * k2);
    const double k4 = rhs.slope(xn, fc + hs * k3);
    const double fn = fc + hs * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    const double stages[] = {k1, k2, k3, k4};
    bool bad = false;
    for (double k : stages) bad = bad || !std::isfinite(k) || std::abs(k) > opt.blowup_cap;
    StopReason r = classify(rhs, xn, fn, opt);
    if (bad && r == StopReason::ReachedEnd) r = StopReason::BlowUp;
    // A step can jump across a pole of tan without landing near it.
    if (r == StopReason::ReachedEnd && rhs.branch(xn, fn) != rhs.branch(xc, fc)) r = StopReason::NearPole;
    if (r != StopReason::ReachedEnd) {
      out.reason = r;
      break;
    }
    xc = xn;
    fc = fn;
    out.x.push_back(xc);
    out.f.push_back(fc);
  }
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

/// Integrate f' = rhs(x, f) with f(x0) = f0 over `domain` in both
/// directions from x0 using fixed-step RK4. `step` <= 0 selects
/// opt.relative_step times the domain width. Integration stops early (and the
/// solution is marked truncated) near a pole of tan or when |f'| exceeds the
/// blow-up cap.
inline OdeSolution solve_scalar_ode(const ImplicitSlope& rhs, double x0, double f0, Interval domain, double step = 0.0,
                                    const OdeOptions& opt = {}) {
  if (!domain.is_finite() || domain.empty()) throw ParameterError("ODE domain must be a finite nonempty interval");
  if (x0 < domain.lo || x0 > domain.hi) {
    throw ParameterError("x0 = " + detail::fmt(x0) + " must lie in " + describe(domain));
  }
  if (!std::isfinite(f0)) throw ParameterError("f0 must be finite");
  const StopReason start = detail::classify(rhs, x0, f0, opt);
  if (start != StopReason::ReachedEnd) {
    throw ParameterError("initial point lies on a pole of the equation (psi = " + detail::fmt(rhs.psi(x0, f0)) +
                         ", |psi - pi/2 mod pi| >= " + detail::fmt(opt.pole_margin) + " required)");
  }
  const double h = step > 0.0 ? step : opt.relative_step * domain.width();

  const detail::Sweep back = detail::rk4_sweep(rhs, x0, f0, domain.lo, h, opt);
  const detail::Sweep fwd = detail::rk4_sweep(rhs, x0, f0, domain.hi, h, opt);

  OdeSolution sol;
  sol.rhs = rhs;
  sol.step = h;
  sol.requested = domain;
  sol.stop_lo = back.reason;
  sol.stop_hi = fwd.reason;
  for (std::size_t i = back.x.size(); i-- > 1;) {
    sol.x.push_back(back.x[i]);
    sol.f.push_back(back.f[i]);
  }
  sol.x.insert(sol.x.end(), fwd.x.begin(), fwd.x.end());
  sol.f.insert(sol.f.end(), fwd.f.begin(), fwd.f.end());
  if (sol.x.size() < 2) throw ParameterError("ODE solution stops immediately at x0 = " + detail::fmt(x0));
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    sol.df.push_back(rhs.derivative(sol.x[i], sol.f[i], 1));
    sol.ddf.push_back(rhs.derivative(sol.x[i], sol.f[i], 2));
  }

  // Richardson: rerun at h/2 over the accepted range and compare at the nodes both runs reach.
  const detail::Sweep back2 = detail::rk4_sweep(rhs, x0, f0, sol.x.front(), 0.5 * h, opt);
  const detail::Sweep fwd2 = detail::rk4_sweep(rhs, x0, f0, sol.x.back(), 0.5 * h, opt);
  double err = 0.0;
  auto compare = [&](const detail::Sweep& coarse, const detail::Sweep& fine) {
    for (std::size_t i = 0; i < coarse.x.size(); ++i) {
      // Fine nodes at index 2i coincide with coarse node i except the shortened last step.
      const std::size_t j = std::min(2 * i, fine.x.size() - 1);
      if (std::abs(fine.x[j] - coarse.x[i]) > 1e-12 * std::max(1.0, std::abs(coarse.x[i]))) continue;
      err = std::max(err, std::abs(coarse.f[i] - fine.f[j]) * 16.0 / 15.0);
    }
  };
  compare(back, back2);
  compare(fwd, fwd2);
  sol.max_step_error = err;
  return sol;
}

/// Planar generator built from an ODE solution: the chosen coordinate axis
/// carries f, the x axis carries the parameter.
inline CurveEvaluator ode_curve(const OdeSolution& sol, int f_axis, std::string name) {
  auto shared = std::make_shared<const OdeSolution>(sol);
  const Interval usable = sol.usable();
  return CurveEvaluator::analytic(usable, [shared, f_axis](double x, int order) -> MVec3 {
    const double v = shared->eval(x, order);
    MVec3 out{order == 0 ? x : (order == 1 ? 1.0 : 0.0), 0.0, 0.0};
    if (f_axis == 1) out.y = v;
    else out.z = v;
    return out;
  }, std::move(name), false);
}

}  // namespace maxtrans
