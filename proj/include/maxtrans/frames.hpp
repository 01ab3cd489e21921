#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "maxtrans/curve.hpp"
#include "maxtrans/errors.hpp"
#include "maxtrans/minkowski.hpp"
#include "maxtrans/numdiff.hpp"

namespace maxtrans {

/// Below this |alpha''| a curve is treated as locally straight.
inline constexpr double kFrameEps = 1e-8;

/// Allowed |<alpha', alpha'> - 1| for operations that assume arc length.
inline constexpr double kUnitSpeedTol = 1e-6;

/// Frame of a spacelike curve whose acceleration is spacelike or timelike:
///   t' = kappa n,  n' = -eps kappa t + tau b,  b' = tau n,
/// with <t,t> = 1, <n,n> = eps, <b,b> = -eps and b = t x n.
struct FrenetFrame {
  MVec3 t;
  MVec3 n;
  MVec3 b;
  double kappa = 0.0;
  double tau = 0.0;
  int epsilon = 1;
};

/// Frame of a pseudo-null curve (lightlike acceleration):
///   t' = n,  n' = kappa n,  b' = -t - kappa b,
/// with n = alpha'', b the lightlike vector orthogonal to t with <n,b> = 1.
/// The orientation det(t, n, b) is +1 or -1 and equals the sign in t x n = +-n;
/// it is a property of the curve and is recorded rather than imposed.
struct PseudoNullFrame {
  MVec3 t;
  MVec3 n;
  MVec3 b;
  double kappa = 0.0;
  int orientation = 1;
};

/// R = kappa'/kappa + tau'/tau and Sigma = (kappa'/kappa)' + kappa^2 + tau^2.
struct CurveInvariants {
  double R = 0.0;
  double Sigma = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
};

namespace detail {

inline void require_unit_speed(const CurveEvaluator& curve, double s) {
  const MVec3 d1 = curve.eval(s, 1);
  const double q = inner(d1, d1);
  if (std::abs(q - 1.0) > kUnitSpeedTol) {
    throw PreconditionError("curve '" + curve.name() + "' is not unit-speed at s = " + std::to_string(s) +
                            " (<a',a'> = " + std::to_string(q) + ")");
  }
}

}  // namespace detail

/// Causal character of alpha''(s). Throws DegenerateCurveError when alpha''
/// vanishes (straight generating curves are excluded).
inline Causality acceleration_causality(const CurveEvaluator& curve, double s) {
  const MVec3 a2 = curve.eval(s, 2);
  if (euclid_norm(a2) <= kFrameEps) {
    throw DegenerateCurveError("acceleration vanishes at s = " + std::to_string(s) + " (straight line)");
  }
  return causality(a2);
}

inline FrenetFrame frenet_frame(const CurveEvaluator& curve, double s) {
  detail::require_unit_speed(curve, s);
  const MVec3 a1 = curve.eval(s, 1);
  const MVec3 a2 = curve.eval(s, 2);
  const MVec3 a3 = curve.eval(s, 3);
  const double q = inner(a2, a2);
  const double kappa = std::sqrt(std::abs(q));
  if (euclid_norm(a2) <= kFrameEps) {
    throw DegenerateCurveError("acceleration vanishes at s = " + std::to_string(s) + " (straight line)");
  }
  if (causality(a2) == Causality::Lightlike) {
    throw WrongFrameError("acceleration is lightlike at s = " + std::to_string(s) + "; use pseudo_null_frame");
  }
  if (kappa <= kFrameEps) throw DegenerateCurveError("curvature below frame_eps at s = " + std::to_string(s));
  FrenetFrame f;
  f.t = a1;
  f.n = a2 / kappa;
  f.b = cross(f.t, f.n);
  f.kappa = kappa;
  f.epsilon = q > 0 ? 1 : -1;
  // <n', b> = det(t, a2, a3) / kappa^2 and tau = -eps <n', b>.
  f.tau = -f.epsilon * det3(a1, a2, a3) / (kappa * kappa);
  return f;
}

inline PseudoNullFrame pseudo_null_frame(const CurveEvaluator& curve, double s) {
  detail::require_unit_speed(curve, s);
  const MVec3 t = curve.eval(s, 1);
  const MVec3 n = curve.eval(s, 2);
  const MVec3 n1 = curve.eval(s, 3);
  if (euclid_norm(n) <= kFrameEps) {
    throw DegenerateCurveError("acceleration vanishes at s = " + std::to_string(s) + " (straight line)");
  }
  if (causality(n) != Causality::Lightlike) {
    throw WrongFrameError("acceleration is not lightlike at s = " + std::to_string(s) + "; use frenet_frame");
  }
  // w: a vector of t-perp with <w, n> = |n|_E^2 > 0 (n with z flipped, projected).
  const MVec3 nbar{n.x, n.y, -n.z};
  const MVec3 w = nbar - inner(nbar, t) * t;
  const double wn = inner(w, n);
  if (!(wn > 0.0)) throw WrongFrameError("pseudo-null frame system is singular at s = " + std::to_string(s));
  const double beta = 1.0 / wn;
  const double alpha = -0.5 * beta * beta * inner(w, w);
  PseudoNullFrame f;
  f.t = t;
  f.n = n;
  f.b = alpha * n + beta * w;
  f.kappa = inner(n1, f.b);
  f.orientation = det3(f.t, f.n, f.b) > 0 ? 1 : -1;
  return f;
}

/// R and Sigma at s, with kappa', tau' and (kappa'/kappa)' from 5-point
/// central differences of the Frenet frame outputs.
inline CurveInvariants curve_invariants(const CurveEvaluator& curve, double s) {
  const FrenetFrame f0 = frenet_frame(curve, s);
  if (std::abs(f0.tau) <= 1e-8 * std::max(1.0, f0.kappa)) {
    throw PlanarCurveError("torsion vanishes at s = " + std::to_string(s) + "; R is undefined for planar curves");
  }
  const double h = numdiff::curve_step(s);
  auto kappa = [&](double u) { return frenet_frame(curve, u).kappa; };
  auto tau = [&](double u) { return frenet_frame(curve, u).tau; };
  auto log_kappa = [&](double u) { return std::log(kappa(u)); };
  CurveInvariants out;
  out.kappa = f0.kappa;
  out.tau = f0.tau;
  const double dk = numdiff::central(kappa, s, h, 1);
  const double dt = numdiff::central(tau, s, h, 1);
  const double ddlogk = numdiff::central(log_kappa, s, h, 2);
  out.R = dk / f0.kappa + dt / f0.tau;
  out.Sigma = ddlogk + f0.kappa * f0.kappa + f0.tau * f0.tau;
  return out;
}

/// max over samples of |det(b', b'', b''')| / (|b'|_E |b''|_E |b'''|_E),
/// with 0/0 taken as 0. Samples where the second or third derivative is
/// below kFrameEps are locally planar and contribute 0.
inline double planarity_residual(const CurveEvaluator& curve, std::span<const double> samples) {
  double worst = 0.0;
  for (double s : samples) {
    const MVec3 d1 = curve.eval(s, 1);
    const MVec3 d2 = curve.eval(s, 2);
    const MVec3 d3 = curve.eval(s, 3);
    if (euclid_norm(d2) <= kFrameEps || euclid_norm(d3) <= kFrameEps) continue;
    const double scale = euclid_norm(d1) * euclid_norm(d2) * euclid_norm(d3);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(det3(d1, d2, d3)) / scale);
  }
  return worst;
}

/// Largest violation of the Frenet system at s, with frame derivatives from
/// central differences. Each equation's residual is divided by
/// max(1, |rhs|_E) so rapidly growing frames are compared on a relative scale.
inline double frenet_ode_residual(const CurveEvaluator& curve, double s) {
  const FrenetFrame f = frenet_frame(curve, s);
  const double h = numdiff::curve_step(s);
  const MVec3 dt = numdiff::central([&](double u) { return frenet_frame(curve, u).t; }, s, h, 1);
  const MVec3 dn = numdiff::central([&](double u) { return frenet_frame(curve, u).n; }, s, h, 1);
  const MVec3 db = numdiff::central([&](double u) { return frenet_frame(curve, u).b; }, s, h, 1);
  const MVec3 rt = f.kappa * f.n;
  const MVec3 rn = -f.epsilon * f.kappa * f.t + f.tau * f.b;
  const MVec3 rb = f.tau * f.n;
  auto rel = [](const MVec3& lhs, const MVec3& rhs) {
    return max_abs_component(lhs - rhs) / std::max(1.0, euclid_norm(rhs));
  };
  return std::max({rel(dt, rt), rel(dn, rn), rel(db, rb)});
}

inline double pseudo_null_ode_residual(const CurveEvaluator& curve, double s) {
  const PseudoNullFrame f = pseudo_null_frame(curve, s);
  const double h = numdiff::curve_step(s);
  const MVec3 dt = numdiff::central([&](double u) { return pseudo_null_frame(curve, u).t; }, s, h, 1);
  const MVec3 dn = numdiff::central([&](double u) { return pseudo_null_frame(curve, u).n; }, s, h, 1);
  const MVec3 db = numdiff::central([&](double u) { return pseudo_null_frame(curve, u).b; }, s, h, 1);
  const MVec3 rt = f.n;
  const MVec3 rn = f.kappa * f.n;
  const MVec3 rb = -f.t - f.kappa * f.b;
  auto rel = [](const MVec3& lhs, const MVec3& rhs) {
    return max_abs_component(lhs - rhs) / std::max(1.0, euclid_norm(rhs));
  };
  return std::max({rel(dt, rt), rel(dn, rn), rel(db, rb)});
}

/// Largest violation of the algebraic frame conditions (normalization,
/// orthogonality, b = t x n).
inline double frenet_algebra_residual(const FrenetFrame& f) {
  const double eps = f.epsilon;
  return std::max({std::abs(inner(f.t, f.t) - 1.0), std::abs(inner(f.n, f.n) - eps),
                   std::abs(inner(f.b, f.b) + eps), std::abs(inner(f.t, f.n)), std::abs(inner(f.t, f.b)),
                   std::abs(inner(f.n, f.b)), max_abs_component(f.b - cross(f.t, f.n))});
}

/// Null conditions on n and b are measured relative to their Euclidean size.
inline double pseudo_null_algebra_residual(const PseudoNullFrame& f) {
  const double nn = std::abs(inner(f.n, f.n)) / std::max(1.0, euclid_norm2(f.n));
  const double bb = std::abs(inner(f.b, f.b)) / std::max(1.0, euclid_norm2(f.b));
  return std::max({std::abs(inner(f.t, f.t) - 1.0), nn, bb, std::abs(inner(f.t, f.n)), std::abs(inner(f.t, f.b)),
                   std::abs(inner(f.n, f.b) - 1.0), std::abs(std::abs(det3(f.t, f.n, f.b)) - 1.0),
                   max_abs_component(cross(f.t, f.n) - f.orientation * f.n) / std::max(1.0, euclid_norm(f.n))});
}

}  // namespace maxtrans
