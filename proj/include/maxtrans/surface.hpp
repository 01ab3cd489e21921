#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxtrans/curve.hpp"
#include "maxtrans/errors.hpp"
#include "maxtrans/frames.hpp"
#include "maxtrans/minkowski.hpp"
#include "maxtrans/parallel.hpp"

namespace maxtrans {

/// Uniform ns x nt grid over [s0, s1] x [t0, t1], endpoints included.
/// Samples are ordered row-major: index i * nt + j for (s_i, t_j).
struct GridSpec {
  double s0 = 0.0;
  double s1 = 1.0;
  double t0 = 0.0;
  double t1 = 1.0;
  int ns = 50;
  int nt = 50;

  std::vector<double> s_values() const { return linspace(s0, s1, ns); }
  std::vector<double> t_values() const { return linspace(t0, t1, nt); }
  std::size_t size() const { return static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt); }
  bool operator==(const GridSpec&) const = default;
};

/// Named numeric parameters of a surface, in insertion order.
using ParamList = std::vector<std::pair<std::string, double>>;

/// X(s, t) = alpha(s) + beta(t) on s_domain x t_domain.
class TranslationSurface {
 public:
  TranslationSurface() = default;
  TranslationSurface(CurveEvaluator alpha, CurveEvaluator beta, std::string family = {}, ParamList params = {})
      : alpha_(std::move(alpha)), beta_(std::move(beta)), family_(std::move(family)), params_(std::move(params)) {
    s_domain_ = alpha_.domain();
    t_domain_ = beta_.domain();
  }

  const CurveEvaluator& alpha() const { return alpha_; }
  const CurveEvaluator& beta() const { return beta_; }
  const Interval& s_domain() const { return s_domain_; }
  const Interval& t_domain() const { return t_domain_; }
  const std::string& family() const { return family_; }
  const ParamList& params() const { return params_; }

  MVec3 point(double s, double t) const {
    check_domain(s, t);
    return alpha_(s) + beta_(t);
  }

  /// Same surface with the generators exchanged: X'(t, s) = X(s, t).
  TranslationSurface swapped() const { return TranslationSurface(beta_, alpha_, family_, params_); }

  void check_domain(double s, double t) const {
    if (!s_domain_.contains(s) || !t_domain_.contains(t)) {
      throw DomainError("(s, t) = (" + std::to_string(s) + ", " + std::to_string(t) + ") outside surface domain " +
                        describe(s_domain_) + " x " + describe(t_domain_));
    }
  }

 private:
  CurveEvaluator alpha_;
  CurveEvaluator beta_;
  Interval s_domain_{};
  Interval t_domain_{};
  std::string family_;
  ParamList params_;
};

struct SurfaceSample {
  double s = 0.0;
  double t = 0.0;
  MVec3 point;
  MVec3 Xs;
  MVec3 Xt;
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  /// G det(Xs,Xt,Xss) - 2F det(Xs,Xt,Xst) + E det(Xs,Xt,Xtt).
  double H_numerator = 0.0;
  /// |H_numerator| / max(1, |EG - F^2|^{3/2}).
  double H_residual = 0.0;
  /// det(Xs, Xt, Xst); Xst vanishes identically on a translation surface.
  double mixed_term = 0.0;
  std::optional<double> kappa1;
  std::optional<double> kappa2;
  Causality causal = Causality::Spacelike;
  bool regular = true;
};

/// Relative tolerance for regularity |Xs x Xt|_E > tol |Xs|_E |Xt|_E.
inline constexpr double kRegularityTol = 1e-8;

namespace detail {

inline Causality surface_causality(double E, double W, const MVec3& xs, const MVec3& xt) {
  const double thresh = kCausalityTol * euclid_norm2(xs) * euclid_norm2(xt);
  if (W > thresh && E > 0.0) return Causality::Spacelike;
  if (W < -thresh) return Causality::Timelike;
  return Causality::Lightlike;
}

inline bool unit_speed(const MVec3& d1) { return std::abs(inner(d1, d1) - 1.0) <= kUnitSpeedTol; }

}  // namespace detail

inline SurfaceSample sample(const TranslationSurface& surf, double s, double t) {
  surf.check_domain(s, t);
  SurfaceSample out;
  out.s = s;
  out.t = t;
  const MVec3 a1 = surf.alpha().eval(s, 1);
  const MVec3 a2 = surf.alpha().eval(s, 2);
  const MVec3 b1 = surf.beta().eval(t, 1);
  const MVec3 b2 = surf.beta().eval(t, 2);
  out.point = surf.alpha()(s) + surf.beta()(t);
  out.Xs = a1;
  out.Xt = b1;
  out.E = inner(a1, a1);
  out.F = inner(a1, b1);
  out.G = inner(b1, b1);
  const MVec3 xst{};
  out.mixed_term = det3(a1, b1, xst);
  const double da = det3(a1, b1, a2);
  const double db = det3(a1, b1, b2);
  out.H_numerator = out.G * da - 2.0 * out.F * out.mixed_term + out.E * db;
  const double W = out.E * out.G - out.F * out.F;
  out.H_residual = std::abs(out.H_numerator) / std::max(1.0, std::pow(std::abs(W), 1.5));
  if (detail::unit_speed(a1) && detail::unit_speed(b1)) {
    out.kappa1 = da;
    out.kappa2 = db;
  }
  const double cn = euclid_norm(cross(a1, b1));
  out.regular = cn > kRegularityTol * euclid_norm(a1) * euclid_norm(b1);
  out.causal = out.regular ? detail::surface_causality(out.E, W, a1, b1) : Causality::Lightlike;
  return out;
}

/// kappa1 = det(alpha', beta', alpha''), kappa2 = det(alpha', beta', beta'').
/// Requires both generators to be unit-speed at (s, t).
inline std::pair<double, double> principal_summands(const TranslationSurface& surf, double s, double t) {
  surf.check_domain(s, t);
  const MVec3 a1 = surf.alpha().eval(s, 1);
  const MVec3 b1 = surf.beta().eval(t, 1);
  if (!detail::unit_speed(a1) || !detail::unit_speed(b1)) {
    throw PreconditionError("principal summands need unit-speed generators (|<a',a'>-1| = " +
                            std::to_string(std::abs(inner(a1, a1) - 1.0)) + ", |<b',b'>-1| = " +
                            std::to_string(std::abs(inner(b1, b1) - 1.0)) + ")");
  }
  return {det3(a1, b1, surf.alpha().eval(s, 2)), det3(a1, b1, surf.beta().eval(t, 2))};
}

/// Largest trial step of the mean-curvature oracle; trial steps halve from here.
inline double oracle_step(double s, double t) { return 2e-2 * std::max(1.0, std::abs(s) + std::abs(t)); }
inline constexpr int kOracleTrials = 6;

/// Mean curvature from the full first and second fundamental forms, with
/// every derivative taken by 5-point central differences of the position
/// X(s, t), extrapolated once from steps h and h/2. N = Xs x Xt / |Xs x Xt|
/// and H = -(eG - 2fF + gE) / (2 (EG - F^2)). The step is reduced near the
/// domain boundary so all stencil nodes stay inside.
inline double mean_curvature_oracle_at_step(const TranslationSurface& surf, double s, double t, double h) {
  surf.check_domain(s, t);
  const Interval& sd = surf.s_domain();
  const Interval& td = surf.t_domain();
  const double room = std::min({s - sd.lo, sd.hi - s, t - td.lo, td.hi - t});
  h = std::min(h, 0.45 * room);
  auto X = [&](double u, double v) { return surf.alpha()(u) + surf.beta()(v); };
  struct D {
    MVec3 s, t, ss, tt, st;
  };
  constexpr double w1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  constexpr double w2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  auto diff = [&](double k) {
    D d;
    for (int i = 0; i < 5; ++i) {
      const double o = (i - 2) * k;
      const MVec3 ps = X(s + o, t), pt = X(s, t + o);
      d.s += (w1[i] / k) * ps;
      d.t += (w1[i] / k) * pt;
      d.ss += (w2[i] / (k * k)) * ps;
      d.tt += (w2[i] / (k * k)) * pt;
      for (int j = 0; j < 5; ++j) {
        if (w1[i] != 0.0 && w1[j] != 0.0) d.st += (w1[i] * w1[j] / (k * k)) * X(s + o, t + (j - 2) * k);
      }
    }
    return d;
  };
  const D d1 = diff(h);
  const D d2 = diff(0.5 * h);
  auto rich = [](const MVec3& coarse, const MVec3& fine) { return (16.0 * fine - coarse) / 15.0; };
  const MVec3 xs = rich(d1.s, d2.s), xt = rich(d1.t, d2.t);
  const MVec3 xss = rich(d1.ss, d2.ss), xtt = rich(d1.tt, d2.tt), xst = rich(d1.st, d2.st);

  const double E = inner(xs, xs), F = inner(xs, xt), G = inner(xt, xt);
  const double W = E * G - F * F;
  const MVec3 c = cross(xs, xt);
  if (euclid_norm(c) <= kRegularityTol * euclid_norm(xs) * euclid_norm(xt)) {
    throw RegularityError("Xs x Xt vanishes at (" + std::to_string(s) + ", " + std::to_string(t) + ")");
  }
  if (detail::surface_causality(E, W, xs, xt) != Causality::Spacelike) {
    throw CausalityError("surface is not spacelike at (" + std::to_string(s) + ", " + std::to_string(t) + ")");
  }
  const MVec3 N = c / std::sqrt(W);
  const double e = inner(N, xss), f = inner(N, xst), g = inner(N, xtt);
  return -(e * G - 2.0 * f * F + g * E) / (2.0 * W);
}

/// Oracle with an explicit step h > 0, or, for h <= 0, step selection: the
/// value at h_i = oracle_step / 2^i is taken where |H(h_i) - H(h_{i-1})| is
/// smallest over kOracleTrials trial steps.
inline double mean_curvature_oracle(const TranslationSurface& surf, double s, double t, double h = 0.0) {
  if (h > 0.0) return mean_curvature_oracle_at_step(surf, s, t, h);
  double step = oracle_step(s, t);
  double prev = mean_curvature_oracle_at_step(surf, s, t, step);
  double best = prev, best_gap = kInf;
  for (int i = 1; i < kOracleTrials; ++i) {
    step *= 0.5;
    const double cur = mean_curvature_oracle_at_step(surf, s, t, step);
    const double gap = std::abs(cur - prev);
    if (gap < best_gap) {
      best_gap = gap;
      best = cur;
    }
    prev = cur;
  }
  return best;
}

struct CausalMap {
  GridSpec grid;
  std::vector<Causality> cells;
  std::vector<bool> regular;
  std::size_t spacelike = 0;
  std::size_t timelike = 0;
  std::size_t lightlike = 0;
  std::size_t degenerate = 0;

  Causality at(int i, int j) const { return cells[static_cast<std::size_t>(i) * grid.nt + j]; }
};

/// Samples in row-major grid order, evaluated in parallel.
inline std::vector<SurfaceSample> sample_grid(const TranslationSurface& surf, const GridSpec& grid) {
  const auto sv = grid.s_values();
  const auto tv = grid.t_values();
  std::vector<SurfaceSample> out(grid.size());
  parallel_for(out.size(), [&](std::size_t k) {
    out[k] = sample(surf, sv[k / grid.nt], tv[k % grid.nt]);
  });
  return out;
}

/// Per-cell causal character. Non-regular points are counted as degenerate
/// (their cell holds Lightlike); regular lightlike points count as lightlike.
inline CausalMap causal_map(const TranslationSurface& surf, const GridSpec& grid) {
  CausalMap m;
  m.grid = grid;
  for (const auto& smp : sample_grid(surf, grid)) {
    m.cells.push_back(smp.causal);
    m.regular.push_back(smp.regular);
    if (!smp.regular) ++m.degenerate;
    else if (smp.causal == Causality::Spacelike) ++m.spacelike;
    else if (smp.causal == Causality::Timelike) ++m.timelike;
    else ++m.lightlike;
  }
  return m;
}

}  // namespace maxtrans
