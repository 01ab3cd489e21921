#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "maxtrans/curve.hpp"

namespace maxtrans {

namespace detail {

/// Cumulative arc length of a spacelike curve on a finite window, tabulated
/// at uniform knots and refined by adaptive Gauss-Kronrod between knots.
class ArcLengthTable {
 public:
  ArcLengthTable(CurveEvaluator curve, Interval window, double s0, int knots)
      : curve_(std::move(curve)), window_(window) {
    knots_ = linspace(window.lo, window.hi, knots);
    cumulative_.assign(knots_.size(), 0.0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      cumulative_[i] = cumulative_[i - 1] + integrate(knots_[i - 1], knots_[i]);
    }
    offset_ = length_from_window_start(s0);
  }

  double speed(double s) const {
    const MVec3 d = curve_.eval(s, 1);
    return std::sqrt(inner(d, d));
  }

  /// Signed arc length from s0 to s.
  double length(double s) const { return length_from_window_start(s) - offset_; }

  double min_length() const { return -offset_; }
  double max_length() const { return cumulative_.back() - offset_; }

  /// Parameter s with length(s) == sigma.
  double invert(double sigma) const {
    const double target = sigma + offset_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    i = std::min(i, knots_.size() - 2);
    double lo = knots_[i];
    double hi = knots_[i + 1];
    // Keep Newton strictly inside the open curve domain.
    lo = std::max(lo, std::nextafter(window_.lo, window_.hi));
    hi = std::min(hi, std::nextafter(window_.hi, window_.lo));
    const double frac = (target - cumulative_[i]) / (cumulative_[i + 1] - cumulative_[i]);
    const double guess = std::clamp(knots_[i] + frac * (knots_[i + 1] - knots_[i]), lo, hi);
    const double base = cumulative_[i];
    const double knot = knots_[i];
    auto fn = [&](double s) {
      return std::make_pair(base + integrate(knot, s) - target, speed(s));
    };
    std::uintmax_t iters = 60;
    return boost::math::tools::newton_raphson_iterate(fn, guess, lo, hi, 50, iters);
  }

 private:
  double integrate(double a, double b) const {
    if (a == b) return 0.0;
    auto f = [this](double s) { return speed(s); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-14);
  }

  double length_from_window_start(double s) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    i = std::min(i, knots_.size() - 1);
    return cumulative_[i] + integrate(knots_[i], s);
  }

  CurveEvaluator curve_;
  Interval window_;
  double offset_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

}  // namespace detail

/// Reparametrize a spacelike curve by arc length measured from s0.
///
/// The result gamma satisfies gamma(0) = curve(s0) and has the same image as
/// the curve on `window` (default: the curve's own domain, which must then be
/// finite). Derivatives of gamma follow from the chain rule with ds/dsigma =
/// 1/|alpha'|, so gamma is unit-speed up to rounding and |<gamma', gamma'> - 1|
/// is checked against tol on a sample of the new domain.
///
/// Throws CausalityError if alpha' is not spacelike somewhere on a 257-point
/// sample of the window.
inline CurveEvaluator arc_length_reparam(const CurveEvaluator& curve, double s0, double tol,
                                         std::optional<Interval> window = std::nullopt) {
  const Interval win = window.value_or(curve.domain());
  if (!win.is_finite()) throw PreconditionError("arc-length reparametrization needs a finite window");
  if (!curve.domain().contains(win)) throw DomainError("window " + describe(win) + " outside curve domain");
  if (!win.contains(s0)) throw DomainError("base point s0 outside the reparametrization window");

  constexpr int kProbe = 257;
  for (int i = 0; i < kProbe; ++i) {
    const double s = win.lo + (i + 0.5) * win.width() / kProbe;
    const MVec3 d1 = curve.eval(s, 1);
    if (euclid_norm2(d1) == 0.0 || causality(d1) != Causality::Spacelike) {
      throw CausalityError("curve is not spacelike at s = " + std::to_string(s));
    }
  }

  auto table = std::make_shared<const detail::ArcLengthTable>(curve, win, s0, 513);
  const Interval new_domain{table->min_length(), table->max_length()};

  auto jet = [curve, table](double sigma, int order) -> MVec3 {
    const double s = table->invert(sigma);
    if (order == 0) return curve.eval(s, 0);
    const MVec3 a1 = curve.eval(s, 1);
    const double q = inner(a1, a1);
    const double v = std::sqrt(q);
    const double ds = 1.0 / v;
    if (order == 1) return a1 * ds;
    const MVec3 a2 = curve.eval(s, 2);
    const double g12 = inner(a1, a2);
    const double dds = -g12 / (q * q);
    if (order == 2) return a2 * (ds * ds) + a1 * dds;
    const MVec3 a3 = curve.eval(s, 3);
    const double ddds = ds * (-(inner(a2, a2) + inner(a1, a3)) / (q * q) + 4.0 * g12 * g12 / (q * q * q));
    return a3 * (ds * ds * ds) + a2 * (3.0 * ds * dds) + a1 * ddds;
  };
  CurveEvaluator out =
      CurveEvaluator::analytic(new_domain, jet, curve.name() + "/arclength", curve.analytic_derivatives());

  for (int i = 0; i < 33; ++i) {
    const double sigma = new_domain.lo + (i + 0.5) * new_domain.width() / 33;
    const MVec3 g1 = out.eval(sigma, 1);
    if (std::abs(inner(g1, g1) - 1.0) > tol) {
      throw PreconditionError("arc-length reparametrization missed unit speed at sigma = " +
                              std::to_string(sigma));
    }
  }
  return out;
}

}  // namespace maxtrans
