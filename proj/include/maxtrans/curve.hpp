#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxtrans/errors.hpp"
#include "maxtrans/minkowski.hpp"
#include "maxtrans/numdiff.hpp"

namespace maxtrans {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open real interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double s) const { return s > lo && s < hi; }
  bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
  Interval intersect(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
  bool empty() const { return !(lo < hi); }
  bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
};

inline std::string describe(const Interval& iv) {
  std::ostringstream os;
  os << '(' << iv.lo << ", " << iv.hi << ')';
  return os.str();
}

/// A parametrized curve s -> L^3 on an open interval with derivatives up to
/// order 3. Either the derivatives are supplied analytically, or only the
/// position is supplied and derivatives come from central differences with
/// step numdiff::curve_step(s, order), which carries O(h^4) truncation error.
///
/// Evaluators are immutable; copies share the underlying function.
class CurveEvaluator {
 public:
  /// f(s, order) for order in 0..3.
  using Jet = std::function<MVec3(double, int)>;
  using Position = std::function<MVec3(double)>;

  CurveEvaluator() = default;

  /// Curve whose jet supplies derivatives directly. `exact` is false when the
  /// jet itself is assembled from finite-difference inputs.
  static CurveEvaluator analytic(Interval domain, Jet jet, std::string name = {}, bool exact = true) {
    CurveEvaluator c;
    c.domain_ = domain;
    c.jet_ = std::make_shared<const Jet>(std::move(jet));
    c.jet_derivatives_ = true;
    c.analytic_ = exact;
    c.name_ = std::move(name);
    return c;
  }

  static CurveEvaluator from_position(Interval domain, Position pos, std::string name = {}) {
    CurveEvaluator c;
    c.domain_ = domain;
    c.jet_ = std::make_shared<const Jet>([p = std::move(pos)](double s, int) { return p(s); });
    c.jet_derivatives_ = false;
    c.analytic_ = false;
    c.name_ = std::move(name);
    return c;
  }

  const Interval& domain() const { return domain_; }
  bool analytic_derivatives() const { return analytic_; }
  const std::string& name() const { return name_; }
  bool valid() const { return static_cast<bool>(jet_); }

  /// Position (order 0) or derivative (orders 1..3) at s. Throws DomainError
  /// when s, or any finite-difference stencil node, leaves the open domain.
  MVec3 eval(double s, int order = 0) const {
    if (order < 0 || order > 3) throw std::invalid_argument("curve derivative order must be in 0..3");
    if (!domain_.contains(s)) {
      throw DomainError("parameter " + std::to_string(s) + " outside curve domain " + describe(domain_));
    }
    if (order == 0 || jet_derivatives_) return (*jet_)(s, order);
    const double h = numdiff::curve_step(s, order);
    const double reach = numdiff::stencil_half_width(order) * h;
    if (!domain_.contains(s - reach) || !domain_.contains(s + reach)) {
      throw DomainError("finite-difference stencil at " + std::to_string(s) + " leaves curve domain " +
                        describe(domain_));
    }
    return numdiff::central([this](double u) { return (*jet_)(u, 0); }, s, h, order);
  }

  MVec3 operator()(double s) const { return eval(s, 0); }

  /// Same curve on a smaller open interval.
  CurveEvaluator restricted(Interval sub) const {
    if (!domain_.contains(sub) || sub.empty()) {
      throw DomainError("restriction " + describe(sub) + " not inside " + describe(domain_));
    }
    CurveEvaluator c = *this;
    c.domain_ = sub;
    return c;
  }

  /// Curve forced onto finite-difference derivatives (used by oracles).
  CurveEvaluator position_only() const {
    CurveEvaluator c = *this;
    c.jet_derivatives_ = false;
    c.analytic_ = false;
    return c;
  }

 private:
  Interval domain_{};
  std::shared_ptr<const Jet> jet_;
  bool jet_derivatives_ = false;
  bool analytic_ = false;
  std::string name_;
};

/// Derivative of the given order (1..3) of curve at s.
inline MVec3 derivative(const CurveEvaluator& curve, double s, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative order must be 1, 2 or 3");
  return curve.eval(s, order);
}

/// Uniformly spaced samples covering [lo, hi] inclusive.
inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace maxtrans
