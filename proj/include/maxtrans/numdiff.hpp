#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxtrans::numdiff {

/// Step used for curve derivatives: 1e-4 * max(1, |s|) for orders 1 and 2.
/// Order 3 uses 2e-3 * max(1, |s|); at 1e-4 rounding alone contributes
/// about eps / h^3 ~ 1e-4 to a third derivative.
inline double curve_step(double s, int order = 1) {
  return (order == 3 ? 2e-3 : 1e-4) * std::max(1.0, std::abs(s));
}

/// Half-width (in steps) of the central stencil used for a derivative order.
constexpr int stencil_half_width(int order) { return order == 3 ? 3 : 2; }

/// Central finite difference of order 1..3 of a scalar- or vector-valued f
/// at s with step h. Orders 1 and 2 use 5-point stencils, order 3 a 7-point
/// stencil; all are fourth-order accurate.
template <class F>
auto central(F&& f, double s, double h, int order) {
  switch (order) {
    case 1:
      return (f(s - 2 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2 * h)) / (12.0 * h);
    case 2:
      return (-1.0 * f(s - 2 * h) + 16.0 * f(s - h) - 30.0 * f(s) + 16.0 * f(s + h) - f(s + 2 * h)) /
             (12.0 * h * h);
    case 3:
      return (f(s - 3 * h) - 8.0 * f(s - 2 * h) + 13.0 * f(s - h) - 13.0 * f(s + h) + 8.0 * f(s + 2 * h) -
              f(s + 3 * h)) /
             (8.0 * h * h * h);
    default:
      throw std::invalid_argument("finite-difference order must be 1, 2 or 3");
  }
}

}  // namespace maxtrans::numdiff
