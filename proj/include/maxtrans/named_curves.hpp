#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "maxtrans/curve.hpp"
#include "maxtrans/errors.hpp"
#include "maxtrans/minkowski.hpp"

namespace maxtrans {

/// Distance kept from every parameter singularity of a named curve.
inline constexpr double kSingularMargin = 1e-3;

enum class CurveFamily {
  Cu1,            ///< (1/c)(atan sinh cs, log cosh cs, 0); kappa = c/cosh(cs), spacelike normal
  Cu2,            ///< (1/c)(atanh sin cs, 0, log cos cs); kappa = c/cos(cs), timelike normal
  Cu3,            ///< (1/c)(log sinh cs, 0, log coth(cs/2)); kappa = c/sinh(cs), timelike normal
  LogParabola,    ///< (1/2)(s^2/2 + log s, 0, s^2/2 - log s); kappa = 1/s
  PseudoNullFlat, ///< (s^2/2) v + s b with kappa = 0
  PseudoNullExp,  ///< e^{ks} v - (s/k) b with kappa = k
  HelixI,         ///< (r cos phi, r sin phi, h phi), phi = s/sqrt(r^2-h^2)
  HelixII,        ///< (h phi, r sinh phi, r cosh phi), phi = s/sqrt(h^2+r^2)
  HelixIII,       ///< (h phi, r cosh phi, r sinh phi), phi = s/sqrt(h^2-r^2)
  HelixExample,   ///< (h s, r cosh s, r sinh s); not unit-speed
};

struct CurveSpec {
  CurveFamily family = CurveFamily::Cu1;
  double c = 1.0;
  double k = 1.0;
  double r = 2.0;
  double h = 1.0;
  MVec3 v{0.0, 1.0, 1.0};
  /// Spacelike vector orthogonal to v. Defaults to (1,0,0) for the flat
  /// pseudo-null curve and k(1,0,0) for the exponential one.
  std::optional<MVec3> b{};
};

constexpr std::string_view to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::Cu1: return "cu1";
    case CurveFamily::Cu2: return "cu2";
    case CurveFamily::Cu3: return "cu3";
    case CurveFamily::LogParabola: return "log_parabola";
    case CurveFamily::PseudoNullFlat: return "pseudo_null_flat";
    case CurveFamily::PseudoNullExp: return "pseudo_null_exp";
    case CurveFamily::HelixI: return "helix1";
    case CurveFamily::HelixII: return "helix2";
    case CurveFamily::HelixIII: return "helix3";
    case CurveFamily::HelixExample: return "helix_example";
  }
  return "?";
}

inline std::optional<CurveFamily> parse_curve_family(std::string_view name) {
  for (auto f : {CurveFamily::Cu1, CurveFamily::Cu2, CurveFamily::Cu3, CurveFamily::LogParabola,
                 CurveFamily::PseudoNullFlat, CurveFamily::PseudoNullExp, CurveFamily::HelixI, CurveFamily::HelixII,
                 CurveFamily::HelixIII, CurveFamily::HelixExample}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

namespace detail {

inline std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("c > 0 required (got c = " + num(c) + ")");
}

/// v lightlike, b spacelike with <b,b> = norm2, <v,b> = 0.
inline void check_pseudo_null_data(const MVec3& v, const MVec3& b, double norm2) {
  const double scale = std::max(1.0, euclid_norm2(v) + euclid_norm2(b));
  if (euclid_norm2(v) == 0.0) throw ParameterError("v != 0 required for a pseudo-null curve");
  if (std::abs(inner(v, v)) > 1e-12 * scale) {
    throw ParameterError("<v,v> = 0 required (got " + num(inner(v, v)) + ")");
  }
  if (std::abs(inner(v, b)) > 1e-12 * scale) {
    throw ParameterError("<v,b> = 0 required (got " + num(inner(v, b)) + ")");
  }
  if (std::abs(inner(b, b) - norm2) > 1e-12 * scale) {
    throw ParameterError("<b,b> = " + num(norm2) + " required (got " + num(inner(b, b)) + ")");
  }
}

/// n-th derivative of cos and sin at u.
inline double dcos(double u, int n) {
  switch (n & 3) {
    case 0: return std::cos(u);
    case 1: return -std::sin(u);
    case 2: return -std::cos(u);
    default: return std::sin(u);
  }
}
inline double dsin(double u, int n) { return dcos(u, n + 3); }
inline double dcosh(double u, int n) { return n % 2 == 0 ? std::cosh(u) : std::sinh(u); }
inline double dsinh(double u, int n) { return n % 2 == 0 ? std::sinh(u) : std::cosh(u); }

}  // namespace detail

/// Default sampling window of each named curve; always inside its domain.
inline Interval default_window(const CurveSpec& spec) {
  const double c = spec.c;
  switch (spec.family) {
    case CurveFamily::Cu1: return {-2.0 / c, 2.0 / c};
    case CurveFamily::Cu2: return {-1.2 / c, 1.2 / c};
    case CurveFamily::Cu3: return {0.2 / c, 2.0 / c};
    case CurveFamily::LogParabola: return {0.2, 2.0};
    case CurveFamily::PseudoNullFlat:
    case CurveFamily::PseudoNullExp: return {-1.0, 1.0};
    default: return {-2.0, 2.0};
  }
}

inline CurveEvaluator make_named_curve(const CurveSpec& spec) {
  using detail::num;
  const double c = spec.c;
  const double d = kSingularMargin;
  const std::string name(to_string(spec.family));
  switch (spec.family) {
    case CurveFamily::Cu1: {
      detail::require_positive_c(c);
      return CurveEvaluator::analytic({-kInf, kInf}, [c](double s, int order) -> MVec3 {
        const double u = c * s;
        const double sech = 1.0 / std::cosh(u);
        const double th = std::tanh(u);
        switch (order) {
          case 0: return MVec3{std::atan(std::sinh(u)), std::log(std::cosh(u)), 0.0} / c;
          case 1: return {sech, th, 0.0};
          case 2: return {-c * sech * th, c * sech * sech, 0.0};
          default: return {-c * c * (sech * sech * sech - sech * th * th), -2.0 * c * c * sech * sech * th, 0.0};
        }
      }, name);
    }
    case CurveFamily::Cu2: {
      detail::require_positive_c(c);
      const double edge = std::numbers::pi / (2.0 * c);
      return CurveEvaluator::analytic({-edge + d, edge - d}, [c](double s, int order) -> MVec3 {
        const double u = c * s;
        const double sec = 1.0 / std::cos(u);
        const double tn = std::tan(u);
        switch (order) {
          case 0: return MVec3{std::atanh(std::sin(u)), 0.0, std::log(std::cos(u))} / c;
          case 1: return {sec, 0.0, -tn};
          case 2: return {c * sec * tn, 0.0, -c * sec * sec};
          default: return {c * c * (sec * tn * tn + sec * sec * sec), 0.0, -2.0 * c * c * sec * sec * tn};
        }
      }, name);
    }
    case CurveFamily::Cu3: {
      detail::require_positive_c(c);
      return CurveEvaluator::analytic({d, kInf}, [c](double s, int order) -> MVec3 {
        const double u = c * s;
        const double csch = 1.0 / std::sinh(u);
        const double cth = 1.0 / std::tanh(u);
        switch (order) {
          case 0: return MVec3{std::log(std::sinh(u)), 0.0, std::log(1.0 / std::tanh(0.5 * u))} / c;
          case 1: return {cth, 0.0, -csch};
          case 2: return {-c * csch * csch, 0.0, c * csch * cth};
          default: return {2.0 * c * c * csch * csch * cth, 0.0, -c * c * (csch * cth * cth + csch * csch * csch)};
        }
      }, name);
    }
    case CurveFamily::LogParabola:
      return CurveEvaluator::analytic({d, kInf}, [](double s, int order) -> MVec3 {
        switch (order) {
          case 0: return {0.5 * (0.5 * s * s + std::log(s)), 0.0, 0.5 * (0.5 * s * s - std::log(s))};
          case 1: return {0.5 * (s + 1.0 / s), 0.0, 0.5 * (s - 1.0 / s)};
          case 2: return {0.5 * (1.0 - 1.0 / (s * s)), 0.0, 0.5 * (1.0 + 1.0 / (s * s))};
          default: {
            const double s3 = s * s * s;
            return {1.0 / s3, 0.0, -1.0 / s3};
          }
        }
      }, name);
    case CurveFamily::PseudoNullFlat: {
      const MVec3 v = spec.v;
      const MVec3 b = spec.b.value_or(MVec3{1.0, 0.0, 0.0});
      detail::check_pseudo_null_data(v, b, 1.0);
      return CurveEvaluator::analytic({-kInf, kInf}, [v, b](double s, int order) -> MVec3 {
        switch (order) {
          case 0: return 0.5 * s * s * v + s * b;
          case 1: return s * v + b;
          case 2: return v;
          default: return {};
        }
      }, name);
    }
    case CurveFamily::PseudoNullExp: {
      const double k = spec.k;
      if (k == 0.0 || !std::isfinite(k)) throw ParameterError("k != 0 required (got k = " + num(k) + ")");
      const MVec3 v = spec.v;
      const MVec3 b = spec.b.value_or(MVec3{k, 0.0, 0.0});
      detail::check_pseudo_null_data(v, b, k * k);
      return CurveEvaluator::analytic({-kInf, kInf}, [v, b, k](double s, int order) -> MVec3 {
        const double e = std::exp(k * s);
        switch (order) {
          case 0: return e * v - (s / k) * b;
          case 1: return (k * e) * v - b / k;
          case 2: return (k * k * e) * v;
          default: return (k * k * k * e) * v;
        }
      }, name);
    }
    case CurveFamily::HelixI:
    case CurveFamily::HelixII:
    case CurveFamily::HelixIII: {
      const double r = spec.r;
      const double h = spec.h;
      double w2 = 0.0;
      if (spec.family == CurveFamily::HelixI) {
        if (!(r * r > h * h && h * h > 0.0)) {
          throw ParameterError("r^2 > h^2 > 0 required (got r = " + num(r) + ", h = " + num(h) + ")");
        }
        w2 = r * r - h * h;
      } else if (spec.family == CurveFamily::HelixII) {
        if (r == 0.0 || h == 0.0) throw ParameterError("r != 0 and h != 0 required");
        w2 = h * h + r * r;
      } else {
        if (!(h * h > r * r && r * r > 0.0)) {
          throw ParameterError("h^2 > r^2 > 0 required (got r = " + num(r) + ", h = " + num(h) + ")");
        }
        w2 = h * h - r * r;
      }
      const double rate = 1.0 / std::sqrt(w2);
      const CurveFamily fam = spec.family;
      return CurveEvaluator::analytic({-kInf, kInf}, [r, h, rate, fam](double s, int order) -> MVec3 {
        const double phi = rate * s;
        const double scale = std::pow(rate, order);
        const double lin = order == 0 ? h * phi : (order == 1 ? h * rate : 0.0);
        if (fam == CurveFamily::HelixI) {
          return {r * scale * detail::dcos(phi, order), r * scale * detail::dsin(phi, order), lin};
        }
        if (fam == CurveFamily::HelixII) {
          return {lin, r * scale * detail::dsinh(phi, order), r * scale * detail::dcosh(phi, order)};
        }
        return {lin, r * scale * detail::dcosh(phi, order), r * scale * detail::dsinh(phi, order)};
      }, name);
    }
    case CurveFamily::HelixExample: {
      const double r = spec.r;
      const double h = spec.h;
      if (r == 0.0 || h == 0.0) throw ParameterError("r != 0 and h != 0 required");
      return CurveEvaluator::analytic({-kInf, kInf}, [r, h](double s, int order) -> MVec3 {
        const double lin = order == 0 ? h * s : (order == 1 ? h : 0.0);
        return {lin, r * detail::dcosh(s, order), r * detail::dsinh(s, order)};
      }, name);
    }
  }
  throw ParameterError("unknown curve family");
}

}  // namespace maxtrans
