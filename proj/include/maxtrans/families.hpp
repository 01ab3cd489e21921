#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxtrans/curve.hpp"
#include "maxtrans/errors.hpp"
#include "maxtrans/frames.hpp"
#include "maxtrans/minkowski.hpp"
#include "maxtrans/named_curves.hpp"
#include "maxtrans/ode.hpp"
#include "maxtrans/surface.hpp"

namespace maxtrans {

enum class Family {
  Para1,         ///< alpha = (s, log cos(cs)/c, 0), beta = (t cosh th, -log cos(ct)/c, t sinh th)
  Para2,         ///< alpha = (s, 0, log cosh(cs)/c), beta = (t sin th, t cos th, -log cosh(ct)/c)
  Para3,         ///< alpha = (s, -log cos(cs)/c, 0), beta = (t sinh th, log sinh(ct)/c, t cosh th)
  ScherkGraphZ,  ///< z = (log cosh cx - log cosh cy)/c as (s, 0, .) + (0, t, .)
  ScherkGraphY,  ///< y = (log sinh cz - log cos cx)/c as (s, ., 0) + (0, ., t)
  T31,           ///< (x, f(x), 0) + m e^{kt}(-sin th, cos th, 1) + t(cos th, sin th, 0)
  T32a,          ///< (x, 0, f(x)) + m (t^2/2)(1, 0, 1) + t(b1, 1, b1)
  T32b,          ///< (x, 0, f(x)) + m e^{kt}(sinh th, 1, cosh th) + t(cosh th, 0, sinh th)
  T34,           ///< e^{ks}(0,1,1) - s(1,b,b) + e^{kt}(w1,w2,w3) + t(1,b,b)
  HelixSum,      ///< alpha(s) + alpha(t) for a circular helix
  PseudoNullSum, ///< alpha(s) + alpha(t) for a pseudo-null curve with constant curvature k
  Mismatched,    ///< para1 generators with different c; not maximal
};

inline constexpr std::array<Family, 12> kAllFamilies = {
    Family::Para1, Family::Para2, Family::Para3, Family::ScherkGraphZ, Family::ScherkGraphY, Family::T31,
    Family::T32a,  Family::T32b,  Family::T34,   Family::HelixSum,     Family::PseudoNullSum, Family::Mismatched};

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::Para1: return "para1";
    case Family::Para2: return "para2";
    case Family::Para3: return "para3";
    case Family::ScherkGraphZ: return "scherk_graph_z";
    case Family::ScherkGraphY: return "scherk_graph_y";
    case Family::T31: return "t31";
    case Family::T32a: return "t32a";
    case Family::T32b: return "t32b";
    case Family::T34: return "t34";
    case Family::HelixSum: return "helix_sum";
    case Family::PseudoNullSum: return "pseudo_null_sum";
    case Family::Mismatched: return "mismatched";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

/// Helix kinds accepted by the helix-sum family.
enum class HelixType { I, II, III, Example };

constexpr std::string_view to_string(HelixType t) {
  switch (t) {
    case HelixType::I: return "I";
    case HelixType::II: return "II";
    case HelixType::III: return "III";
    case HelixType::Example: return "example";
  }
  return "?";
}

inline std::optional<HelixType> parse_helix_type(std::string_view s) {
  for (HelixType t : {HelixType::I, HelixType::II, HelixType::III, HelixType::Example}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

/// Parameters of one surface instance. Fields unused by a family are ignored.
/// For PseudoNullSum, k = 0 selects the flat curve (s^2/2) v + s b.
struct FamilyParams {
  Family family = Family::Para1;
  double c = 1.0;
  double c2 = 2.0;
  double theta = 0.0;
  double k = 1.0;
  double m = 1.0;
  double a = 0.0;
  double b1 = 0.0;
  double b = 0.0;
  double w2 = 1.0;
  double w3 = -1.0;
  double r = 2.0;
  double h = 1.0;
  double f0 = 0.2;
  double x0 = 0.0;
  HelixType helix = HelixType::I;
  /// Fixed RK4 step; 0 selects 2.5e-4 times the requested x-range width.
  double ode_step = 0.0;
  /// Requested parameter boxes; empty selects the family default.
  std::optional<Interval> s_range{};
  std::optional<Interval> t_range{};
};

/// Default half-open box edge: grids cover [-1 + delta, 1 - delta]^2.
inline constexpr double kDefaultBox = 1.0 - kSingularMargin;
/// Extra distance kept between a default grid and a singular or truncated domain end.
inline constexpr double kGridMargin = 0.05;
/// Requested x-range for ODE generators.
inline constexpr Interval kOdeRange{-1.0, 1.0};

struct BuiltFamily {
  TranslationSurface surface;
  GridSpec grid;
  /// True when a generator comes from the ODE solver.
  bool ode_based = false;
  std::optional<OdeSolution> ode;
  /// True for the deliberately non-maximal control surface.
  bool control = false;
  std::string note;
};

namespace detail {

/// n-th derivative (n = 0..3) of log cos u, log cosh u, log sinh u.
inline double dlogcos(double u, int n) {
  const double t = std::tan(u), sec2 = 1.0 + t * t;
  switch (n) {
    case 0: return std::log(std::cos(u));
    case 1: return -t;
    case 2: return -sec2;
    default: return -2.0 * sec2 * t;
  }
}
inline double dlogcosh(double u, int n) {
  const double t = std::tanh(u), sech2 = 1.0 - t * t;
  switch (n) {
    case 0: return std::log(std::cosh(u));
    case 1: return t;
    case 2: return sech2;
    default: return -2.0 * sech2 * t;
  }
}
inline double dlogsinh(double u, int n) {
  const double ct = 1.0 / std::tanh(u), csch2 = ct * ct - 1.0;
  switch (n) {
    case 0: return std::log(std::sinh(u));
    case 1: return ct;
    case 2: return -csch2;
    default: return 2.0 * csch2 * ct;
  }
}

/// n-th derivative of s -> scale * L(c s) / c.
template <class L>
double scaled_log(L l, double c, double scale, double s, int n) {
  return scale * std::pow(c, n - 1) * l(c * s, n);
}

/// Curve s -> s * dir + e_axis * scale * L(cs)/c.
template <class L>
CurveEvaluator log_graph(Interval dom, MVec3 dir, int axis, L l, double c, double scale, std::string name) {
  return CurveEvaluator::analytic(dom, [=](double s, int n) {
    MVec3 out = n == 0 ? s * dir : (n == 1 ? dir : MVec3{});
    const double v = scaled_log(l, c, scale, s, n);
    if (axis == 0) out.x += v;
    else if (axis == 1) out.y += v;
    else out.z += v;
    return out;
  }, std::move(name));
}

inline Interval cos_domain(double c) {
  const double e = std::numbers::pi / (2.0 * c) - kSingularMargin;
  return {-e, e};
}

inline void require_c(double c, std::string_view what = "c") {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ParameterError(std::string(what) + " > 0 required (got " + detail::num(c) + ")");
  }
}

/// Line plus exponential: s -> amp e^{k s} v + s u.
inline CurveEvaluator exp_line(double amp, double k, MVec3 v, MVec3 u, std::string name) {
  return CurveEvaluator::analytic({-kInf, kInf}, [=](double s, int n) {
    const double e = amp * std::pow(k, n) * std::exp(k * s);
    return e * v + (n == 0 ? s * u : (n == 1 ? u : MVec3{}));
  }, std::move(name));
}

/// Grid range: the requested box inside a curve domain, pulled in by
/// kGridMargin at ends that are singular or truncated.
inline Interval grid_range(Interval box, Interval dom, bool pull_lo, bool pull_hi) {
  Interval r = box;
  if (pull_lo) r.lo = std::max(r.lo, dom.lo + kGridMargin);
  if (pull_hi) r.hi = std::min(r.hi, dom.hi - kGridMargin);
  if (r.empty() || !dom.contains(r.lo) || !dom.contains(r.hi)) {
    throw ParameterError("grid range " + describe(box) + " does not fit inside the domain " + describe(dom));
  }
  return r;
}

inline constexpr int kDefaultN = 50;

inline GridSpec make_grid(Interval s, Interval t, int n = kDefaultN) { return {s.lo, s.hi, t.lo, t.hi, n, n}; }

}  // namespace detail

/// Scherk-type surfaces. Para1 is (s + t cosh th, log(cos cs / cos ct)/c, t sinh th).
inline TranslationSurface build_scherk_type(Family variant, double c, double theta) {
  detail::require_c(c);
  const ParamList params{{"c", c}, {"theta", theta}};
  using detail::dlogcos, detail::dlogcosh, detail::dlogsinh, detail::log_graph;
  const std::string name(to_string(variant));
  switch (variant) {
    case Family::Para1:
      return TranslationSurface(
          log_graph(detail::cos_domain(c), kE1, 1, dlogcos, c, 1.0, name + ".alpha"),
          log_graph(detail::cos_domain(c), {std::cosh(theta), 0, std::sinh(theta)}, 1, dlogcos, c, -1.0,
                    name + ".beta"),
          name, params);
    case Family::Para2:
      return TranslationSurface(
          log_graph({-kInf, kInf}, kE1, 2, dlogcosh, c, 1.0, name + ".alpha"),
          log_graph({-kInf, kInf}, {std::sin(theta), std::cos(theta), 0}, 2, dlogcosh, c, -1.0, name + ".beta"),
          name, params);
    case Family::Para3:
      return TranslationSurface(
          log_graph(detail::cos_domain(c), kE1, 1, dlogcos, c, -1.0, name + ".alpha"),
          log_graph({kSingularMargin / c, kInf}, {std::sinh(theta), 0, std::cosh(theta)}, 1, dlogsinh, c, 1.0,
                    name + ".beta"),
          name, params);
    default:
      throw ParameterError("build_scherk_type needs para1, para2 or para3");
  }
}

/// The two graph surfaces z = (log cosh cx - log cosh cy)/c and
/// y = (log sinh cz - log cos cx)/c as translation surfaces.
inline TranslationSurface build_scherk_graph(Family variant, double c) {
  detail::require_c(c);
  using detail::dlogcos, detail::dlogcosh, detail::dlogsinh, detail::log_graph;
  const std::string name(to_string(variant));
  const ParamList params{{"c", c}};
  if (variant == Family::ScherkGraphZ) {
    return TranslationSurface(log_graph({-kInf, kInf}, kE1, 2, dlogcosh, c, 1.0, name + ".alpha"),
                              log_graph({-kInf, kInf}, kE2, 2, dlogcosh, c, -1.0, name + ".beta"), name, params);
  }
  if (variant == Family::ScherkGraphY) {
    return TranslationSurface(log_graph(detail::cos_domain(c), kE1, 1, dlogcos, c, -1.0, name + ".alpha"),
                              log_graph({kSingularMargin / c, kInf}, kE3, 1, dlogsinh, c, 1.0, name + ".beta"), name,
                              params);
  }
  throw ParameterError("build_scherk_graph needs scherk_graph_z or scherk_graph_y");
}

/// Height of the graph surfaces at (x, other), for comparison with samples.
inline double scherk_graph_height(Family variant, double c, double x, double other) {
  if (variant == Family::ScherkGraphZ) return (std::log(std::cosh(c * x)) - std::log(std::cosh(c * other))) / c;
  return (std::log(std::sinh(c * other)) - std::log(std::cos(c * x))) / c;
}

/// Control surface: para1-style generators with curvature scales c1 != c2.
inline TranslationSurface build_mismatched(double c1, double c2, double theta) {
  detail::require_c(c1, "c");
  detail::require_c(c2, "c2");
  using detail::dlogcos, detail::log_graph;
  return TranslationSurface(
      log_graph(detail::cos_domain(c1), kE1, 1, dlogcos, c1, 1.0, "mismatched.alpha"),
      log_graph(detail::cos_domain(c2), {std::cosh(theta), 0, std::sinh(theta)}, 1, dlogcos, c2, -1.0,
                "mismatched.beta"),
      "mismatched", {{"c", c1}, {"c2", c2}, {"theta", theta}});
}

namespace detail {

inline void require_nonzero(double v, std::string_view what) {
  if (v == 0.0 || !std::isfinite(v)) throw ParameterError(std::string(what) + " != 0 required");
}

inline BuiltFamily ode_family(const FamilyParams& p, const ImplicitSlope& rhs, int f_axis, CurveEvaluator beta,
                              ParamList params) {
  const Interval want = p.s_range.value_or(kOdeRange);
  OdeSolution sol = solve_scalar_ode(rhs, p.x0, p.f0, want, p.ode_step);
  const std::string name(to_string(p.family));
  CurveEvaluator alpha = ode_curve(sol, f_axis, name + ".alpha");
  BuiltFamily out;
  out.surface = TranslationSurface(alpha, std::move(beta), name, std::move(params));
  const Interval s_box = p.s_range.value_or(Interval{-kDefaultBox, kDefaultBox});
  const Interval t_box = p.t_range.value_or(Interval{-kDefaultBox, kDefaultBox});
  const Interval s_grid = grid_range(s_box, sol.usable(), sol.stop_lo != StopReason::ReachedEnd,
                                     sol.stop_hi != StopReason::ReachedEnd);
  out.grid = make_grid(s_grid, t_box, 40);
  out.ode_based = true;
  if (sol.truncated()) {
    out.note = "ODE truncated to " + describe(sol.usable()) + " (" + std::string(to_string(sol.stop_lo)) + ", " +
               std::string(to_string(sol.stop_hi)) + ")";
  }
  out.ode = std::move(sol);
  return out;
}

}  // namespace detail

/// alpha(x) = (x, f(x), 0) with f' = -tan(k(cos th f - x sin th) + a);
/// beta(t) = m e^{kt}(-sin th, cos th, 1) + t(cos th, sin th, 0).
inline BuiltFamily build_t31(const FamilyParams& p) {
  detail::require_nonzero(p.k, "k");
  detail::require_nonzero(p.m, "m");
  const double s = std::sin(p.theta), c = std::cos(p.theta);
  auto beta = detail::exp_line(p.m, p.k, {-s, c, 1.0}, {c, s, 0.0}, "t31.beta");
  return detail::ode_family(p, ImplicitSlope::tan_rotation(p.k, p.theta, p.a), 1, std::move(beta),
                            {{"k", p.k}, {"m", p.m}, {"theta", p.theta}, {"a", p.a}, {"f0", p.f0}, {"x0", p.x0}});
}

/// alpha(x) = (x, 0, f(x)) with f' = -tanh(m(x - f) + a);
/// beta(t) = m (t^2/2)(1, 0, 1) + t(b1, 1, b1).
inline BuiltFamily build_t32a(const FamilyParams& p) {
  detail::require_nonzero(p.m, "m");
  const double m = p.m, b1 = p.b1;
  auto beta = CurveEvaluator::analytic({-kInf, kInf}, [=](double t, int n) {
    const MVec3 v{1, 0, 1}, u{b1, 1, b1};
    switch (n) {
      case 0: return (m * t * t / 2) * v + t * u;
      case 1: return (m * t) * v + u;
      case 2: return m * v;
      default: return MVec3{};
    }
  }, "t32a.beta");
  return detail::ode_family(p, ImplicitSlope::tanh_null(p.m, p.a), 2, std::move(beta),
                            {{"m", p.m}, {"b1", p.b1}, {"a", p.a}, {"f0", p.f0}, {"x0", p.x0}});
}

/// alpha(x) = (x, 0, f(x)) with f' = -tanh(k(cosh th f - x sinh th) + a);
/// beta(t) = m e^{kt}(sinh th, 1, cosh th) + t(cosh th, 0, sinh th).
inline BuiltFamily build_t32b(const FamilyParams& p) {
  detail::require_nonzero(p.k, "k");
  detail::require_nonzero(p.m, "m");
  const double sh = std::sinh(p.theta), ch = std::cosh(p.theta);
  auto beta = detail::exp_line(p.m, p.k, {sh, 1.0, ch}, {ch, 0.0, sh}, "t32b.beta");
  return detail::ode_family(p, ImplicitSlope::tanh_boost(p.k, p.theta, p.a), 2, std::move(beta),
                            {{"k", p.k}, {"m", p.m}, {"theta", p.theta}, {"a", p.a}, {"f0", p.f0}, {"x0", p.x0}});
}

/// Tolerance on the constraint b^2 (w2 - w3) + w2 + w3 = 0.
inline constexpr double kT34ConstraintTol = 1e-12;

/// alpha(s) = e^{ks}(0,1,1) - s(1,b,b); beta(t) = e^{kt}(w1,w2,w3) + t(1,b,b)
/// with w1 = b(w3 - w2).
inline TranslationSurface build_t34(double k, double b, double w2, double w3) {
  detail::require_nonzero(k, "k");
  if (w2 - w3 == 0.0) throw ParameterError("w2 - w3 != 0 required");
  const double constraint = b * b * (w2 - w3) + w2 + w3;
  if (std::abs(constraint) > kT34ConstraintTol) {
    throw ParameterError("b^2 (w2 - w3) + w2 + w3 = 0 required (residual " + detail::num(constraint) + ")");
  }
  const double w1 = b * (w3 - w2);
  const MVec3 u{1.0, b, b};
  return TranslationSurface(detail::exp_line(1.0, k, {0, 1, 1}, -1.0 * u, "t34.alpha"),
                            detail::exp_line(1.0, k, {w1, w2, w3}, u, "t34.beta"), "t34",
                            {{"k", k}, {"b", b}, {"w1", w1}, {"w2", w2}, {"w3", w3}});
}

inline CurveSpec helix_spec(HelixType type, double r, double h) {
  CurveSpec sp;
  sp.family = type == HelixType::I     ? CurveFamily::HelixI
              : type == HelixType::II  ? CurveFamily::HelixII
              : type == HelixType::III ? CurveFamily::HelixIII
                                       : CurveFamily::HelixExample;
  sp.r = r;
  sp.h = h;
  return sp;
}

/// X(s, t) = alpha(s) + alpha(t) for a circular helix alpha.
inline TranslationSurface build_helix_sum(HelixType type, double r, double h) {
  const CurveEvaluator a = make_named_curve(helix_spec(type, r, h));
  return TranslationSurface(a, a, "helix_sum", {{"r", r}, {"h", h}});
}

/// Pseudo-null curve with v = (0,1,1): flat (b = (1,0,0)) for k = 0,
/// otherwise e^{ks} v - (s/k) b with b = k(1,0,0).
inline CurveSpec pseudo_null_spec(double k) {
  CurveSpec sp;
  sp.family = k == 0.0 ? CurveFamily::PseudoNullFlat : CurveFamily::PseudoNullExp;
  sp.k = k;
  return sp;
}

/// X(s, t) = alpha(s) + alpha(t) for a pseudo-null curve alpha.
inline TranslationSurface build_pseudo_null_sum(const CurveSpec& spec) {
  const CurveEvaluator a = make_named_curve(spec);
  return TranslationSurface(a, a, "pseudo_null_sum", {{"k", spec.family == CurveFamily::PseudoNullFlat ? 0.0 : spec.k}});
}

/// Builds any family with its default grid: 50 x 50 (40 x 40 for ODE
/// generators) over [-1 + delta, 1 - delta]^2, pulled kGridMargin away from
/// singular or truncated domain ends. The worked helix example uses
/// [-2, 2]^2 so that both causal regions appear.
inline BuiltFamily build_family(const FamilyParams& p) {
  switch (p.family) {
    case Family::T31: return build_t31(p);
    case Family::T32a: return build_t32a(p);
    case Family::T32b: return build_t32b(p);
    default: break;
  }
  BuiltFamily out;
  Interval box{-kDefaultBox, kDefaultBox};
  int n = detail::kDefaultN;
  switch (p.family) {
    case Family::Para1:
    case Family::Para2:
    case Family::Para3: out.surface = build_scherk_type(p.family, p.c, p.theta); break;
    case Family::ScherkGraphZ:
    case Family::ScherkGraphY: out.surface = build_scherk_graph(p.family, p.c); break;
    case Family::T34:
      out.surface = build_t34(p.k, p.b, p.w2, p.w3);
      n = 40;
      break;
    case Family::HelixSum:
      out.surface = build_helix_sum(p.helix, p.r, p.h);
      if (p.helix == HelixType::Example) box = {-2.0, 2.0};
      out.surface = TranslationSurface(out.surface.alpha(), out.surface.beta(), "helix_sum",
                                       {{"helix", static_cast<double>(static_cast<int>(p.helix) + 1)},
                                        {"r", p.r},
                                        {"h", p.h}});
      break;
    case Family::PseudoNullSum:
      out.surface = build_pseudo_null_sum(pseudo_null_spec(p.k));
      n = 40;
      break;
    case Family::Mismatched:
      out.surface = build_mismatched(p.c, p.c2, p.theta);
      out.control = true;
      break;
    default: throw ParameterError("unknown family");
  }
  const Interval sd = out.surface.s_domain(), td = out.surface.t_domain();
  const Interval sb = p.s_range.value_or(box), tb = p.t_range.value_or(box);
  const bool explicit_s = p.s_range.has_value(), explicit_t = p.t_range.has_value();
  const Interval sg = detail::grid_range(sb, sd, !explicit_s && std::isfinite(sd.lo), !explicit_s && std::isfinite(sd.hi));
  const Interval tg = detail::grid_range(tb, td, !explicit_t && std::isfinite(td.lo), !explicit_t && std::isfinite(td.hi));
  out.grid = detail::make_grid(sg, tg, n);
  return out;
}

/// Causal type of a planar Frenet generator: sign of the normal (epsilon) and,
/// for timelike normals, the curvature type (a) c/cos, (b) c/sinh, (c) 1/s.
enum class PlanarType { Spacelike, TimelikeCos, TimelikeSinh, TimelikeInverse };

constexpr std::string_view to_string(PlanarType t) {
  switch (t) {
    case PlanarType::Spacelike: return "eps=1";
    case PlanarType::TimelikeCos: return "eps=-1 (a)";
    case PlanarType::TimelikeSinh: return "eps=-1 (b)";
    case PlanarType::TimelikeInverse: return "eps=-1 (c)";
  }
  return "?";
}

/// Measured type of a unit-speed planar Frenet curve at s. For timelike
/// normals the sign of kappa^2 - (kappa'/kappa)^2 separates the three
/// solution types: c^2 for c/cos, -c^2 for c/sinh, 0 for 1/s.
inline PlanarType planar_type(const CurveEvaluator& curve, double s) {
  const FrenetFrame f = frenet_frame(curve, s);
  if (f.epsilon > 0) return PlanarType::Spacelike;
  const double h = numdiff::curve_step(s, 1);
  const double dlog = numdiff::central([&](double u) { return std::log(frenet_frame(curve, u).kappa); }, s, h, 1);
  const double q = f.kappa * f.kappa - dlog * dlog;
  const double tol = 1e-6 * std::max(1.0, f.kappa * f.kappa);
  if (q > tol) return PlanarType::TimelikeCos;
  if (q < -tol) return PlanarType::TimelikeSinh;
  return PlanarType::TimelikeInverse;
}

/// One cell of the Scherk-type summary table for planar Frenet generators.
struct ScherkCase {
  PlanarType alpha;
  PlanarType beta;
  std::optional<Family> family;
};

/// Feasible combinations of generator types with their parametrization; all
/// other combinations admit no maximal translation surface. The labels
/// follow the generator types actually produced by each parametrization.
inline std::vector<ScherkCase> scherk_table() {
  using P = PlanarType;
  std::vector<ScherkCase> cells;
  const std::array<P, 4> types{P::Spacelike, P::TimelikeCos, P::TimelikeSinh, P::TimelikeInverse};
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = i; j < types.size(); ++j) {
      ScherkCase cell{types[i], types[j], std::nullopt};
      if (i == 0 && j == 0) cell.family = Family::Para1;
      if (i == 1 && j == 1) cell.family = Family::Para2;
      if (i == 0 && j == 2) cell.family = Family::Para3;
      cells.push_back(cell);
    }
  }
  return cells;
}

/// Default parameters for a family.
inline FamilyParams default_params(Family f) {
  FamilyParams p;
  p.family = f;
  if (f == Family::Mismatched) p.theta = 0.5;
  if (f == Family::T32b) p.f0 = -0.5;
  return p;
}

}  // namespace maxtrans
