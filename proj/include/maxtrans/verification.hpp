#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxtrans/curve.hpp"
#include "maxtrans/errors.hpp"
#include "maxtrans/families.hpp"
#include "maxtrans/frames.hpp"
#include "maxtrans/named_curves.hpp"
#include "maxtrans/parallel.hpp"
#include "maxtrans/surface.hpp"

namespace maxtrans {

/// Grid point with the largest residual of a check.
struct WorstPoint {
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
};

/// Outcome of one named check. pass is always max_residual <= tolerance.
/// Curve checks use a one-row grid: [s0, s1] with ns samples, t0 = t1 = 0, nt = 1.
struct VerificationReport {
  std::string check;
  std::string instance;
  std::string family;
  ParamList params;
  GridSpec grid;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  WorstPoint worst;
  std::size_t skipped_degenerate = 0;
  std::vector<std::string> notes;

  void finish() { pass = max_residual <= tolerance; }
};

/// Closed-form and oracle channels of the H = 0 check.
struct HZeroReports {
  VerificationReport closed_form;
  VerificationReport oracle;
};

enum class FrameKind { Frenet, PseudoNull };

constexpr std::string_view to_string(FrameKind k) { return k == FrameKind::Frenet ? "frenet" : "pseudo_null"; }

inline constexpr double kAnalyticHTol = 1e-6;
inline constexpr double kOdeHTol = 1e-5;
inline constexpr double kOracleTol = 1e-5;
inline constexpr double kTheorem41Tol = 1e-5;
inline constexpr double kKkTol = 1e-4;
inline constexpr double kFrameOdeTol = 1e-5;
inline constexpr double kFrameAlgebraTol = 1e-8;
inline constexpr double kPlanarityTol = 1e-6;
inline constexpr double kTranslationTol = 1e-10;

namespace detail {

inline GridSpec curve_grid(Interval window, int n) { return {window.lo, window.hi, 0.0, 0.0, n, 1}; }

inline VerificationReport surface_report(std::string check, const TranslationSurface& surf, const GridSpec& grid,
                                         double tol) {
  VerificationReport r;
  r.check = std::move(check);
  r.family = surf.family();
  r.params = surf.params();
  r.grid = grid;
  r.tolerance = tol;
  return r;
}

inline VerificationReport curve_report(std::string check, const CurveEvaluator& curve, const GridSpec& grid,
                                       double tol) {
  VerificationReport r;
  r.check = std::move(check);
  r.family = curve.name();
  r.grid = grid;
  r.tolerance = tol;
  return r;
}

/// Per-sample values; NaN marks a skipped sample.
inline std::vector<double> curve_values(const std::vector<double>& s, const auto& fn) {
  std::vector<double> out(s.size());
  parallel_for(s.size(), [&](std::size_t i) { out[i] = fn(s[i]); });
  return out;
}

/// Largest value in index order; the first maximum wins.
inline void take_max(VerificationReport& r, const std::vector<double>& s, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i] > r.max_residual) {
      r.max_residual = values[i];
      r.worst = {s[i], 0.0, values[i]};
    }
  }
}

struct Spread {
  double spread = 0.0;
  double mean = 0.0;
  std::size_t worst = 0;
};

/// max - min, mean, and the sample farthest from the mean.
inline Spread spread_of(const std::vector<double>& v) {
  Spread out;
  if (v.empty()) return out;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  out.spread = *hi - *lo;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(v.size());
  double far = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i] - out.mean) > far) {
      far = std::abs(v[i] - out.mean);
      out.worst = i;
    }
  }
  return out;
}

}  // namespace detail

/// Default closed-form tolerance for a built family.
inline double h_tolerance(const BuiltFamily& b) { return b.ode_based ? kOdeHTol : kAnalyticHTol; }

/// H_residual at every regular grid point and |oracle H| at every spacelike
/// one. Non-regular points are skipped in both channels; points the oracle
/// itself rejects as timelike or degenerate are skipped in the oracle channel.
inline HZeroReports check_H_zero(const TranslationSurface& surf, const GridSpec& grid, double tol,
                                 double oracle_tol = kOracleTol) {
  struct PointResult {
    bool regular = false;
    double closed = 0.0;
    std::optional<double> oracle;
    bool oracle_skipped = false;
  };
  const auto s = grid.s_values();
  const auto t = grid.t_values();
  std::vector<PointResult> pts(grid.size());
  parallel_for(grid.size(), [&](std::size_t idx) {
    const double si = s[idx / static_cast<std::size_t>(grid.nt)];
    const double tj = t[idx % static_cast<std::size_t>(grid.nt)];
    const SurfaceSample smp = sample(surf, si, tj);
    PointResult& p = pts[idx];
    p.regular = smp.regular;
    if (!smp.regular) return;
    p.closed = smp.H_residual;
    if (smp.causal != Causality::Spacelike) return;
    try {
      p.oracle = std::abs(mean_curvature_oracle(surf, si, tj));
    } catch (const CausalityError&) {
      p.oracle_skipped = true;
    } catch (const RegularityError&) {
      p.oracle_skipped = true;
    }
  });

  HZeroReports out{detail::surface_report("H_zero", surf, grid, tol),
                   detail::surface_report("H_zero_oracle", surf, grid, oracle_tol)};
  bool first_closed = true, first_oracle = true;
  std::size_t spacelike = 0, non_spacelike = 0;
  for (std::size_t idx = 0; idx < pts.size(); ++idx) {
    const PointResult& p = pts[idx];
    const double si = s[idx / static_cast<std::size_t>(grid.nt)];
    const double tj = t[idx % static_cast<std::size_t>(grid.nt)];
    if (!p.regular) {
      ++out.closed_form.skipped_degenerate;
      ++out.oracle.skipped_degenerate;
      continue;
    }
    if (first_closed || p.closed > out.closed_form.max_residual) {
      out.closed_form.max_residual = p.closed;
      out.closed_form.worst = {si, tj, p.closed};
      first_closed = false;
    }
    if (p.oracle_skipped) ++out.oracle.skipped_degenerate;
    if (!p.oracle) {
      ++non_spacelike;
      continue;
    }
    ++spacelike;
    if (first_oracle || *p.oracle > out.oracle.max_residual) {
      out.oracle.max_residual = *p.oracle;
      out.oracle.worst = {si, tj, *p.oracle};
      first_oracle = false;
    }
  }
  out.oracle.notes.push_back("spacelike points: " + std::to_string(spacelike));
  out.oracle.notes.push_back("points without an oracle value: " + std::to_string(non_spacelike));
  if (spacelike == 0) out.oracle.notes.push_back("no spacelike points; channel is vacuous");
  out.closed_form.finish();
  out.oracle.finish();
  return out;
}

/// Spreads of kappa^2 tau and Sigma/tau + tau over the samples, each divided
/// by 1 + |mean|. Throws PlanarCurveError where the torsion vanishes.
inline VerificationReport check_theorem41(const CurveEvaluator& curve, Interval window, int n, double tol) {
  const auto s = linspace(window.lo, window.hi, n);
  std::vector<CurveInvariants> inv(s.size());
  parallel_for(s.size(), [&](std::size_t i) { inv[i] = curve_invariants(curve, s[i]); });
  std::vector<double> q1(s.size()), q2(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    q1[i] = inv[i].kappa * inv[i].kappa * inv[i].tau;
    q2[i] = inv[i].Sigma / inv[i].tau + inv[i].tau;
  }
  auto r = detail::curve_report("theorem41", curve, detail::curve_grid(window, n), tol);
  const auto a = detail::spread_of(q1), b = detail::spread_of(q2);
  const double ra = a.spread / (1.0 + std::abs(a.mean)), rb = b.spread / (1.0 + std::abs(b.mean));
  r.max_residual = std::max(ra, rb);
  const auto& w = ra >= rb ? a : b;
  r.worst = {s[w.worst], 0.0, ra >= rb ? q1[w.worst] : q2[w.worst]};
  r.notes.push_back("kappa^2 tau: mean " + detail::num(a.mean) + ", spread " + detail::num(a.spread));
  r.notes.push_back("Sigma/tau + tau: mean " + detail::num(b.mean) + ", spread " + detail::num(b.spread));
  r.finish();
  return r;
}

/// max |(kappa'/kappa)' + eps kappa^2| with (log kappa)'' from central
/// differences of the Frenet curvature. Requires a planar curve.
inline VerificationReport check_kk(const CurveEvaluator& curve, int epsilon, Interval window, int n, double tol) {
  if (epsilon != 1 && epsilon != -1) throw PreconditionError("epsilon must be +1 or -1");
  const auto s = linspace(window.lo, window.hi, n);
  const double planar = planarity_residual(curve, s);
  if (planar > kPlanarityTol) {
    throw PreconditionError("check_kk needs a planar curve ('" + curve.name() + "' has planarity residual " +
                            detail::num(planar) + ")");
  }
  auto log_kappa = [&](double u) { return std::log(frenet_frame(curve, u).kappa); };
  const auto values = detail::curve_values(s, [&](double u) {
    const double kappa = frenet_frame(curve, u).kappa;
    const double dd = numdiff::central(log_kappa, u, numdiff::curve_step(u), 2);
    return std::abs(dd + epsilon * kappa * kappa);
  });
  auto r = detail::curve_report("kk", curve, detail::curve_grid(window, n), tol);
  detail::take_max(r, s, values);
  r.notes.push_back("epsilon " + std::to_string(epsilon));
  r.finish();
  return r;
}

/// Planarity residuals of both generators. Fails only when one is below tol
/// and the other above 10 tol; the reported residual is that of the second
/// generator whenever the first is planar, compared with 10 tol.
inline VerificationReport check_planarity_propagation(const TranslationSurface& surf, const GridSpec& grid,
                                                      double tol) {
  const auto s = grid.s_values(), t = grid.t_values();
  const double ra = planarity_residual(surf.alpha(), s);
  const double rb = planarity_residual(surf.beta(), t);
  auto r = detail::surface_report("planarity_propagation", surf, grid, 10.0 * tol);
  r.notes.push_back("alpha planarity residual " + detail::num(ra));
  r.notes.push_back("beta planarity residual " + detail::num(rb));
  const bool pa = ra < tol, pb = rb < tol;
  if (pa) r.max_residual = std::max(r.max_residual, rb);
  if (pb) r.max_residual = std::max(r.max_residual, ra);
  if (!pa && !pb) r.notes.push_back("neither generator is planar; implication holds vacuously");
  r.worst = {0.0, 0.0, r.max_residual};
  r.finish();
  return r;
}

/// Largest frame ODE residual over the samples.
inline VerificationReport check_frame(const CurveEvaluator& curve, FrameKind kind, Interval window, int n,
                                      double tol) {
  const auto s = linspace(window.lo, window.hi, n);
  const auto values = detail::curve_values(s, [&](double u) {
    return kind == FrameKind::Frenet ? frenet_ode_residual(curve, u) : pseudo_null_ode_residual(curve, u);
  });
  auto r = detail::curve_report("frame_ode", curve, detail::curve_grid(window, n), tol);
  detail::take_max(r, s, values);
  r.notes.push_back("frame " + std::string(to_string(kind)));
  r.finish();
  return r;
}

/// Largest violation of the algebraic frame conditions over the samples.
inline VerificationReport check_frame_algebra(const CurveEvaluator& curve, FrameKind kind, Interval window, int n,
                                              double tol) {
  const auto s = linspace(window.lo, window.hi, n);
  const auto values = detail::curve_values(s, [&](double u) {
    return kind == FrameKind::Frenet ? frenet_algebra_residual(frenet_frame(curve, u))
                                     : pseudo_null_algebra_residual(pseudo_null_frame(curve, u));
  });
  auto r = detail::curve_report("frame_algebra", curve, detail::curve_grid(window, n), tol);
  detail::take_max(r, s, values);
  r.notes.push_back("frame " + std::string(to_string(kind)));
  r.finish();
  return r;
}

/// Componentwise spread of beta(t) - alpha(t) over the t samples of the grid.
inline VerificationReport check_translation(const TranslationSurface& surf, const GridSpec& grid, double tol) {
  const auto t = grid.t_values();
  auto r = detail::surface_report("helix_translation", surf, grid, tol);
  MVec3 lo, hi;
  bool first = true;
  for (double u : t) {
    if (!surf.s_domain().contains(u)) throw DomainError("t = " + detail::num(u) + " is outside the alpha domain");
    const MVec3 d = surf.beta()(u) - surf.alpha()(u);
    if (first) {
      lo = hi = d;
      first = false;
    }
    lo = {std::min(lo.x, d.x), std::min(lo.y, d.y), std::min(lo.z, d.z)};
    hi = {std::max(hi.x, d.x), std::max(hi.y, d.y), std::max(hi.z, d.z)};
  }
  r.max_residual = max_abs_component(hi - lo);
  r.worst = {0.0, 0.0, r.max_residual};
  r.finish();
  return r;
}

/// One surface family instance of a suite.
struct SurfaceJob {
  std::string name;
  FamilyParams params;
  std::optional<int> ns{};
  std::optional<int> nt{};
  /// Any of "H_zero", "planarity_propagation", "helix_translation".
  std::vector<std::string> checks{"H_zero", "planarity_propagation"};
  std::optional<double> tol{};
  double oracle_tol = kOracleTol;
};

/// One named curve of a suite.
struct CurveJob {
  std::string name;
  CurveSpec spec;
  std::optional<Interval> window{};
  int n = 100;
  /// Any of "theorem41", "kk", "frame_ode", "frame_algebra".
  std::vector<std::string> checks{"frame_ode", "frame_algebra"};
  std::optional<int> epsilon{};
  std::optional<double> tol{};
};

struct SuiteConfig {
  std::vector<SurfaceJob> surfaces;
  std::vector<CurveJob> curves;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;

  bool all_pass() const {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  }
  int exit_code() const { return all_pass() ? 0 : 1; }
};

inline bool is_surface_check(std::string_view c) {
  return c == "H_zero" || c == "planarity_propagation" || c == "helix_translation";
}

inline bool is_curve_check(std::string_view c) {
  return c == "theorem41" || c == "kk" || c == "frame_ode" || c == "frame_algebra";
}

inline FrameKind frame_kind(CurveFamily f) {
  return f == CurveFamily::PseudoNullFlat || f == CurveFamily::PseudoNullExp ? FrameKind::PseudoNull
                                                                              : FrameKind::Frenet;
}

namespace detail {

inline VerificationReport failed_report(std::string check, std::string instance, std::string family,
                                        const GridSpec& grid, double tol, const std::string& what) {
  VerificationReport r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  r.family = std::move(family);
  r.grid = grid;
  r.tolerance = tol;
  r.max_residual = std::numeric_limits<double>::infinity();
  r.notes.push_back("error: " + what);
  r.finish();
  return r;
}

inline void run_surface_job(const SurfaceJob& job, std::vector<VerificationReport>& out) {
  BuiltFamily built = [&] {
    try {
      return build_family(job.params);
    } catch (const Error& e) {
      throw ConfigError("instance '" + job.name + "': " + e.what());
    }
  }();
  GridSpec grid = built.grid;
  if (job.ns) grid.ns = *job.ns;
  if (job.nt) grid.nt = *job.nt;
  const double tol = job.tol.value_or(h_tolerance(built));
  for (const auto& check : job.checks) {
    const std::size_t first = out.size();
    try {
      if (check == "H_zero") {
        auto h = check_H_zero(built.surface, grid, tol, job.oracle_tol);
        out.push_back(std::move(h.closed_form));
        out.push_back(std::move(h.oracle));
      } else if (check == "planarity_propagation") {
        out.push_back(check_planarity_propagation(built.surface, grid, kPlanarityTol));
      } else if (check == "helix_translation") {
        out.push_back(check_translation(built.surface, grid, kTranslationTol));
      }
    } catch (const Error& e) {
      out.resize(first);
      out.push_back(failed_report(check, job.name, built.surface.family(), grid, tol, e.what()));
      out.back().params = built.surface.params();
    }
    for (std::size_t i = first; i < out.size(); ++i) {
      out[i].instance = job.name;
      if (!built.note.empty()) out[i].notes.push_back(built.note);
    }
  }
}

inline void run_curve_job(const CurveJob& job, std::vector<VerificationReport>& out) {
  CurveEvaluator curve = [&] {
    try {
      return make_named_curve(job.spec);
    } catch (const Error& e) {
      throw ConfigError("instance '" + job.name + "': " + e.what());
    }
  }();
  const Interval window = job.window.value_or(default_window(job.spec));
  const FrameKind kind = frame_kind(job.spec.family);
  for (const auto& check : job.checks) {
    double tol = 0.0;
    if (check == "theorem41") tol = job.tol.value_or(kTheorem41Tol);
    if (check == "kk") tol = job.tol.value_or(kKkTol);
    if (check == "frame_ode") tol = job.tol.value_or(kFrameOdeTol);
    if (check == "frame_algebra") tol = job.tol.value_or(kFrameAlgebraTol);
    try {
      VerificationReport r;
      if (check == "theorem41") {
        r = check_theorem41(curve, window, job.n, tol);
      } else if (check == "kk") {
        const int eps = job.epsilon.value_or(frenet_frame(curve, 0.5 * (window.lo + window.hi)).epsilon);
        r = check_kk(curve, eps, window, job.n, tol);
      } else if (check == "frame_ode") {
        r = check_frame(curve, kind, window, job.n, tol);
      } else {
        r = check_frame_algebra(curve, kind, window, job.n, tol);
      }
      r.instance = job.name;
      out.push_back(std::move(r));
    } catch (const Error& e) {
      out.push_back(failed_report(check, job.name, curve.name(), curve_grid(window, job.n), tol, e.what()));
    }
  }
}

}  // namespace detail

/// Surfaces first, then curves, each in configuration order and each job's
/// checks in the listed order. Construction failures raise ConfigError; a
/// check that raises is reported as failed with the message in its notes.
inline SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult result;
  for (const auto& job : config.surfaces) {
    for (const auto& c : job.checks) {
      if (!is_surface_check(c)) throw ConfigError("instance '" + job.name + "': unknown surface check '" + c + "'");
    }
  }
  for (const auto& job : config.curves) {
    for (const auto& c : job.checks) {
      if (!is_curve_check(c)) throw ConfigError("instance '" + job.name + "': unknown curve check '" + c + "'");
    }
  }
  for (const auto& job : config.surfaces) detail::run_surface_job(job, result.reports);
  for (const auto& job : config.curves) detail::run_curve_job(job, result.reports);
  return result;
}

/// Non-finite numbers serialize as null.
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["instance"] = r.instance;
  j["family"] = r.family;
  j["params"] = params;
  j["grid"] = {{"s0", r.grid.s0}, {"s1", r.grid.s1}, {"t0", r.grid.t0},
               {"t1", r.grid.t1}, {"ns", r.grid.ns}, {"nt", r.grid.nt}};
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["worst"] = {{"s", r.worst.s}, {"t", r.worst.t}, {"value", r.worst.value}};
  j["skipped_degenerate"] = r.skipped_degenerate;
  j["notes"] = r.notes;
  return j;
}

inline nlohmann::ordered_json to_json(const SuiteResult& result) {
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : result.reports) reports.push_back(to_json(r));
  nlohmann::ordered_json j;
  j["pass"] = result.all_pass();
  j["count"] = result.reports.size();
  j["failed"] = std::count_if(result.reports.begin(), result.reports.end(), [](const auto& r) { return !r.pass; });
  j["reports"] = reports;
  return j;
}

}  // namespace maxtrans
