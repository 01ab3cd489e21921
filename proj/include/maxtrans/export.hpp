#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "maxtrans/curve.hpp"
#include "maxtrans/frames.hpp"
#include "maxtrans/ode.hpp"
#include "maxtrans/surface.hpp"

namespace maxtrans {

/// Shortest decimal that parses back to exactly x.
inline std::string format_shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// x with 9 significant digits.
inline std::string format_9g(double x) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

namespace detail {

inline void write_surface_header(std::ostream& out, const TranslationSurface& surf, const GridSpec& grid,
                                 const char* comment) {
  out << comment << " family " << (surf.family().empty() ? "custom" : surf.family()) << '\n';
  out << comment << " params";
  for (const auto& [k, v] : surf.params()) out << ' ' << k << '=' << format_shortest(v);
  out << '\n';
  out << comment << " grid s0=" << format_shortest(grid.s0) << " s1=" << format_shortest(grid.s1)
      << " t0=" << format_shortest(grid.t0) << " t1=" << format_shortest(grid.t1) << " ns=" << grid.ns
      << " nt=" << grid.nt << '\n';
}

}  // namespace detail

/// Wavefront OBJ: one vertex per grid sample in row-major order, each grid
/// cell split into two triangles. Degenerate samples are still emitted.
inline void write_obj(std::ostream& out, const TranslationSurface& surf, const GridSpec& grid,
                      const std::vector<SurfaceSample>& samples) {
  detail::write_surface_header(out, surf, grid, "#");
  for (const auto& smp : samples) {
    out << "v " << format_9g(smp.point.x) << ' ' << format_9g(smp.point.y) << ' ' << format_9g(smp.point.z) << '\n';
  }
  const auto nt = static_cast<std::size_t>(grid.nt);
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(grid.ns); ++i) {
    for (std::size_t j = 0; j + 1 < nt; ++j) {
      const std::size_t a = i * nt + j + 1, b = a + 1, c = a + nt, d = c + 1;
      out << "f " << a << ' ' << c << ' ' << d << '\n';
      out << "f " << a << ' ' << d << ' ' << b << '\n';
    }
  }
}

/// One row per grid sample in row-major order; causal is "degenerate" where
/// the sample is not regular.
inline void write_surface_csv(std::ostream& out, const std::vector<SurfaceSample>& samples) {
  out << "s,t,x,y,z,E,F,G,H_residual,causal,regular\n";
  for (const auto& smp : samples) {
    const auto f = format_shortest;
    out << f(smp.s) << ',' << f(smp.t) << ',' << f(smp.point.x) << ',' << f(smp.point.y) << ',' << f(smp.point.z)
        << ',' << f(smp.E) << ',' << f(smp.F) << ',' << f(smp.G) << ',' << f(smp.H_residual) << ','
        << (smp.regular ? to_string(smp.causal) : "degenerate") << ',' << (smp.regular ? 1 : 0) << '\n';
  }
}

/// Columns s,x,y,z,kappa,tau,epsilon_or_PN,planarity_residual. Frenet rows
/// give epsilon; pseudo-null rows give "PN" and no tau. Frame columns are
/// left empty where no frame exists (straight pieces, non-unit-speed curves).
inline void write_curve_csv(std::ostream& out, const CurveEvaluator& curve, const std::vector<double>& s_values) {
  out << "s,x,y,z,kappa,tau,epsilon_or_PN,planarity_residual\n";
  for (double s : s_values) {
    const MVec3 p = curve(s);
    out << format_shortest(s) << ',' << format_shortest(p.x) << ',' << format_shortest(p.y) << ','
        << format_shortest(p.z) << ',';
    try {
      if (acceleration_causality(curve, s) == Causality::Lightlike) {
        out << format_shortest(pseudo_null_frame(curve, s).kappa) << ",,PN,";
      } else {
        const FrenetFrame fr = frenet_frame(curve, s);
        out << format_shortest(fr.kappa) << ',' << format_shortest(fr.tau) << ',' << fr.epsilon << ',';
      }
    } catch (const Error&) {
      out << ",,,";
    }
    const double one[] = {s};
    out << format_shortest(planarity_residual(curve, one)) << '\n';
  }
}

/// Node table of an integrated ODE: x, f, f', f''.
inline void write_ode_csv(std::ostream& out, const OdeSolution& sol) {
  out << "x,f,df,ddf\n";
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    out << format_shortest(sol.x[i]) << ',' << format_shortest(sol.f[i]) << ',' << format_shortest(sol.df[i]) << ','
        << format_shortest(sol.ddf[i]) << '\n';
  }
}

}  // namespace maxtrans
