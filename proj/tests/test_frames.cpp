#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxtrans/frames.hpp"
#include "maxtrans/named_curves.hpp"

using namespace maxtrans;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CurveSpec spec(CurveFamily f, double c = 1.0) {
  CurveSpec sp;
  sp.family = f;
  sp.c = c;
  sp.k = c;
  return sp;
}

CurveSpec helix(CurveFamily f, double r, double h) {
  CurveSpec sp;
  sp.family = f;
  sp.r = r;
  sp.h = h;
  return sp;
}

std::vector<double> window_samples(const CurveSpec& sp, int n) {
  const Interval w = default_window(sp);
  return linspace(w.lo, w.hi, n);
}

double spread(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

TEST_CASE("Scherk generating curves have the closed-form curvatures") {
  for (double c : {1.0, 2.0}) {
    const auto cu1 = make_named_curve(spec(CurveFamily::Cu1, c));
    for (double s : window_samples(spec(CurveFamily::Cu1, c), 60)) {
      const auto f = frenet_frame(cu1, s);
      CHECK_THAT(f.kappa, WithinAbs(c / std::cosh(c * s), 1e-5));
      CHECK_THAT(f.tau, WithinAbs(0.0, 1e-12));
      CHECK(f.epsilon == 1);
    }
    const auto cu2 = make_named_curve(spec(CurveFamily::Cu2, c));
    for (double s : window_samples(spec(CurveFamily::Cu2, c), 60)) {
      const auto f = frenet_frame(cu2, s);
      CHECK_THAT(f.kappa, WithinAbs(c / std::cos(c * s), 1e-5));
      CHECK(f.epsilon == -1);
    }
    const auto cu3 = make_named_curve(spec(CurveFamily::Cu3, c));
    for (double s : window_samples(spec(CurveFamily::Cu3, c), 60)) {
      const auto f = frenet_frame(cu3, s);
      CHECK_THAT(f.kappa, WithinAbs(c / std::sinh(c * s), 1e-5));
      CHECK(f.epsilon == -1);
    }
  }
  const auto lp = make_named_curve(spec(CurveFamily::LogParabola));
  for (double s : window_samples(spec(CurveFamily::LogParabola), 60)) {
    CHECK_THAT(frenet_frame(lp, s).kappa, WithinAbs(1.0 / s, 1e-5));
  }
}

TEST_CASE("helix curvature and torsion match hand-derived constants") {
  // Type I: kappa = r / (r^2 - h^2), tau = -h / (r^2 - h^2).
  const auto h1 = make_named_curve(helix(CurveFamily::HelixI, 2.0, 1.0));
  for (double s : linspace(-2, 2, 100)) {
    const auto f = frenet_frame(h1, s);
    CHECK_THAT(f.kappa, WithinRel(2.0 / 3.0, 1e-12));
    CHECK_THAT(f.tau, WithinRel(-1.0 / 3.0, 1e-12));
    CHECK(f.epsilon == 1);
  }
}

TEST_CASE("helix curvature and torsion are constant") {
  for (const auto& sp : {helix(CurveFamily::HelixI, 2.0, 1.0), helix(CurveFamily::HelixII, 1.0, 1.0),
                         helix(CurveFamily::HelixII, 1.0, 2.0), helix(CurveFamily::HelixIII, 1.0, 2.0)}) {
    const auto curve = make_named_curve(sp);
    std::vector<double> k, t, k2t;
    for (double s : linspace(-2, 2, 100)) {
      const auto f = frenet_frame(curve, s);
      k.push_back(f.kappa);
      t.push_back(f.tau);
      k2t.push_back(f.kappa * f.kappa * f.tau);
    }
    INFO(to_string(sp.family) << " r=" << sp.r << " h=" << sp.h);
    CHECK(spread(k) < 1e-6);
    CHECK(spread(t) < 1e-6);
    CHECK(spread(k2t) < 1e-6);
    CHECK(std::abs(t.front()) > 1e-3);
  }
}

TEST_CASE("Frenet frames satisfy the frame equations and algebraic conditions") {
  std::vector<CurveSpec> specs = {spec(CurveFamily::Cu1),      spec(CurveFamily::Cu1, 2.0),
                                  spec(CurveFamily::Cu2),      spec(CurveFamily::Cu2, 2.0),
                                  spec(CurveFamily::Cu3),      spec(CurveFamily::Cu3, 2.0),
                                  spec(CurveFamily::LogParabola), helix(CurveFamily::HelixI, 2.0, 1.0),
                                  helix(CurveFamily::HelixII, 1.0, 1.0), helix(CurveFamily::HelixII, 1.0, 2.0),
                                  helix(CurveFamily::HelixIII, 1.0, 2.0)};
  for (const auto& sp : specs) {
    const auto curve = make_named_curve(sp);
    for (double s : window_samples(sp, 40)) {
      INFO(to_string(sp.family) << " c=" << sp.c << " s=" << s);
      CHECK(frenet_ode_residual(curve, s) <= 1e-5);
      CHECK(frenet_algebra_residual(frenet_frame(curve, s)) <= 1e-8);
    }
  }
}

TEST_CASE("flipping the torsion sign breaks the frame equations") {
  const auto curve = make_named_curve(helix(CurveFamily::HelixI, 2.0, 1.0));
  const double s = 0.3;
  auto f = frenet_frame(curve, s);
  const double h = 1e-4;
  const MVec3 db = numdiff::central([&](double u) { return frenet_frame(curve, u).b; }, s, h, 1);
  CHECK(max_abs_component(db - f.tau * f.n) < 1e-8);
  CHECK(max_abs_component(db + f.tau * f.n) > 0.1);
}

TEST_CASE("pseudo-null frame of the flat curve") {
  const auto curve = make_named_curve(spec(CurveFamily::PseudoNullFlat));
  for (double s : linspace(-1, 1, 21)) {
    const auto f = pseudo_null_frame(curve, s);
    CHECK(max_abs_component(f.n - MVec3{0, 1, 1}) == 0.0);
    CHECK_THAT(f.kappa, WithinAbs(0.0, 1e-12));
    CHECK(f.orientation == -1);
    CHECK(pseudo_null_algebra_residual(f) <= 1e-8);
    CHECK(pseudo_null_ode_residual(curve, s) <= 1e-5);
  }
}

TEST_CASE("pseudo-null frame recovers a constant curvature") {
  for (double k : {1.0, -0.5, 2.0}) {
    const auto curve = make_named_curve(spec(CurveFamily::PseudoNullExp, k));
    for (double s : linspace(-1, 1, 21)) {
      const auto f = pseudo_null_frame(curve, s);
      INFO("k=" << k << " s=" << s);
      CHECK_THAT(f.kappa, WithinAbs(k, 1e-6));
      CHECK_THAT(std::abs(det3(f.t, f.n, f.b)), WithinAbs(1.0, 1e-8));
      CHECK(pseudo_null_algebra_residual(f) <= 1e-8);
      CHECK(pseudo_null_ode_residual(curve, s) <= 1e-5);
    }
  }
}

TEST_CASE("pseudo-null b is the unique null vector paired with n") {
  // Independent construction: b lies in t-perp, spanned by n and a second
  // vector m of t-perp; impose <b,b> = 0 and <b,n> = 1 and solve the quadratic.
  const auto curve = make_named_curve(spec(CurveFamily::PseudoNullExp, 1.0));
  const double s = 0.4;
  const auto f = pseudo_null_frame(curve, s);
  const MVec3 m = cross(f.t, f.n + MVec3{0.3, -0.2, 0.1});
  const double mn = inner(m, f.n), mm = inner(m, m);
  // b = x n + y m: y <m,n> = 1 and 2 x y <n,m> + y^2 <m,m> = 0.
  const double y = 1.0 / mn;
  const double x = -y * mm / (2.0 * mn);
  const MVec3 b = x * f.n + y * m;
  CHECK(max_abs_component(b - f.b) < 1e-10 * std::max(1.0, euclid_norm(b)));
}

TEST_CASE("frame errors") {
  const auto pn = make_named_curve(spec(CurveFamily::PseudoNullFlat));
  CHECK_THROWS_AS(frenet_frame(pn, 0.0), WrongFrameError);
  const auto cu1 = make_named_curve(spec(CurveFamily::Cu1));
  CHECK_THROWS_AS(pseudo_null_frame(cu1, 0.0), WrongFrameError);
  const auto slow = CurveEvaluator::analytic({-1, 1}, [](double s, int o) -> MVec3 {
    return o == 0 ? MVec3{2 * s, s * s, 0} : (o == 1 ? MVec3{2, 2 * s, 0} : (o == 2 ? MVec3{0, 2, 0} : MVec3{}));
  });
  CHECK_THROWS_AS(frenet_frame(slow, 0.0), PreconditionError);
  const auto line = CurveEvaluator::analytic({-1, 1}, [](double s, int o) -> MVec3 {
    return o == 0 ? MVec3{s, 0, 0} : (o == 1 ? MVec3{1, 0, 0} : MVec3{});
  });
  CHECK_THROWS_AS(frenet_frame(line, 0.0), DegenerateCurveError);
}

TEST_CASE("curve invariants of circular helices") {
  for (const auto& sp : {helix(CurveFamily::HelixI, 2.0, 1.0), helix(CurveFamily::HelixIII, 1.0, 2.0)}) {
    const auto curve = make_named_curve(sp);
    std::vector<double> q;
    for (double s : linspace(-1.5, 1.5, 40)) {
      const auto inv = curve_invariants(curve, s);
      CHECK_THAT(inv.R, WithinAbs(0.0, 1e-6));
      CHECK_THAT(inv.Sigma, WithinAbs(inv.kappa * inv.kappa + inv.tau * inv.tau, 1e-6));
      q.push_back(inv.Sigma / inv.tau + inv.tau);
    }
    CHECK(spread(q) < 1e-5);
  }
  CHECK_THROWS_AS(curve_invariants(make_named_curve(spec(CurveFamily::Cu1)), 0.2), PlanarCurveError);
}
