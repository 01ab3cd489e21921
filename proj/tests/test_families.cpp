#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "maxtrans/arc_length.hpp"
#include "maxtrans/families.hpp"

using namespace maxtrans;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

double max_residual(const BuiltFamily& b) {
  double m = 0.0;
  for (const auto& smp : sample_grid(b.surface, b.grid)) m = std::max(m, smp.H_residual);
  return m;
}

double max_numerator(const TranslationSurface& surf, const GridSpec& grid) {
  double m = 0.0;
  for (const auto& smp : sample_grid(surf, grid)) m = std::max(m, std::abs(smp.H_numerator));
  return m;
}

FamilyParams params(Family f, double theta = 0.0, double c = 1.0) {
  FamilyParams p = default_params(f);
  p.theta = theta;
  p.c = c;
  return p;
}

}  // namespace

TEST_CASE("family names round-trip") {
  for (Family f : kAllFamilies) CHECK(parse_family(to_string(f)) == f);
  CHECK_FALSE(parse_family("para4").has_value());
  CHECK(parse_helix_type("II") == HelixType::II);
}

TEST_CASE("para1 with theta = 0 is the plane z = 0") {
  const auto b = build_family(params(Family::Para1, 0.0));
  for (const auto& smp : sample_grid(b.surface, b.grid)) CHECK(std::abs(smp.point.z) <= 1e-12);
}

TEST_CASE("para2 and para3 with theta = 0 are the graph surfaces") {
  for (double c : {1.0, 2.0}) {
    const auto p2 = build_family(params(Family::Para2, 0.0, c));
    for (const auto& smp : sample_grid(p2.surface, p2.grid)) {
      CHECK_THAT(smp.point.z, WithinAbs(scherk_graph_height(Family::ScherkGraphZ, c, smp.point.x, smp.point.y), 1e-8));
    }
    const auto p3 = build_family(params(Family::Para3, 0.0, c));
    for (const auto& smp : sample_grid(p3.surface, p3.grid)) {
      CHECK_THAT(smp.point.y, WithinAbs(scherk_graph_height(Family::ScherkGraphY, c, smp.point.x, smp.point.z), 1e-8));
    }
  }
}

TEST_CASE("graph surfaces satisfy their defining equations") {
  const auto z = build_scherk_graph(Family::ScherkGraphZ, 1.5);
  const auto y = build_scherk_graph(Family::ScherkGraphY, 1.5);
  for (double s : linspace(-0.9, 0.9, 9)) {
    for (double t : linspace(0.1, 0.9, 9)) {
      const MVec3 pz = z.point(s, t), py = y.point(s, t);
      CHECK_THAT(pz.z, WithinAbs((std::log(std::cosh(1.5 * pz.x)) - std::log(std::cosh(1.5 * pz.y))) / 1.5, 1e-12));
      CHECK_THAT(py.y, WithinAbs((std::log(std::sinh(1.5 * py.z)) - std::log(std::cos(1.5 * py.x))) / 1.5, 1e-12));
    }
  }
}

TEST_CASE("para3 with c = 1 and theta = 1 is maximal on a 50 x 50 grid") {
  const auto b = build_family(params(Family::Para3, 1.0));
  CHECK(b.grid.ns == 50);
  CHECK(max_residual(b) < 1e-6);
}

TEST_CASE("Scherk-type generators are planar") {
  for (Family f : {Family::Para1, Family::Para2, Family::Para3}) {
    const auto b = build_family(params(f, 0.5, 2.0));
    const auto s = b.grid.s_values(), t = b.grid.t_values();
    CHECK(planarity_residual(b.surface.alpha(), s) < 1e-6);
    CHECK(planarity_residual(b.surface.beta(), t) < 1e-6);
  }
}

TEST_CASE("parameter violations name the constraint") {
  CHECK_THROWS_WITH(build_scherk_type(Family::Para1, -1.0, 0.0), ContainsSubstring("c > 0"));
  CHECK_THROWS_WITH(build_scherk_graph(Family::ScherkGraphY, 0.0), ContainsSubstring("c > 0"));
  FamilyParams p = default_params(Family::T31);
  p.k = 0.0;
  CHECK_THROWS_WITH(build_family(p), ContainsSubstring("k != 0"));
  p = default_params(Family::T32a);
  p.m = 0.0;
  CHECK_THROWS_WITH(build_family(p), ContainsSubstring("m != 0"));
  CHECK_THROWS_WITH(build_t34(1.0, 0.0, 1.0, 1.0), ContainsSubstring("w2 - w3 != 0"));
  CHECK_THROWS_WITH(build_t34(1.0, 1.0, 1.0, 0.0), ContainsSubstring("b^2 (w2 - w3) + w2 + w3 = 0"));
  CHECK_THROWS_WITH(build_helix_sum(HelixType::I, 1.0, 2.0), ContainsSubstring("r^2 > h^2 > 0"));
  CHECK_THROWS_AS(build_mismatched(1.0, -2.0, 0.5), ParameterError);
}

TEST_CASE("T31 generators: unit-speed null-accelerated beta and planar alpha") {
  for (double theta : {0.0, 0.5}) {
    const auto b = build_family(params(Family::T31, theta));
    const auto& beta = b.surface.beta();
    for (double t : b.grid.t_values()) {
      const MVec3 d1 = beta.eval(t, 1), d2 = beta.eval(t, 2);
      CHECK_THAT(inner(d1, d1), WithinAbs(1.0, 1e-12));
      CHECK(std::abs(inner(d2, d2)) <= 1e-9 * euclid_norm2(d2));
      CHECK(acceleration_causality(beta, t) == Causality::Lightlike);
    }
    CHECK(planarity_residual(b.surface.alpha(), b.grid.s_values()) < 1e-6);
    CHECK(max_residual(b) < 1e-5);
  }
}

TEST_CASE("T31 with theta = 0.5 stops before the pole and records it") {
  const auto b = build_family(params(Family::T31, 0.5));
  REQUIRE(b.ode.has_value());
  CHECK(b.ode->truncated());
  CHECK(b.ode->stop_lo == StopReason::NearPole);
  CHECK_THAT(b.note, ContainsSubstring("near_pole"));
  CHECK(b.grid.s0 >= b.ode->usable().lo + kGridMargin - 1e-12);
  const auto& rhs = b.ode->rhs;
  CHECK(rhs.pole_distance(b.ode->x.front(), b.ode->f.front()) < 0.05);
}

TEST_CASE("T32a beta has constant null acceleration") {
  FamilyParams p = default_params(Family::T32a);
  p.m = 1.5;
  const auto b = build_family(p);
  for (double t : linspace(-1, 1, 11)) CHECK(b.surface.beta().eval(t, 2) == MVec3{1.5, 0.0, 1.5});
  CHECK(inner(b.surface.beta().eval(0.0, 1), b.surface.beta().eval(0.0, 1)) == 1.0);
  CHECK(max_residual(b) < 1e-5);
}

TEST_CASE("T32b is maximal with a lightlike beta acceleration") {
  for (double theta : {0.0, 0.5}) {
    const auto b = build_family(params(Family::T32b, theta));
    CHECK(max_residual(b) < 1e-5);
    for (double t : b.grid.t_values()) {
      const MVec3 d2 = b.surface.beta().eval(t, 2);
      CHECK(std::abs(inner(d2, d2)) <= 1e-9 * euclid_norm2(d2));
    }
    const auto m = causal_map(b.surface, b.grid);
    CHECK(m.spacelike > b.grid.size() / 2);
  }
}

TEST_CASE("exponential-generator examples have closed-form parametrizations") {
  const double k = 1.0;
  const auto ex1 = build_t34(k, 0.0, 1.0, -1.0);
  const auto ex2 = build_t34(k, 1.0, 0.0, 1.0);
  for (double s : linspace(-1, 1, 9)) {
    for (double t : linspace(-1, 1, 9)) {
      const double es = std::exp(k * s), et = std::exp(k * t);
      const MVec3 p1 = ex1.point(s, t), p2 = ex2.point(s, t);
      CHECK(max_abs_component(p1 - MVec3{-s + t, es + et, es - et}) < 1e-12);
      CHECK(max_abs_component(p2 - MVec3{et - s + t, es - s + t, es + et - s + t}) < 1e-12);
    }
  }
  const GridSpec grid{-1, 1, -1, 1, 40, 40};
  CHECK(max_numerator(ex1, grid) <= 1e-8);
  CHECK(max_numerator(ex2, grid) <= 1e-8);
}

TEST_CASE("pseudo-null sums have a vanishing numerator and a degenerate diagonal") {
  for (double k : {0.0, 1.0}) {
    const auto surf = build_pseudo_null_sum(pseudo_null_spec(k));
    const GridSpec grid{-1, 1, -1, 1, 40, 40};
    CHECK(max_numerator(surf, grid) <= 1e-8);
    const auto samples = sample_grid(surf, grid);
    for (int i = 0; i < 40; ++i) CHECK_FALSE(samples[static_cast<std::size_t>(i) * 40 + i].regular);
    CHECK(samples[1].regular);
  }
}

TEST_CASE("helix sums have a vanishing numerator") {
  const GridSpec grid{-1, 1, -1, 1, 30, 30};
  CHECK(max_numerator(build_helix_sum(HelixType::I, 2.0, 1.0), grid) < 1e-8);
  CHECK(max_numerator(build_helix_sum(HelixType::II, 1.0, 1.0), grid) < 1e-8);
  CHECK(max_numerator(build_helix_sum(HelixType::III, 1.0, 2.0), grid) < 1e-8);
  CHECK(max_numerator(build_helix_sum(HelixType::Example, 1.0, 2.0), {-2, 2, -2, 2, 30, 30}) < 1e-8);
}

TEST_CASE("control surface is not maximal") {
  const auto b = build_family(default_params(Family::Mismatched));
  CHECK(b.control);
  CHECK(max_residual(b) > 1e-3);
}

TEST_CASE("default grids lie inside the surface domains") {
  for (Family f : kAllFamilies) {
    const auto b = build_family(default_params(f));
    INFO(to_string(f));
    CHECK(b.surface.s_domain().contains(b.grid.s0));
    CHECK(b.surface.s_domain().contains(b.grid.s1));
    CHECK(b.surface.t_domain().contains(b.grid.t0));
    CHECK(b.surface.t_domain().contains(b.grid.t1));
    CHECK(b.grid.s0 >= -kDefaultBox);
    CHECK(b.grid.s1 <= kDefaultBox);
    CHECK(b.surface.family() == to_string(f));
  }
}

TEST_CASE("explicit ranges outside the domain are rejected") {
  FamilyParams p = params(Family::Para3, 0.5);
  p.t_range = Interval{-0.5, 0.5};
  CHECK_THROWS_AS(build_family(p), ParameterError);
}

TEST_CASE("measured planar curve types of the named curves") {
  CurveSpec sp;
  sp.family = CurveFamily::Cu1;
  CHECK(planar_type(make_named_curve(sp), 0.3) == PlanarType::Spacelike);
  sp.family = CurveFamily::Cu2;
  CHECK(planar_type(make_named_curve(sp), 0.3) == PlanarType::TimelikeCos);
  sp.family = CurveFamily::Cu3;
  CHECK(planar_type(make_named_curve(sp), 0.7) == PlanarType::TimelikeSinh);
  sp.family = CurveFamily::LogParabola;
  CHECK(planar_type(make_named_curve(sp), 0.7) == PlanarType::TimelikeInverse);
}

TEST_CASE("summary table has exactly three feasible cells matching the generators") {
  const auto table = scherk_table();
  CHECK(table.size() == 10);
  CHECK(std::count_if(table.begin(), table.end(), [](const ScherkCase& c) { return c.family.has_value(); }) == 3);
  for (const auto& cell : table) {
    if (!cell.family) continue;
    INFO(to_string(*cell.family));
    const auto surf = build_scherk_type(*cell.family, 1.0, 0.5);
    const Interval sw{-1, 1};
    const Interval tw = *cell.family == Family::Para3 ? Interval{0.2, 1.2} : Interval{-1, 1};
    const double t0 = 0.5 * (tw.lo + tw.hi);
    const auto a = arc_length_reparam(surf.alpha(), 0.0, 1e-6, sw);
    const auto b = arc_length_reparam(surf.beta(), t0, 1e-6, tw);
    CHECK(planar_type(a, 0.1) == cell.alpha);
    CHECK(planar_type(b, 0.1) == cell.beta);
  }
}
