#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "maxtrans/arc_length.hpp"
#include "maxtrans/curve.hpp"
#include "maxtrans/frames.hpp"
#include "maxtrans/named_curves.hpp"

using namespace maxtrans;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::ContainsSubstring;

namespace {

CurveEvaluator poly_curve() {
  return CurveEvaluator::from_position({-kInf, kInf}, [](double s) { return MVec3{s * s, 0.0, 0.0}; }, "s^2");
}

std::vector<CurveSpec> all_specs() {
  std::vector<CurveSpec> out;
  for (auto f : {CurveFamily::Cu1, CurveFamily::Cu2, CurveFamily::Cu3, CurveFamily::LogParabola,
                 CurveFamily::PseudoNullFlat, CurveFamily::PseudoNullExp}) {
    for (double c : {1.0, 2.0}) {
      CurveSpec sp;
      sp.family = f;
      sp.c = c;
      sp.k = c;
      out.push_back(sp);
    }
  }
  out.push_back({CurveFamily::HelixI, 1.0, 1.0, 2.0, 1.0});
  out.push_back({CurveFamily::HelixII, 1.0, 1.0, 1.0, 1.0});
  out.push_back({CurveFamily::HelixII, 1.0, 1.0, 1.0, 2.0});
  out.push_back({CurveFamily::HelixIII, 1.0, 1.0, 1.0, 2.0});
  out.push_back({CurveFamily::HelixExample, 1.0, 1.0, 1.0, 2.0});
  return out;
}

bool near(const MVec3& a, const MVec3& b, double tol) { return max_abs_component(a - b) <= tol; }

}  // namespace

TEST_CASE("derivative of simple curves") {
  const auto line = CurveEvaluator::from_position({-kInf, kInf}, [](double s) { return MVec3{s, 0, 0}; });
  CHECK(near(derivative(line, 0.3, 1), {1, 0, 0}, 1e-10));
  CHECK(near(derivative(poly_curve(), 1.0, 2), {2, 0, 0}, 1e-6));
  const auto helix = make_named_curve({CurveFamily::HelixI, 1.0, 1.0, 2.0, 1.0});
  const MVec3 d1 = derivative(helix, 0.0, 1);
  CHECK_THAT(inner(d1, d1), WithinAbs(1.0, 1e-12));
  CHECK(causality(d1) == Causality::Spacelike);
}

TEST_CASE("evaluation outside the domain is a domain error") {
  const auto cu3 = make_named_curve({CurveFamily::Cu3});
  CHECK_THROWS_AS(cu3.eval(-0.5, 0), DomainError);
  const auto fd = CurveEvaluator::from_position({0.0, 1.0}, [](double s) { return MVec3{s, 0, 0}; });
  CHECK_THROWS_AS(fd.eval(1e-5, 1), DomainError);
  CHECK_NOTHROW(fd.eval(0.5, 3));
}

TEST_CASE("arc-length reparametrization of a constant-speed line") {
  const auto line = CurveEvaluator::analytic({-3.0, 3.0}, [](double s, int o) -> MVec3 {
    return o == 0 ? MVec3{2 * s, 0, 0} : (o == 1 ? MVec3{2, 0, 0} : MVec3{});
  });
  const auto g = arc_length_reparam(line, 0.0, 1e-9);
  CHECK(near(g(1.0), {1, 0, 0}, 1e-9));
  CHECK(near(g(0.0), {0, 0, 0}, 1e-12));
  CHECK_THAT(g.domain().lo, WithinAbs(-6.0, 1e-9));
  CHECK_THAT(g.domain().hi, WithinAbs(6.0, 1e-9));
}

TEST_CASE("arc-length form of the log-cosine graph is the reflected cu1 curve") {
  const double c = 1.0;
  const auto graph = CurveEvaluator::analytic({-std::numbers::pi / 2 + 1e-3, std::numbers::pi / 2 - 1e-3},
                                              [c](double x, int o) -> MVec3 {
    const double t = std::tan(c * x);
    switch (o) {
      case 0: return {x, std::log(std::cos(c * x)) / c, 0};
      case 1: return {1, -t, 0};
      case 2: return {0, -c * (1 + t * t), 0};
      default: return {0, -2 * c * c * t * (1 + t * t), 0};
    }
  });
  const auto g = arc_length_reparam(graph, 0.0, 1e-9, Interval{-1.4, 1.4});
  const auto cu1 = make_named_curve({CurveFamily::Cu1, c});
  for (double sigma : linspace(g.domain().lo + 1e-3, g.domain().hi - 1e-3, 41)) {
    MVec3 ref = cu1(sigma);
    ref.y = -ref.y;
    CHECK(near(g(sigma), ref, 1e-6));
    const MVec3 d1 = g.eval(sigma, 1);
    CHECK_THAT(inner(d1, d1), WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("arc-length reparametrization of a unit-speed curve is the identity") {
  const auto cu1 = make_named_curve({CurveFamily::Cu1});
  const auto g = arc_length_reparam(cu1, 0.0, 1e-9, Interval{-2.0, 2.0});
  for (double s : linspace(-1.9, 1.9, 21)) CHECK(near(g(s), cu1(s), 1e-9));
}

TEST_CASE("arc-length reparametrization rejects non-spacelike curves") {
  const auto timelike = CurveEvaluator::analytic({-1.0, 1.0}, [](double s, int o) -> MVec3 {
    return o == 0 ? MVec3{0.1 * s, 0, s} : (o == 1 ? MVec3{0.1, 0, 1} : MVec3{});
  });
  CHECK_THROWS_AS(arc_length_reparam(timelike, 0.0, 1e-9), CausalityError);
}

TEST_CASE("analytic jets of named curves agree with finite differences of their positions") {
  for (const auto& sp : all_specs()) {
    const auto curve = make_named_curve(sp);
    const auto fd = curve.position_only();
    const Interval w = default_window(sp);
    for (double s : linspace(w.lo, w.hi, 25)) {
      for (int order = 1; order <= 3; ++order) {
        const MVec3 a = curve.eval(s, order);
        const MVec3 b = fd.eval(s, order);
        const double tol = 1e-5 * std::max(1.0, euclid_norm(a));
        INFO(to_string(sp.family) << " c=" << sp.c << " s=" << s << " order=" << order);
        CHECK(near(a, b, tol));
      }
    }
  }
}

TEST_CASE("arc-length parametrized named curves are unit-speed") {
  for (const auto& sp : all_specs()) {
    if (sp.family == CurveFamily::HelixExample) continue;
    const auto curve = make_named_curve(sp);
    const Interval w = default_window(sp);
    for (double s : linspace(w.lo, w.hi, 50)) {
      const MVec3 d1 = curve.eval(s, 1);
      INFO(to_string(sp.family) << " s=" << s);
      CHECK_THAT(inner(d1, d1), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("named curve point values") {
  const auto cu1 = make_named_curve({CurveFamily::Cu1});
  CHECK(near(cu1(0.0), {0, 0, 0}, 0.0));
  const MVec3 d = cu1.eval(0.0, 1);
  CHECK_THAT(inner(d, d), WithinAbs(1.0, 1e-15));
  const auto lp = make_named_curve({CurveFamily::LogParabola});
  CHECK(near(lp(1.0), {0.25, 0, 0.25}, 1e-15));
}

TEST_CASE("named curve parameter errors name the violated inequality") {
  CurveSpec sp;
  sp.c = -1.0;
  CHECK_THROWS_WITH(make_named_curve(sp), ContainsSubstring("c > 0"));
  CHECK_THROWS_WITH(make_named_curve({CurveFamily::HelixI, 1.0, 1.0, 1.0, 2.0}), ContainsSubstring("r^2 > h^2 > 0"));
  CHECK_THROWS_WITH(make_named_curve({CurveFamily::HelixIII, 1.0, 1.0, 2.0, 1.0}), ContainsSubstring("h^2 > r^2 > 0"));
  CHECK_THROWS_AS(make_named_curve({CurveFamily::HelixII, 1.0, 1.0, 0.0, 1.0}), ParameterError);
  CurveSpec pn{CurveFamily::PseudoNullExp};
  pn.k = 2.0;
  pn.b = MVec3{1, 0, 0};
  CHECK_THROWS_WITH(make_named_curve(pn), ContainsSubstring("<b,b>"));
  pn.b = MVec3{2, 0, 0};
  pn.v = MVec3{0, 1, 0.5};
  CHECK_THROWS_WITH(make_named_curve(pn), ContainsSubstring("<v,v> = 0"));
  pn.v = MVec3{1, 0, 1};
  CHECK_THROWS_WITH(make_named_curve(pn), ContainsSubstring("<v,b> = 0"));
}

TEST_CASE("singular parameters are excluded with a margin") {
  const auto cu2 = make_named_curve({CurveFamily::Cu2, 2.0});
  CHECK_THAT(cu2.domain().hi, WithinAbs(std::numbers::pi / 4 - kSingularMargin, 1e-15));
  CHECK(make_named_curve({CurveFamily::Cu3}).domain().lo == kSingularMargin);
  CHECK(make_named_curve({CurveFamily::LogParabola}).domain().lo == kSingularMargin);
}

TEST_CASE("acceleration causality per family") {
  auto all = [](CurveSpec sp, Causality expected) {
    const auto c = make_named_curve(sp);
    const Interval w = default_window(sp);
    for (double s : linspace(w.lo, w.hi, 40)) CHECK(acceleration_causality(c, s) == expected);
  };
  all({CurveFamily::Cu1}, Causality::Spacelike);
  all({CurveFamily::Cu2}, Causality::Timelike);
  all({CurveFamily::Cu3}, Causality::Timelike);
  all({CurveFamily::LogParabola}, Causality::Timelike);
  all({CurveFamily::PseudoNullFlat}, Causality::Lightlike);
  all({CurveFamily::PseudoNullExp}, Causality::Lightlike);
  const auto line = CurveEvaluator::from_position({-kInf, kInf}, [](double s) { return MVec3{s, 0, 0}; });
  CHECK_THROWS_AS(acceleration_causality(line, 0.0), DegenerateCurveError);
}

TEST_CASE("planarity residual") {
  const auto cu2 = make_named_curve({CurveFamily::Cu2});
  const auto s2 = linspace(-1.2, 1.2, 50);
  CHECK(planarity_residual(cu2, s2) < 1e-6);
  const auto helix = make_named_curve({CurveFamily::HelixI, 1.0, 1.0, 2.0, 1.0});
  const auto s1 = linspace(-2, 2, 50);
  CHECK(planarity_residual(helix, s1) > 1e-3);
  const auto line = CurveEvaluator::from_position({-kInf, kInf}, [](double s) { return MVec3{s, 2 * s, 0}; });
  CHECK(planarity_residual(line, s1) == 0.0);
}

TEST_CASE("linspace is inclusive") {
  const auto v = linspace(0.0, 1.0, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 1.0);
}
