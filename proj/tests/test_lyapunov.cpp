#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gyroform/control_laws.hpp"
#include "gyroform/errors.hpp"
#include "gyroform/lyapunov.hpp"
#include "gyroform/sampling.hpp"

using namespace gyroform;

namespace {

LawParams make(LawKind kind, int sign = 1) {
  LawParams p;
  p.alpha = 1.0;
  p.r0 = 2.0;
  p.mu = 0.5;
  p.eta = 0.4;
  p.sign = sign;
  p.kind = kind;
  return p;
}

double centered_vdot(const FramedState& a, const FramedState& b, const LawParams& p, double h) {
  const auto [c1, c2] = two_vehicle_controls(a, b, p);
  const double vp = v_rect(ShapeTriple::from_states(step(a, c1, h), step(b, c2, h)), p);
  const double vm = v_rect(ShapeTriple::from_states(step(a, c1, -h), step(b, c2, -h)), p);
  return (vp - vm) / (2.0 * h);
}

}  // namespace

TEST(VRect, MatchesDirectFormulaAndBoundary) {
  auto rng = sampling::make_stream(41, 0);
  const LawParams p = make(LawKind::Rectilinear);
  for (int i = 0; i < 1000; ++i) {
    const ShapeTriple s = sampling::random_shape(rng);
    const double rho = s.r.norm();
    const double arg = 1.0 + s.x1.dot(s.x2);
    const double direct = -std::log(arg) + (rho + 4.0 / rho - 4.0);
    // the dot-product oracle itself loses ~ulp / arg near the pole
    EXPECT_NEAR(v_rect(s, p), direct, 1e-13 * std::max(1.0, std::abs(direct)) + 1e-15 / arg);
  }
  const ShapeTriple opposite{Vec3(1, 0, 0), Vec3::UnitY(), -Vec3::UnitY()};
  EXPECT_EQ(v_rect(opposite, p), std::numeric_limits<double>::infinity());
  const ShapeTriple coincident{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitX()};
  EXPECT_EQ(v_rect(coincident, p), std::numeric_limits<double>::infinity());
}

TEST(VCirc, LogArgumentNonNegativeAndZeroOnBoundary) {
  auto rng = sampling::make_stream(42, 0);
  for (int i = 0; i < 100000; ++i) EXPECT_GE(circ_log_argument(sampling::random_shape(rng)), -1e-12);
  // parallel headings perpendicular to the baseline: 1 - 1 + 0 = 0
  const ShapeTriple s{Vec3(0, 1, 0), Vec3::UnitX(), Vec3::UnitX()};
  EXPECT_NEAR(circ_log_argument(s), 0.0, 1e-15);
  EXPECT_EQ(v_circ(s, make(LawKind::Circling)), std::numeric_limits<double>::infinity());
  // minimum of V_circ at the antipodal circling pair
  LawParams p = make(LawKind::Circling);
  const double d = potential_minimizer(p, LawKind::Circling);
  const ShapeTriple eq{Vec3(0, d, 0), Vec3::UnitX(), -Vec3::UnitX()};
  EXPECT_NEAR(v_circ(eq, p), -std::log(2.0), 1e-14);
}

TEST(VdotRect, NonPositiveOnRandomStates) {
  auto rng = sampling::make_stream(43, 0);
  for (int sign : {1, -1}) {
    const LawParams p = make(LawKind::Rectilinear, sign);
    double worst = -1.0;
    for (int i = 0; i < 20000; ++i) {
      const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
      const double v = vdot_rect_analytic(a, b, p);
      if (std::isfinite(v)) worst = std::max(worst, v);
    }
    EXPECT_LE(worst, 1e-12);
  }
}

TEST(VdotRect, MatchesCenteredFiniteDifferenceAlongClosedLoop) {
  auto rng = sampling::make_stream(44, 0);
  for (int sign : {1, -1}) {
    const LawParams p = make(LawKind::Rectilinear, sign);
    int checked = 0;
    while (checked < 100) {
      const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
      const double d = (a.r - b.r).norm();
      if (d < 0.5 * p.r0 || d > 2.0 * p.r0 || 1.0 + a.x.dot(b.x) < 0.1) continue;
      ++checked;
      EXPECT_NEAR(vdot_rect_analytic(a, b, p), centered_vdot(a, b, p, 1e-4), 1e-6);
    }
  }
}

TEST(VdotRect, ShapeOverloadChecksConsistency) {
  auto rng = sampling::make_stream(45, 0);
  const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
  const LawParams p = make(LawKind::Rectilinear);
  EXPECT_EQ(vdot_rect_analytic(ShapeTriple::from_states(a, b), a, b, p), vdot_rect_analytic(a, b, p));
  ShapeTriple wrong = ShapeTriple::from_states(a, b);
  wrong.r *= 2.0;
  EXPECT_THROW(vdot_rect_analytic(wrong, a, b, p), ContractError);
}

TEST(RectInequality, AngleFormSampledAndEqualityCases) {
  auto rng = sampling::make_stream(46, 0);
  for (int sign : {1, -1}) {
    for (int i = 0; i < 200000; ++i) {
      const double p1 = sampling::uniform(rng, 0, 2 * std::numbers::pi), p2 = sampling::uniform(rng, 0, 2 * std::numbers::pi);
      ASSERT_GE(rect_inequality(p1, p2, sign), -1e-12);
      const double d = p2 - p1;
      const double direct = std::sin(d) * (std::sin(d) + 0.5 * sign * (std::sin(2 * p2) - std::sin(2 * p1)));
      ASSERT_NEAR(rect_inequality(p1, p2, sign), direct, 1e-15);
    }
  }
}

TEST(RectInequality, VectorFormProperties) {
  auto rng = sampling::make_stream(47, 0);
  for (int sign : {1, -1}) {
    for (int i = 0; i < 1000; ++i) {
      ShapeTriple s = sampling::random_shape(rng);
      s.x2 = s.x1;
      EXPECT_NEAR(rect_inequality_vector(s, sign), 0.0, 4e-15);
      s.x2 = -s.x1;
      EXPECT_NEAR(rect_inequality_vector(s, sign), 0.0, 4e-15);
    }
    for (int i = 0; i < 1000; ++i) {
      // baseline perpendicular to span(x1, x2): same as the in-plane-free value 1 - (x1.x2)^2
      ShapeTriple s = sampling::random_shape(rng);
      s.r = s.x1.cross(s.x2).normalized() * 1.7;
      const double c = s.x1.dot(s.x2);
      EXPECT_NEAR(rect_inequality_vector(s, sign), 1.0 - c * c, 1e-14);
    }
    for (int i = 0; i < 1000; ++i) {
      const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
      const ShapeTriple s = ShapeTriple::from_states(a, b);
      EXPECT_NEAR(rect_inequality_frames(a, b, sign), rect_inequality_vector(s, sign), 1e-13);
      const PlanarAngles pa = planar_angles(s);
      const double c = s.x1.dot(s.x2);
      EXPECT_NEAR(rect_inequality_vector(s, sign),
                  (1.0 - pa.in_plane_fraction) * (1.0 - c * c) +
                      pa.in_plane_fraction * rect_inequality(pa.phi1, pa.phi2, sign),
                  1e-13);
    }
  }
}

TEST(CircInequality, SampledBothSigns) {
  auto rng = sampling::make_stream(48, 0);
  for (int sign : {1, -1}) {
    for (int i = 0; i < 200000; ++i) ASSERT_GE(circ_inequality_vector(sampling::random_shape(rng), sign), -1e-12);
  }
}

TEST(GroupForms, MatchFrameForms) {
  auto rng = sampling::make_stream(49, 0);
  for (int i = 0; i < 5000; ++i) {
    const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
    const ShapeTriple s = ShapeTriple::from_states(a, b);
    const SE3Element g = se3_compose(se3_inverse(state_to_group(a)), state_to_group(b));
    const double vr = v_rect(s, make(LawKind::Rectilinear));
    EXPECT_NEAR(v_rect_group(g, make(LawKind::Rectilinear)), vr, 1e-12 * std::max(1.0, std::abs(vr)));
    if (circ_log_argument(s) > 0.0) {
      const double vc = v_circ(s, make(LawKind::Circling));
      EXPECT_NEAR(v_circ_group(g, make(LawKind::Circling)), vc, 1e-12 * std::max(1.0, std::abs(vc)));
    }
  }
  // at the circling equilibrium
  const LawParams p = make(LawKind::Circling);
  const double d = potential_minimizer(p, LawKind::Circling);
  FramedState a, b;
  b.r = Vec3(0, d, 0);
  b.x = -a.x;
  b.y = -a.y;
  const SE3Element g = se3_compose(se3_inverse(state_to_group(a)), state_to_group(b));
  EXPECT_NEAR(v_circ_group(g, p), v_circ(ShapeTriple::from_states(a, b), p), 1e-15);
}

TEST(LyapunovValue, DispatchesOnKind) {
  const ShapeTriple s{Vec3(1, 2, 0), Vec3::UnitX(), Vec3(0.6, 0.8, 0)};
  EXPECT_EQ(lyapunov_value(s, make(LawKind::Rectilinear)), v_rect(s, make(LawKind::Rectilinear)));
  EXPECT_EQ(lyapunov_value(s, make(LawKind::Circling)), v_circ(s, make(LawKind::Circling)));
  EXPECT_EQ(lyapunov_value(s, make(LawKind::None)), 0.0);
}
