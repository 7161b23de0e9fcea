#include "gyroform/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gyroform/control_laws.hpp"
#include "gyroform/errors.hpp"
#include "gyroform/lyapunov.hpp"
#include "gyroform/sampling.hpp"
#include "gyroform/shape_equilibria.hpp"

namespace gyroform {

namespace {

using sampling::Rng;

constexpr double kIneqFloor = -1e-12;
constexpr double kIdentity = 1e-12;

class Runner {
 public:
  Runner(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}

  void at_least(const std::string& name, std::size_t count, double floor, const sampling::SampleFn& fn) {
    const auto e = sampling::sample_extremes(count, next_seed(), fn);
    add(name, e.samples, e.min, floor, PropertyResult::Bound::AtLeast, e.min >= floor);
  }

  void at_most(const std::string& name, std::size_t count, double ceiling, const sampling::SampleFn& fn) {
    const auto e = sampling::sample_extremes(count, next_seed(), fn);
    add(name, e.samples, e.max, ceiling, PropertyResult::Bound::AtMost, e.max <= ceiling);
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::uint64_t next_seed() { return seed_ * 1000003u + counter_++; }

  void add(const std::string& name, std::size_t n, double worst, double thr, PropertyResult::Bound b, bool ok) {
    results_.push_back({suite_, name, n, worst, thr, b, ok && !std::isnan(worst)});
  }

  std::string suite_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::vector<PropertyResult> results_;
};

LawParams params(LawKind kind, int sign) {
  LawParams p;
  p.alpha = 1.0;
  p.r0 = 2.0;
  p.mu = 0.5;
  p.eta = 0.4;
  p.sign = sign;
  p.kind = kind;
  return p;
}

// |a - b| / max(1, |a|, |b|): absolute near zero, relative for large values
// (close pairs drive f, and with it the controls, far above unit size).
double scaled_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

double max_scaled_diff(const ControlTriple& a, const ControlTriple& b) {
  return std::max({scaled_diff(a.u, b.u), scaled_diff(a.v, b.v), scaled_diff(a.w, b.w)});
}

void rect_suite(Runner& run, std::size_t n) {
  for (int sign : {1, -1}) {
    const std::string tag = sign > 0 ? "[+]" : "[-]";
    run.at_least("angle-form inequality " + tag, n, kIneqFloor, [sign](std::size_t, Rng& rng) {
      return rect_inequality(sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi),
                             sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi), sign);
    });
    run.at_least("vector-form inequality " + tag, n, kIneqFloor, [sign](std::size_t, Rng& rng) {
      return rect_inequality_vector(sampling::random_shape(rng), sign);
    });
    run.at_most("frame form equals vector form " + tag, n / 10, kIdentity, [sign](std::size_t, Rng& rng) {
      const FramedState a = sampling::random_state(rng, 2.0);
      const FramedState b = sampling::random_state(rng, 2.0);
      return std::abs(rect_inequality_frames(a, b, sign) - rect_inequality_vector(ShapeTriple::from_states(a, b), sign));
    });
    run.at_most("analytic Vdot_rect <= 0 " + tag, n / 10, kIdentity, [sign](std::size_t, Rng& rng) {
      const FramedState a = sampling::random_state(rng, 2.0);
      const FramedState b = sampling::random_state(rng, 2.0);
      const double v = vdot_rect_analytic(a, b, params(LawKind::Rectilinear, sign));
      return std::isnan(v) ? -1.0 : v;  // boundary draws carry no information
    });
  }
  run.at_most("planar reduction of the vector form", n / 10, kIdentity, [](std::size_t, Rng& rng) {
    const ShapeTriple s = sampling::random_shape(rng);
    const PlanarAngles a = planar_angles(s);
    const double c = s.x1.dot(s.x2);
    double worst = 0.0;
    for (int sign : {1, -1}) {
      const double reduced = (1.0 - a.in_plane_fraction) * (1.0 - c * c) +
                             a.in_plane_fraction * rect_inequality(a.phi1, a.phi2, sign);
      worst = std::max(worst, std::abs(reduced - rect_inequality_vector(s, sign)));
    }
    return worst;
  });
  run.at_most("V_rect group form equals frame form", n / 10, kIdentity, [](std::size_t, Rng& rng) {
    const FramedState a = sampling::random_state(rng, 2.0);
    const FramedState b = sampling::random_state(rng, 2.0);
    const auto p = params(LawKind::Rectilinear, 1);
    const SE3Element g = se3_compose(se3_inverse(state_to_group(a)), state_to_group(b));
    return std::abs(v_rect_group(g, p) - v_rect(ShapeTriple::from_states(a, b), p)) /
           std::max(1.0, std::abs(v_rect(ShapeTriple::from_states(a, b), p)));
  });
}

void circ_suite(Runner& run, std::size_t n) {
  for (int sign : {1, -1}) {
    const std::string tag = sign > 0 ? "[+]" : "[-]";
    run.at_least("circling inequality " + tag, n, kIneqFloor, [sign](std::size_t, Rng& rng) {
      return circ_inequality_vector(sampling::random_shape(rng), sign);
    });
  }
  run.at_least("circling log argument >= 0", n, kIneqFloor,
               [](std::size_t, Rng& rng) { return circ_log_argument(sampling::random_shape(rng)); });
  run.at_most("V_circ group form equals frame form", n / 10, kIdentity, [](std::size_t, Rng& rng) {
    const FramedState a = sampling::random_state(rng, 2.0);
    const FramedState b = sampling::random_state(rng, 2.0);
    const auto p = params(LawKind::Circling, 1);
    const ShapeTriple s = ShapeTriple::from_states(a, b);
    if (!(circ_log_argument(s) > 0.0)) return 0.0;  // on the boundary both sides are +inf
    const SE3Element g = se3_compose(se3_inverse(state_to_group(a)), state_to_group(b));
    return std::abs(v_circ_group(g, p) - v_circ(s, p)) / std::max(1.0, std::abs(v_circ(s, p)));
  });
}

void algebra_suite(Runner& run, std::size_t n) {
  const std::size_t m = std::max<std::size_t>(n / 10, 1);
  run.at_most("hat(a) v = a x v", m, 1e-14, [](std::size_t, Rng& rng) {
    const Vec3 a = 2.0 * sampling::random_unit(rng), v = 2.0 * sampling::random_unit(rng);
    return (hat(a) * v - a.cross(v)).cwiseAbs().maxCoeff();
  });
  run.at_most("exp one-parameter subgroup", m, kIdentity, [](std::size_t, Rng& rng) {
    const Twist xi{sampling::random_unit(rng) * sampling::uniform(rng, 0.0, 2.0), sampling::random_unit(rng)};
    const double s = sampling::uniform(rng, 0.0, 1.0), t = sampling::uniform(rng, 0.0, 1.0);
    return (se3_exp(xi, s + t).homogeneous() - se3_compose(se3_exp(xi, s), se3_exp(xi, t)).homogeneous())
        .cwiseAbs()
        .maxCoeff();
  });
  run.at_most("adjoint is a homomorphism", m, kIdentity, [](std::size_t, Rng& rng) {
    const SE3Element a = sampling::random_group(rng, 2.0), b = sampling::random_group(rng, 2.0);
    const Twist xi{sampling::random_unit(rng), sampling::random_unit(rng)};
    const Twist l = adjoint(se3_compose(a, b), xi), r = adjoint(a, adjoint(b, xi));
    return std::max((l.omega - r.omega).cwiseAbs().maxCoeff(), (l.linear - r.linear).cwiseAbs().maxCoeff());
  });
  for (LawKind kind : {LawKind::Rectilinear, LawKind::Circling}) {
    const std::string k(to_string(kind));
    run.at_most("group-form controls equal frame form (" + k + ")", m, kIdentity, [kind](std::size_t, Rng& rng) {
      const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
      const auto p = params(kind, 1);
      const auto [f1, f2] = two_vehicle_controls(a, b, p);
      const auto [g1, g2] = group_form_controls(state_to_group(a), state_to_group(b), p);
      return std::max(max_scaled_diff(f1, g1), max_scaled_diff(f2, g2));
    });
    run.at_most("relabeling and (y,z) -> (z,-y) symmetry (" + k + ")", m, kIdentity, [kind](std::size_t, Rng& rng) {
      const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
      const auto p = params(kind, 1);
      const auto [c1, c2] = two_vehicle_controls(a, b, p);
      const auto [d2, d1] = two_vehicle_controls(b, a, p);
      FramedState a_rot = a;
      a_rot.y = a.z;
      a_rot.z = -a.y;
      const auto [e1, e2] = two_vehicle_controls(a_rot, b, p);
      return std::max({max_scaled_diff(c1, d1), max_scaled_diff(c2, d2), std::abs(e1.u - c1.v), std::abs(e1.v + c1.u)});
    });
    run.at_most("gauge and rigid-motion invariance (" + k + ")", m, kIdentity, [kind](std::size_t, Rng& rng) {
      const FramedState a = sampling::random_state(rng, 2.0), b = sampling::random_state(rng, 2.0);
      const auto p = params(kind, 1);
      const auto [c1, c2] = two_vehicle_controls(a, b, p);
      const double ang = sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi);
      FramedState ag = a;
      ag.y = std::cos(ang) * a.y + std::sin(ang) * a.z;
      ag.z = -std::sin(ang) * a.y + std::cos(ang) * a.z;
      const auto [g1, g2] = two_vehicle_controls(ag, b, p);
      const Vec3 steer = c1.u * a.y + c1.v * a.z, steer_g = g1.u * ag.y + g1.v * ag.z;
      const SE3Element h = sampling::random_group(rng, 3.0);
      const FramedState ah = group_to_state(se3_compose(h, state_to_group(a)));
      const FramedState bh = group_to_state(se3_compose(h, state_to_group(b)));
      const auto [h1, h2] = two_vehicle_controls(ah, bh, p);
      const double dv = scaled_diff(lyapunov_value(ShapeTriple::from_states(ah, bh), p),
                                    lyapunov_value(ShapeTriple::from_states(a, b), p));
      const double steer_scale = std::max({1.0, steer.cwiseAbs().maxCoeff(), steer_g.cwiseAbs().maxCoeff()});
      return std::max({(steer - steer_g).cwiseAbs().maxCoeff() / steer_scale, max_scaled_diff(c2, g2), max_scaled_diff(c1, h1),
                       max_scaled_diff(c2, h2), std::isfinite(dv) ? dv : 0.0});
    });
  }
  run.at_most("equilibrium family residual", m, kIdentity, [](std::size_t, Rng& rng) {
    EquilibriumSpec spec;
    spec.w = sampling::uniform(rng, -2.0, 2.0);
    spec.a = sampling::uniform(rng, 0.1, 2.0);
    spec.psi1 = sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi);
    spec.psi2 = sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi);
    spec.theta = sampling::uniform(rng, 0.0, 2.0 * std::numbers::pi);
    spec.b3 = sampling::uniform(rng, -2.0, 2.0);
    const SE3Element g = equilibrium_family(spec);
    const auto [xi1, xi2] = equilibrium_twists(spec);
    const double res = is_shape_equilibrium(g, xi1, xi2, 1.0).residual;
    const double rot = (xi1.omega - g.rotation * xi2.omega).cwiseAbs().maxCoeff();
    const double tr = (g.rotation.col(0) - (hat(xi1.omega) * g.translation + Vec3::UnitX())).cwiseAbs().maxCoeff();
    return std::max({res, rot, tr});
  });
}

}  // namespace

std::vector<PropertyResult> run_verification(std::string_view suite, std::size_t samples, std::uint64_t seed) {
  if (suite != "rect" && suite != "circ" && suite != "algebra" && suite != "all")
    throw ContractError("verify: unknown suite '" + std::string(suite) + "' (rect|circ|algebra|all)");
  std::vector<PropertyResult> out;
  auto run = [&](const char* name, void (*fn)(Runner&, std::size_t)) {
    if (suite != "all" && suite != name) return;
    Runner r(name, seed);
    fn(r, samples);
    for (auto& p : r.take()) out.push_back(std::move(p));
  };
  run("rect", rect_suite);
  run("circ", circ_suite);
  run("algebra", algebra_suite);
  return out;
}

}  // namespace gyroform
