#include "gyroform/framed_state.hpp"

#include <cmath>
#include <string>

#include "gyroform/errors.hpp"

namespace gyroform {

bool FramedState::is_valid(double tol) const {
  if (!r.allFinite() || !x.allFinite() || !y.allFinite() || !z.allFinite()) return false;
  if (std::abs(x.norm() - 1.0) > tol || std::abs(y.norm() - 1.0) > tol || std::abs(z.norm() - 1.0) > tol)
    return false;
  if (std::abs(x.dot(y)) > tol || std::abs(x.dot(z)) > tol || std::abs(y.dot(z)) > tol) return false;
  return (x.cross(y) - z).cwiseAbs().maxCoeff() <= tol;
}

FramedState FramedState::from_heading(const Vec3& position, const Vec3& heading) {
  const double n = heading.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ContractError("from_heading: zero or non-finite heading");
  const Vec3 x = heading / n;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    if (std::abs(e.dot(x)) < 0.9) return from_heading(position, x, e);
  }
  // unreachable: some axis always has |e_i . x| <= 1/sqrt(3)
  throw ContractError("from_heading: no admissible normal");
}

FramedState FramedState::from_heading(const Vec3& position, const Vec3& heading, const Vec3& normal) {
  FramedState s;
  s.r = position;
  s.x = heading.normalized();
  Vec3 y = normal - s.x.dot(normal) * s.x;
  const double n = y.norm();
  if (!(n > 1e-9)) throw ContractError("from_heading: normal is parallel to the heading");
  s.y = y / n;
  s.z = s.x.cross(s.y);
  return s;
}

bool ControlTriple::is_finite() const {
  return std::isfinite(u) && std::isfinite(v) && std::isfinite(w);
}

ControlTriple controls_from_omega(const Vec3& omega) {
  return {omega.z(), -omega.y(), omega.x()};
}

SE3Element state_to_group(const FramedState& s) {
  if (!s.is_valid()) throw InvalidStateError("state_to_group: frame is not orthonormal and right-handed");
  SE3Element g;
  g.rotation.col(0) = s.x;
  g.rotation.col(1) = s.y;
  g.rotation.col(2) = s.z;
  g.translation = s.r;
  return g;
}

FramedState group_to_state(const SE3Element& g) {
  return {g.translation, g.rotation.col(0), g.rotation.col(1), g.rotation.col(2)};
}

FramedState step(const FramedState& s, const ControlTriple& c, double dt) {
  // Unchecked assembly: the integrator is the hot path and keeps frames exact.
  SE3Element g;
  g.rotation.col(0) = s.x;
  g.rotation.col(1) = s.y;
  g.rotation.col(2) = s.z;
  g.translation = s.r;
  return group_to_state(se3_compose(g, se3_exp(c.twist(), dt)));
}

double curvature_magnitude(const ControlTriple& c) { return std::hypot(c.u, c.v); }

std::size_t tick_count(const IntegrationOptions& opts) {
  if (!(opts.dt > 0.0)) throw ContractError("integrate: dt must be positive");
  if (!(opts.duration >= 0.0)) throw ContractError("integrate: duration must be non-negative");
  return static_cast<std::size_t>(std::llround(opts.duration / opts.dt));
}

void integrate_into(Trajectory& out, std::vector<FramedState> states, const FeedbackLaw& law,
                    const IntegrationOptions& opts, const TickObserver& observer) {
  if (states.empty()) throw ContractError("integrate: need at least one particle");
  if (opts.sample_every == 0) throw ContractError("integrate: sample_every must be >= 1");
  const std::size_t ticks = tick_count(opts);
  const std::size_t n = states.size();

  out.particles = n;
  out.dt = opts.dt;
  out.samples.clear();
  out.samples.reserve(ticks / opts.sample_every + 2);

  std::vector<ControlTriple> controls(n);
  for (std::size_t tick = 0;; ++tick) {
    const double t = static_cast<double>(tick) * opts.dt;
    std::fill(controls.begin(), controls.end(), ControlTriple{});
    law(states, controls);
    for (std::size_t i = 0; i < n; ++i) {
      if (!controls[i].is_finite())
        throw NonFiniteError(tick, "law returned a non-finite control for particle " + std::to_string(i));
    }
    if (observer) observer(tick, t, states);
    if (tick % opts.sample_every == 0 || tick == ticks) out.samples.push_back({tick, t, states, controls});
    if (tick == ticks) break;

    for (std::size_t i = 0; i < n; ++i) states[i] = step(states[i], controls[i], opts.dt);
  }
}

Trajectory integrate(std::vector<FramedState> initial, const FeedbackLaw& law,
                     const IntegrationOptions& opts, const TickObserver& observer) {
  Trajectory traj;
  integrate_into(traj, std::move(initial), law, opts, observer);
  return traj;
}

FeedbackLaw zero_law() {
  return [](std::span<const FramedState>, std::span<ControlTriple> out) {
    for (auto& c : out) c = {};
  };
}

FeedbackLaw constant_law(std::vector<ControlTriple> controls) {
  return [controls = std::move(controls)](std::span<const FramedState> states, std::span<ControlTriple> out) {
    if (controls.size() != states.size()) throw ContractError("constant_law: control count does not match particle count");
    std::copy(controls.begin(), controls.end(), out.begin());
  };
}

}  // namespace gyroform
