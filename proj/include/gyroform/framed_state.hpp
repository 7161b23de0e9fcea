#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gyroform/lie_geom.hpp"

namespace gyroform {

/// Position and natural Frenet frame (x tangent, y and z normals) of one
/// unit-speed particle.
struct FramedState {
  Vec3 r = Vec3::Zero();
  Vec3 x = Vec3::UnitX();
  Vec3 y = Vec3::UnitY();
  Vec3 z = Vec3::UnitZ();

  bool is_valid(double tol = tolerance::kFrame) const;

  /// Completes a frame from a heading: y is the first basis vector e_i with
  /// |e_i . x| < 0.9, made orthogonal to x; z = x cross y.
  static FramedState from_heading(const Vec3& position, const Vec3& heading);
  /// Uses an explicit first normal (projected orthogonal to the heading).
  static FramedState from_heading(const Vec3& position, const Vec3& heading, const Vec3& normal);
};

/// Curvature controls: u steers toward y, v toward z, w twists the frame
/// about x (zero for the natural frame). Body angular velocity is (w, -v, u).
struct ControlTriple {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  Vec3 omega() const { return {w, -v, u}; }
  Twist twist() const { return Twist::particle(omega()); }
  bool is_finite() const;
};

/// Inverse of ControlTriple::omega().
ControlTriple controls_from_omega(const Vec3& omega);

/// Rotation columns (x, y, z), translation r. Throws InvalidStateError if the
/// frame is not orthonormal and right-handed within 1e-9.
SE3Element state_to_group(const FramedState& s);
FramedState group_to_state(const SE3Element& g);

/// One Lie-group Euler step: g <- g exp(dt * xi(c)).
FramedState step(const FramedState& s, const ControlTriple& c, double dt);

/// sqrt(u^2 + v^2).
double curvature_magnitude(const ControlTriple& c);

/// Fills one ControlTriple per particle from the full state list.
using FeedbackLaw = std::function<void(std::span<const FramedState>, std::span<ControlTriple>)>;

/// Called at tick 0 and after every step with the current states.
using TickObserver = std::function<void(std::size_t tick, double t, std::span<const FramedState>)>;

struct Sample {
  std::size_t tick = 0;
  double t = 0.0;
  std::vector<FramedState> states;
  std::vector<ControlTriple> controls;  // law evaluated at `states`
};

struct Trajectory {
  std::size_t particles = 0;
  double dt = 0.0;
  std::vector<Sample> samples;

  bool empty() const { return samples.empty(); }
  const Sample& back() const { return samples.back(); }
};

struct IntegrationOptions {
  double dt = 1e-3;
  double duration = 0.0;
  std::size_t sample_every = 10;
};

/// Number of fixed steps used for `duration` at step `dt`.
std::size_t tick_count(const IntegrationOptions& opts);

/// Fixed-step closed loop. Controls are evaluated once per tick at the tick
/// start and all particles are advanced simultaneously. Samples are kept at
/// every `sample_every`-th tick and at the final tick. Throws NonFiniteError if
/// the law returns a non-finite control.
Trajectory integrate(std::vector<FramedState> initial, const FeedbackLaw& law,
                     const IntegrationOptions& opts, const TickObserver& observer = {});

/// Same as integrate() but writes into `out` as it goes, so a caller that
/// catches an exception still holds the samples recorded before it.
void integrate_into(Trajectory& out, std::vector<FramedState> initial, const FeedbackLaw& law,
                    const IntegrationOptions& opts, const TickObserver& observer = {});

/// Law that returns zero controls for every particle.
FeedbackLaw zero_law();
/// Law that applies the same fixed controls to particle i at every tick.
FeedbackLaw constant_law(std::vector<ControlTriple> controls);

}  // namespace gyroform
