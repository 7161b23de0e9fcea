#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gyroform/lie_geom.hpp"

namespace gyroform {

/// Parameters of the relative-equilibrium family. Both particles share the
/// twist rate `w` and curvature magnitude `a`; psi1/psi2 are the normal-plane
/// phases of each particle's angular velocity, theta and b3 the free rotation
/// and axial offset of the shape.
struct EquilibriumSpec {
  double w = 0.0;
  double a = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
  double theta = 0.0;
  double b3 = 0.0;
  /// Relative position used only when w = a = 0 (any offset is an equilibrium there).
  Vec3 offset = Vec3::Zero();
};

enum class FormationClass { Rectilinear, Circling, Collinear, Helical };

std::string_view to_string(FormationClass c);

/// Zero test used by classify().
inline constexpr double kClassifyZero = 1e-12;

/// xi = xi2 - Ad_{g^{-1}} xi1, so that d/dt g = g xi.
Twist shape_velocity(const SE3Element& g, const Twist& xi1, const Twist& xi2);

struct EquilibriumCheck {
  bool is_equilibrium;
  double residual;  // Frobenius norm of g xi2 - xi1 g (4x4)
};

EquilibriumCheck is_shape_equilibrium(const SE3Element& g, const Twist& xi1, const Twist& xi2, double tol);

/// Body angular velocity (w, a sin psi, a cos psi). Throws ContractError for a < 0.
Vec3 omega_from_polar(double w, double a, double psi);

/// The two particle twists of a spec (linear part e1 for both).
std::pair<Twist, Twist> equilibrium_twists(const EquilibriumSpec& spec);

/// Constructs the shape g_e. For a^2 + w^2 > 0 this is the five-factor product
///   (R_psi1^T|0)(R_phi^T|0)(R_theta|b~)(R_phi|0)(R_psi2|0),
/// with b~ = (k sin(theta), k (1 - cos(theta)), b3), k = a / (a^2 + w^2) and
/// phi = atan2(w, a). For w = a = 0 it is (rot_x(theta) | offset).
SE3Element equilibrium_family(const EquilibriumSpec& spec);

/// Rectilinear (0,0), Circling (0,a), Collinear (w,0), Helical (w,a).
FormationClass classify(double w, double a);

struct HelixGeometry {
  double radius;      // a / (a^2 + w^2)
  double pitch_rate;  // axial advance per unit arc length, w / sqrt(a^2 + w^2)
  Vec3 axis;          // unit axis in body coordinates (psi = 0)
};

/// Throws DomainError when a = w = 0.
HelixGeometry helix_geometry(double w, double a);
/// Axis in body coordinates for a given normal-plane phase psi.
Vec3 helix_axis(double w, double a, double psi);

/// g~_j = g_1^{-1} g_j for j = 2..n. Throws ContractError for n < 2.
std::vector<SE3Element> reduce_shapes(std::span<const SE3Element> groups);

/// (R_psi1^T|0) g~ (R_psi2|0).
SE3Element gauge_family(const SE3Element& g_tilde, double psi1, double psi2);

}  // namespace gyroform
