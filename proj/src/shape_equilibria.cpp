#include "gyroform/shape_equilibria.hpp"

#include <cmath>

#include "gyroform/errors.hpp"

namespace gyroform {

namespace {
SE3Element pure_rotation(const Mat3& r) { return {r, Vec3::Zero()}; }
}  // namespace

std::string_view to_string(FormationClass c) {
  switch (c) {
    case FormationClass::Rectilinear:
      return "Rectilinear";
    case FormationClass::Circling:
      return "Circling";
    case FormationClass::Collinear:
      return "Collinear";
    case FormationClass::Helical:
      return "Helical";
  }
  return "Rectilinear";
}

Twist shape_velocity(const SE3Element& g, const Twist& xi1, const Twist& xi2) {
  const Twist pulled = adjoint(se3_inverse(g), xi1);
  return {xi2.omega - pulled.omega, xi2.linear - pulled.linear};
}

EquilibriumCheck is_shape_equilibrium(const SE3Element& g, const Twist& xi1, const Twist& xi2, double tol) {
  if (!(tol > 0.0)) throw ContractError("is_shape_equilibrium: tol must be positive");
  const Mat4 G = g.homogeneous();
  const double residual = (G * xi2.matrix() - xi1.matrix() * G).norm();
  return {residual <= tol, residual};
}

Vec3 omega_from_polar(double w, double a, double psi) {
  if (!(a >= 0.0)) throw ContractError("omega_from_polar: a must be non-negative");
  return {w, a * std::sin(psi), a * std::cos(psi)};
}

std::pair<Twist, Twist> equilibrium_twists(const EquilibriumSpec& spec) {
  return {Twist::particle(omega_from_polar(spec.w, spec.a, spec.psi1)),
          Twist::particle(omega_from_polar(spec.w, spec.a, spec.psi2))};
}

SE3Element equilibrium_family(const EquilibriumSpec& spec) {
  if (!(spec.a >= 0.0)) throw ContractError("equilibrium_family: a must be non-negative");
  const double s2 = spec.a * spec.a + spec.w * spec.w;
  if (s2 == 0.0) return {rot_x(spec.theta), spec.offset};

  const double s = std::sqrt(s2);
  const double phi = std::atan2(spec.w / s, spec.a / s);
  const double k = spec.a / s2;
  const Vec3 b_tilde(k * std::sin(spec.theta), k * (1.0 - std::cos(spec.theta)), spec.b3);

  const Mat3 r_phi = rot_y_neg(phi);
  SE3Element g = pure_rotation(rot_x(spec.psi1).transpose());
  g = se3_compose(g, pure_rotation(r_phi.transpose()));
  g = se3_compose(g, SE3Element{rot_z(spec.theta), b_tilde});
  g = se3_compose(g, pure_rotation(r_phi));
  return se3_compose(g, pure_rotation(rot_x(spec.psi2)));
}

FormationClass classify(double w, double a) {
  if (!(a >= 0.0)) throw ContractError("classify: a must be non-negative");
  const bool w_zero = std::abs(w) <= kClassifyZero;
  const bool a_zero = a <= kClassifyZero;
  if (w_zero) return a_zero ? FormationClass::Rectilinear : FormationClass::Circling;
  return a_zero ? FormationClass::Collinear : FormationClass::Helical;
}

Vec3 helix_axis(double w, double a, double psi) {
  const double s = std::hypot(a, w);
  if (!(s > 0.0)) throw DomainError("helix_axis: undefined for a = w = 0");
  return omega_from_polar(w, a, psi) / s;
}

HelixGeometry helix_geometry(double w, double a) {
  if (!(a >= 0.0)) throw ContractError("helix_geometry: a must be non-negative");
  const double s2 = a * a + w * w;
  if (!(s2 > 0.0)) throw DomainError("helix_geometry: undefined for a = w = 0 (rectilinear)");
  return {a / s2, w / std::sqrt(s2), helix_axis(w, a, 0.0)};
}

std::vector<SE3Element> reduce_shapes(std::span<const SE3Element> groups) {
  if (groups.size() < 2) throw ContractError("reduce_shapes: need at least two group elements");
  const SE3Element inv1 = se3_inverse(groups[0]);
  std::vector<SE3Element> out;
  out.reserve(groups.size() - 1);
  for (std::size_t j = 1; j < groups.size(); ++j) out.push_back(se3_compose(inv1, groups[j]));
  return out;
}

SE3Element gauge_family(const SE3Element& g_tilde, double psi1, double psi2) {
  return se3_compose(se3_compose(pure_rotation(rot_x(psi1).transpose()), g_tilde), pure_rotation(rot_x(psi2)));
}

}  // namespace gyroform
