#pragma once

// SO(3) / SE(3) kernel. Rotations are kept as full 3x3 matrices throughout.

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gyroform {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

namespace tolerance {
inline constexpr double kAlgebra = 1e-12;   // algebraic identities
inline constexpr double kFrame = 1e-9;      // frame / rotation validity
inline constexpr double kExpTaylor = 1e-6;  // |t*omega| below this uses series
}  // namespace tolerance

/// Rigid motion (R | t), acting as p -> R p + t.
struct SE3Element {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static SE3Element identity() { return {}; }
  static SE3Element from_homogeneous(const Mat4& m);

  Mat4 homogeneous() const;
  /// Checks R^T R = I and det R = 1 within `tol`.
  bool is_valid(double tol = tolerance::kFrame) const;
};

/// Element of se(3): angular part omega and linear velocity.
struct Twist {
  Vec3 omega = Vec3::Zero();
  Vec3 linear = Vec3::Zero();

  /// Twist of a unit-speed particle: linear part is e1.
  static Twist particle(const Vec3& omega) { return {omega, Vec3::UnitX()}; }

  /// 4x4 matrix form [hat(omega) linear; 0 0].
  Mat4 matrix() const;
};

Mat3 hat(const Vec3& v);

SE3Element se3_compose(const SE3Element& a, const SE3Element& b);
SE3Element se3_inverse(const SE3Element& g);

/// Ad_g xi = g xi g^{-1}.
Twist adjoint(const SE3Element& g, const Twist& xi);

/// exp(t * xi) in closed form (Rodrigues rotation plus screw translation).
SE3Element se3_exp(const Twist& xi, double t);

/// Rotation about e1 by psi.
Mat3 rot_x(double psi);
/// The phi-rotation used by the equilibrium decomposition. Entries are
/// [[c,0,-s],[0,1,0],[s,0,c]], i.e. a rotation about e2 by -phi.
Mat3 rot_y_neg(double phi);
/// Rotation about e3 by theta.
Mat3 rot_z(double theta);

/// Gram-Schmidt on the columns in order x, y and z = x cross y. Throws
/// InvalidStateError when the input is not within 1e-3 of orthonormal or is
/// left-handed.
Mat3 orthonormalize(const Mat3& frame);

/// max |R^T R - I| entry.
double orthonormality_defect(const Mat3& rotation);

}  // namespace gyroform
