#include "gyroform/lie_geom.hpp"

#include <cmath>
#include <sstream>

#include "gyroform/errors.hpp"

namespace gyroform {

CollisionError::CollisionError(std::size_t first, std::size_t second, double distance)
    : Error([&] {
        std::ostringstream os;
        os << "collision between particles " << first << " and " << second
           << " (distance " << distance << ")";
        return os.str();
      }()),
      first_(first),
      second_(second),
      distance_(distance) {}

NonFiniteError::NonFiniteError(std::size_t tick, const std::string& what)
    : Error("tick " + std::to_string(tick) + ": " + what), tick_(tick) {}

ConfigError::ConfigError(const std::string& what, int line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

SE3Element SE3Element::from_homogeneous(const Mat4& m) {
  SE3Element g;
  g.rotation = m.topLeftCorner<3, 3>();
  g.translation = m.topRightCorner<3, 1>();
  return g;
}

Mat4 SE3Element::homogeneous() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation;
  m.topRightCorner<3, 1>() = translation;
  return m;
}

bool SE3Element::is_valid(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite()) return false;
  return orthonormality_defect(rotation) <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
}

Mat4 Twist::matrix() const {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<3, 3>() = hat(omega);
  m.topRightCorner<3, 1>() = linear;
  return m;
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

SE3Element se3_compose(const SE3Element& a, const SE3Element& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

SE3Element se3_inverse(const SE3Element& g) {
  Mat3 rt = g.rotation.transpose();
  return {rt, -(rt * g.translation)};
}

Twist adjoint(const SE3Element& g, const Twist& xi) {
  Vec3 w = g.rotation * xi.omega;
  return {w, g.rotation * xi.linear + g.translation.cross(w)};
}

SE3Element se3_exp(const Twist& xi, double t) {
  const Vec3 phi = t * xi.omega;
  const Vec3 rho = t * xi.linear;
  const double theta2 = phi.squaredNorm();
  const double theta = std::sqrt(theta2);

  // R = I + A K + B K^2,  V = I + B K + C K^2
  double A, B, C;
  if (theta < tolerance::kExpTaylor) {
    A = 1.0 - theta2 / 6.0;
    B = 0.5 - theta2 / 24.0;
    C = 1.0 / 6.0 - theta2 / 120.0;
  } else {
    const double s = std::sin(theta);
    const double half = std::sin(0.5 * theta);
    A = s / theta;
    B = 2.0 * half * half / theta2;  // 1 - cos without cancellation
    C = (theta - s) / (theta2 * theta);
  }
  const Mat3 K = hat(phi);
  const Mat3 K2 = K * K;
  SE3Element g;
  g.rotation = Mat3::Identity() + A * K + B * K2;
  g.translation = rho + B * (K * rho) + C * (K2 * rho);
  return g;
}

Mat3 rot_x(double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  Mat3 m;
  m << 1.0, 0.0, 0.0,
       0.0, c, -s,
       0.0, s, c;
  return m;
}

Mat3 rot_y_neg(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat3 m;
  m << c, 0.0, -s,
       0.0, 1.0, 0.0,
       s, 0.0, c;
  return m;
}

Mat3 rot_z(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat3 m;
  m << c, -s, 0.0,
       s, c, 0.0,
       0.0, 0.0, 1.0;
  return m;
}

Mat3 orthonormalize(const Mat3& frame) {
  constexpr double kNear = 1e-3;
  if (!frame.allFinite()) throw InvalidStateError("orthonormalize: non-finite frame");
  for (int i = 0; i < 3; ++i) {
    if (std::abs(frame.col(i).norm() - 1.0) > kNear)
      throw InvalidStateError("orthonormalize: column " + std::to_string(i) + " is not near unit length");
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(frame.col(i).dot(frame.col(j))) > kNear)
        throw InvalidStateError("orthonormalize: columns are not near orthogonal");
  }
  Vec3 x = frame.col(0).normalized();
  Vec3 y = frame.col(1) - x.dot(frame.col(1)) * x;
  y.normalize();
  Vec3 z = x.cross(y);
  if (z.dot(frame.col(2)) <= 0.0) throw InvalidStateError("orthonormalize: left-handed frame");
  Mat3 out;
  out.col(0) = x;
  out.col(1) = y;
  out.col(2) = z;
  return out;
}

double orthonormality_defect(const Mat3& rotation) {
  return (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace gyroform
