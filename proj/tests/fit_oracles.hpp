#pragma once
// Least-squares geometry fits used as independent oracles by the tests.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace fit {

struct Circle3 {
  Eigen::Vector3d centre;
  Eigen::Vector3d normal;
  double radius = 0.0;
  double max_relative_deviation = 0.0;  // max over points of distance-to-circle / radius
};

// Algebraic (Kasa) circle fit in the plane spanned by (u, v) through `origin`.
inline void kasa(const std::vector<Eigen::Vector3d>& pts, const Eigen::Vector3d& origin, const Eigen::Vector3d& u,
                 const Eigen::Vector3d& v, double& cu, double& cv, double& radius) {
  Eigen::MatrixXd A(pts.size(), 3);
  Eigen::VectorXd b(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = (pts[i] - origin).dot(u), y = (pts[i] - origin).dot(v);
    A(i, 0) = x;
    A(i, 1) = y;
    A(i, 2) = 1.0;
    b(i) = x * x + y * y;
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(b);
  cu = sol(0) / 2.0;
  cv = sol(1) / 2.0;
  radius = std::sqrt(sol(2) + cu * cu + cv * cv);
}

// Plane by principal components, circle by Kasa fit within it.
inline Circle3 fit_circle(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= double(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Eigen::Vector3d n = es.eigenvectors().col(0), u = es.eigenvectors().col(2), v = es.eigenvectors().col(1);
  Circle3 c;
  double cu, cv;
  kasa(pts, mean, u, v, cu, cv, c.radius);
  c.centre = mean + cu * u + cv * v;
  c.normal = n;
  for (const auto& p : pts) {
    const Eigen::Vector3d d = p - c.centre;
    const double axial = d.dot(n);
    const double radial = (d - axial * n).norm();
    c.max_relative_deviation = std::max(c.max_relative_deviation, std::hypot(radial - c.radius, axial) / c.radius);
  }
  return c;
}

struct Helix {
  Eigen::Vector3d axis;
  double radius = 0.0;
  double max_axis_distance_error = 0.0;  // max |distance from fitted axis - radius|
};

// Axis from the second differences (which lie in the plane normal to the axis
// for evenly spaced helix samples), radius from a circle fit of the points
// projected along the axis.
inline Helix fit_helix(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Eigen::Vector3d d2 = pts[i + 1] - 2.0 * pts[i] + pts[i - 1];
    scatter += d2 * d2.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scatter);
  Helix h;
  h.axis = es.eigenvectors().col(0);
  const Eigen::Vector3d u = es.eigenvectors().col(2), v = es.eigenvectors().col(1);
  double cu, cv;
  kasa(pts, pts.front(), u, v, cu, cv, h.radius);
  const Eigen::Vector3d centre = pts.front() + cu * u + cv * v;
  for (const auto& p : pts) {
    const Eigen::Vector3d d = p - centre;
    h.max_axis_distance_error = std::max(h.max_axis_distance_error, std::abs((d - d.dot(h.axis) * h.axis).norm() - h.radius));
  }
  return h;
}

}  // namespace fit
