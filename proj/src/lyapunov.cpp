#include "gyroform/lyapunov.hpp"

#include <cmath>
#include <limits>

#include "gyroform/errors.hpp"

namespace gyroform {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double heading_term(double arg) { return arg > 0.0 ? -std::log(arg) : kInf; }

// Log arguments are evaluated as half squared norms: for unit a, b,
// 1 + a.b = |a + b|^2 / 2, which keeps full relative precision near the pole
// where the dot-product form cancels.

}  // namespace

double v_rect(const ShapeTriple& s, const LawParams& p) {
  const double d = s.r.norm();
  if (!(d > 0.0)) return kInf;
  return heading_term(0.5 * (s.x1 + s.x2).squaredNorm()) + h_potential(d, p, LawKind::Rectilinear);
}

double circ_log_argument(const ShapeTriple& s) {
  const double d = s.r.norm();
  if (!(d > 0.0)) return 0.0;
  const Vec3 rh = s.r / d;
  // 1 - x1.x2 + 2 (r.x1)(r.x2) = 1 + x1.(H x2), H the half-turn about r
  const Vec3 turned = 2.0 * rh.dot(s.x2) * rh - s.x2;
  return 0.5 * (s.x1 + turned).squaredNorm();
}

double v_circ(const ShapeTriple& s, const LawParams& p) {
  const double d = s.r.norm();
  if (!(d > 0.0)) return kInf;
  return heading_term(circ_log_argument(s)) + h_potential(d, p, LawKind::Circling);
}

double lyapunov_value(const ShapeTriple& s, const LawParams& p) {
  switch (p.kind) {
    case LawKind::Rectilinear:
      return v_rect(s, p);
    case LawKind::Circling:
      return v_circ(s, p);
    case LawKind::None:
      break;
  }
  return 0.0;
}

double vdot_rect_analytic(const FramedState& s1, const FramedState& s2, const LawParams& p) {
  const Vec3 r = s2.r - s1.r;
  const double d = r.norm();
  const double c = s1.x.dot(s2.x);
  if (!(d > 0.0) || !(1.0 + c > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  LawParams rect = p;
  rect.kind = LawKind::Rectilinear;
  const Vec3 rh = r / d;
  const Vec3 mrh = -rh;
  const double bracket = s1.x.dot(s2.y) * F_rect(rh, s2.x, s2.y, s1.x, rect) +
                         s2.x.dot(s1.y) * F_rect(mrh, s1.x, s1.y, s2.x, rect) +
                         s1.x.dot(s2.z) * F_rect(rh, s2.x, s2.z, s1.x, rect) +
                         s2.x.dot(s1.z) * F_rect(mrh, s1.x, s1.z, s2.x, rect);
  return -bracket / (1.0 + c);
}

double vdot_rect_analytic(const ShapeTriple& s, const FramedState& s1, const FramedState& s2, const LawParams& p) {
  constexpr double kMatch = 1e-9;
  const double scale = 1.0 + s.r.norm();
  if ((s.x1 - s1.x).norm() > kMatch || (s.x2 - s2.x).norm() > kMatch || (s.r - (s2.r - s1.r)).norm() > kMatch * scale)
    throw ContractError("vdot_rect_analytic: shape does not match the frames");
  return vdot_rect_analytic(s1, s2, p);
}

double rect_inequality(double phi1, double phi2, int sign) {
  const double sd = std::sin(phi2 - phi1);
  return sd * (sd + 0.5 * sign * (std::sin(2.0 * phi2) - std::sin(2.0 * phi1)));
}

double rect_inequality_vector(const ShapeTriple& s, int sign) {
  const Vec3 rh = s.r.normalized();
  const double c = s.x1.dot(s.x2);
  const double a1 = rh.dot(s.x1);
  const double a2 = rh.dot(s.x2);
  return (1.0 - c * c) + sign * (c * (a1 * a1 + a2 * a2) - 2.0 * a1 * a2);
}

double rect_inequality_frames(const FramedState& s1, const FramedState& s2, int sign) {
  const Vec3 rh = (s2.r - s1.r).normalized();
  // sign multiplies the "minus" branch of the baseline term.
  auto term = [&](const Vec3& x_self, const Vec3& n_other, const Vec3& x_other) {
    const double k = x_self.dot(n_other);
    return k * (0.5 * k - sign * rh.dot(x_other) * rh.dot(n_other));
  };
  return term(s1.x, s2.y, s2.x) + term(s2.x, s1.y, s1.x) + term(s1.x, s2.z, s2.x) + term(s2.x, s1.z, s1.x);
}

double circ_inequality_vector(const ShapeTriple& s, int sign) {
  const Vec3 rh = s.r.normalized();
  const double c = s.x1.dot(s.x2);
  const double a1 = rh.dot(s.x1);
  const double a2 = rh.dot(s.x2);
  const double b = -c + 2.0 * a1 * a2;
  return 1.0 - b * b + sign * (c + b * (1.0 - a1 * a1 - a2 * a2));
}

PlanarAngles planar_angles(const ShapeTriple& s) {
  const Vec3 rh = s.r.normalized();
  // Orthonormal basis (e1, e2) of span(x1, x2).
  const Vec3 e1 = s.x1;
  Vec3 e2 = s.x2 - s.x1.dot(s.x2) * s.x1;
  const double n2 = e2.norm();
  if (!(n2 > 1e-12)) throw ContractError("planar_angles: headings are parallel");
  e2 /= n2;
  Vec3 proj = rh.dot(e1) * e1 + rh.dot(e2) * e2;
  const double frac = proj.squaredNorm();
  if (!(frac > 0.0)) {
    // Any in-plane direction works; the vector form no longer depends on it.
    proj = e1;
  } else {
    proj /= std::sqrt(frac);
  }
  // In-plane basis with proj as the "sine" axis.
  const Vec3 normal = e1.cross(e2);
  const Vec3 cosine_axis = normal.cross(proj);
  return {std::atan2(proj.dot(s.x1), cosine_axis.dot(s.x1)), std::atan2(proj.dot(s.x2), cosine_axis.dot(s.x2)),
          frac};
}

double v_rect_group(const SE3Element& g, const LawParams& p) {
  const double r = g.translation.norm();
  if (!(r > 0.0)) return kInf;
  // 1 + g11 = ((1 + g11)^2 + g21^2 + g31^2) / 2
  const Mat3& Q = g.rotation;
  const double arg = 0.5 * ((1.0 + Q(0, 0)) * (1.0 + Q(0, 0)) + Q(1, 0) * Q(1, 0) + Q(2, 0) * Q(2, 0));
  return heading_term(arg) + h_potential(r, p, LawKind::Rectilinear);
}

double v_circ_group(const SE3Element& g, const LawParams& p) {
  const double r = g.translation.norm();
  if (!(r > 0.0)) return kInf;
  const SE3Element gi = se3_inverse(g);
  // 1 - g11 - 2 g14 g^14 / r^2 is the first entry of e1 - g_{.1} - 2 g^14 g_{.4} / r^2,
  // a vector of length^2 twice that value.
  const double k = 2.0 * gi.translation(0) / (r * r);
  const Vec3 w(1.0 - g.rotation(0, 0) - k * g.translation(0), -g.rotation(1, 0) - k * g.translation(1),
               -g.rotation(2, 0) - k * g.translation(2));
  return heading_term(0.5 * w.squaredNorm()) + h_potential(r, p, LawKind::Circling);
}

}  // namespace gyroform
