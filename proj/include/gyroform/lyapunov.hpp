#pragma once

#include "gyroform/control_laws.hpp"
#include "gyroform/framed_state.hpp"
#include "gyroform/lie_geom.hpp"

namespace gyroform {

/// Reduced two-vehicle state: r = r2 - r1 and the two headings.
struct ShapeTriple {
  Vec3 r;
  Vec3 x1;
  Vec3 x2;

  static ShapeTriple from_states(const FramedState& s1, const FramedState& s2) { return {s2.r - s1.r, s1.x, s2.x}; }
};

// The Lyapunov functions return +infinity on the boundary of their domain
// (|r| = 0 or a non-positive log argument) so sublevel comparisons stay ordered.

/// -ln(1 + x2.x1) + h_rect(|r|).
double v_rect(const ShapeTriple& s, const LawParams& p);

/// 1 - x2.x1 + 2 (r.x2)(r.x1) with r the unit baseline. Always >= 0.
double circ_log_argument(const ShapeTriple& s);

/// -ln(circ_log_argument) + h_circ(|r|).
double v_circ(const ShapeTriple& s, const LawParams& p);

/// v_rect or v_circ according to p.kind; zero for LawKind::None.
double lyapunov_value(const ShapeTriple& s, const LawParams& p);

/// Time derivative of V_rect along the closed loop, written in terms of the
/// alignment function only (the separation terms cancel):
///   -1/(1 + x1.x2) [ (x1.y2) F(r, x2, y2, x1) + (x2.y1) F(-r, x1, y1, x2)
///                   + (x1.z2) F(r, x2, z2, x1) + (x2.z1) F(-r, x1, z1, x2) ].
double vdot_rect_analytic(const FramedState& s1, const FramedState& s2, const LawParams& p);

/// Same, asserting that `s` agrees with the headings and baseline of the
/// frames (ContractError otherwise).
double vdot_rect_analytic(const ShapeTriple& s, const FramedState& s1, const FramedState& s2, const LawParams& p);

/// Angle form: sin(d) [sin(d) + sign/2 (sin 2 phi2 - sin 2 phi1)], d = phi2 - phi1.
double rect_inequality(double phi1, double phi2, int sign);

/// Vector form:
///   1 - (x1.x2)^2 + sign { (x1.x2) [(r.x1)^2 + (r.x2)^2] - 2 (r.x1)(r.x2) }.
double rect_inequality_vector(const ShapeTriple& s, int sign);

/// Frame form, the four-term sum over the normals of both vehicles with the
/// baseline term weighted by -sign. Algebraically equal to the vector form.
double rect_inequality_frames(const FramedState& s1, const FramedState& s2, int sign);

/// 1 - B^2 + sign { x1.x2 + B [1 - (r.x1)^2 - (r.x2)^2] },  B = -x1.x2 + 2 (r.x1)(r.x2).
double circ_inequality_vector(const ShapeTriple& s, int sign);

/// Planar angles for the vector form: phi_i with sin(phi_i) = p.x_i where p is
/// the normalized projection of the baseline onto span(x1, x2). Also returns
/// the squared length of that projection. Requires x1 != +-x2.
struct PlanarAngles {
  double phi1;
  double phi2;
  double in_plane_fraction;  // |projection|^2, in [0, 1]
};
PlanarAngles planar_angles(const ShapeTriple& s);

/// -ln(1 + g11) + h_rect(r) with r the translation norm of g = g1^{-1} g2.
double v_rect_group(const SE3Element& g, const LawParams& p);
/// -ln(1 - g11 - 2 g14 g^14 / r^2) + h_circ(r).
double v_circ_group(const SE3Element& g, const LawParams& p);

}  // namespace gyroform
