#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gyroform/framed_state.hpp"
#include "gyroform/lie_geom.hpp"

namespace gyroform {

enum class LawKind { None, Rectilinear, Circling };

std::string_view to_string(LawKind kind);
/// Accepts "none", "rectilinear"/"rect", "circling"/"circ". Throws ContractError.
LawKind parse_law_kind(std::string_view text);

/// Distances below this are treated as coincident particles.
inline constexpr double kCollisionDistance = 1e-9;

/// Gains of the steering laws.
///
/// `sign` selects the branch of the baseline term: the rectilinear alignment
/// function carries -sign*eta, the circling one +sign*eta.
struct LawParams {
  double alpha = 1.0;
  double r0 = 1.0;
  double mu = 0.5;
  double eta = 0.4;
  int sign = 1;
  LawKind kind = LawKind::Rectilinear;

  /// alpha > 0, r0 > 0, sign = +-1 and mu > eta/2 > 0. Throws ContractError.
  void validate() const;
  bool operator==(const LawParams&) const = default;
};

/// Default branch for each law kind: +1 (rectilinear) settles on the
/// perpendicular baseline, -1 (circling) on the antipodal circling pair.
int default_sign(LawKind kind);

/// alpha * (1 - (r0/rho)^2). Throws DomainError for rho <= 0.
double f_interaction(double rho, const LawParams& p);

/// Separation potential with dh/drho = f (rectilinear) or f - 2/rho
/// (circling), shifted so that min h = 0.
double h_potential(double rho, const LawParams& p, LawKind kind);

/// Minimizer of h: r0 for the rectilinear potential, the root of
/// f(rho) = 2/rho for the circling one, (1 + sqrt(1 + alpha^2 r0^2)) / alpha.
double potential_minimizer(const LawParams& p, LawKind kind);

/// Rectilinear alignment function
///   -sign*eta (r.xs)(r.n) + mu (xo.n)
/// for unit baseline `r_unit`, own heading `x_self`, own normal `n_self` and
/// the other heading `x_other`. Throws ContractError on non-unit inputs.
double F_rect(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other,
              const LawParams& p);

/// Circling alignment function
///   sign*eta (r.xs)(r.n) + mu [ -xo.n + 2 (r.xo)(r.n) ].
double F_circ(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other,
              const LawParams& p);

/// F for p.kind (zero for LawKind::None).
double alignment_function(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other,
                          const LawParams& p);

/// Steering contribution on one normal of particle `self` from particle
/// `other`:  F(rel, x_self, n_self, x_other) - f(|rel|) (rel/|rel| . n_self),
/// with rel = r_self - r_other. Throws CollisionError when |rel| < 1e-9.
double pair_steering(const Vec3& rel, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other,
                     const LawParams& p);

/// Two-vehicle law (u, v for each vehicle; w = 0).
std::pair<ControlTriple, ControlTriple> two_vehicle_controls(const FramedState& s1, const FramedState& s2,
                                                             const LawParams& p);

/// All-to-all averaged law: u_j = (1/n) sum_{k != j} pair_steering(r_j - r_k, x_j, y_j, x_k),
/// likewise v_j with z_j. Parallel over j when built with OpenMP; results are
/// identical to the serial reference.
std::vector<ControlTriple> n_vehicle_controls(std::span<const FramedState> states, const LawParams& p);
void n_vehicle_controls(std::span<const FramedState> states, const LawParams& p, std::span<ControlTriple> out);

namespace reference {
/// Serial double loop, kept as the oracle for the parallel kernel.
std::vector<ControlTriple> n_vehicle_controls(std::span<const FramedState> states, const LawParams& p);
}  // namespace reference

/// The two-vehicle law written in the entries of g = g1^{-1} g2 and g^{-1}.
/// Throws CollisionError when the relative translation vanishes.
std::pair<ControlTriple, ControlTriple> group_form_controls(const SE3Element& g1, const SE3Element& g2,
                                                            const LawParams& p);

/// Closed-loop law for the simulator: the two-vehicle law when n == 2, the
/// averaged law when n > 2, zero controls for n == 1 or LawKind::None.
FeedbackLaw make_feedback_law(const LawParams& p);

}  // namespace gyroform
