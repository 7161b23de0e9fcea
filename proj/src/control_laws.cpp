#include "gyroform/control_laws.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gyroform/errors.hpp"

namespace gyroform {

namespace {

constexpr double kUnitTol = 1e-6;

void require_unit(const Vec3& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > kUnitTol)
    throw ContractError(std::string("alignment function: ") + name + " is not a unit vector");
}

void check_alignment_inputs(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other) {
  require_unit(r_unit, "baseline direction");
  require_unit(x_self, "own heading");
  require_unit(n_self, "own normal");
  require_unit(x_other, "other heading");
  if (std::abs(x_self.dot(n_self)) > kUnitTol)
    throw ContractError("alignment function: normal is not perpendicular to the heading");
}

double F_rect_unchecked(const Vec3& r, const Vec3& xs, const Vec3& n, const Vec3& xo, const LawParams& p) {
  return -p.sign * p.eta * r.dot(xs) * r.dot(n) + p.mu * xo.dot(n);
}

double F_circ_unchecked(const Vec3& r, const Vec3& xs, const Vec3& n, const Vec3& xo, const LawParams& p) {
  const double rn = r.dot(n);
  return p.sign * p.eta * r.dot(xs) * rn + p.mu * (-xo.dot(n) + 2.0 * r.dot(xo) * rn);
}

double F_unchecked(const Vec3& r, const Vec3& xs, const Vec3& n, const Vec3& xo, const LawParams& p) {
  switch (p.kind) {
    case LawKind::Rectilinear:
      return F_rect_unchecked(r, xs, n, xo, p);
    case LawKind::Circling:
      return F_circ_unchecked(r, xs, n, xo, p);
    case LawKind::None:
      break;
  }
  return 0.0;
}

double f_unchecked(double rho, const LawParams& p) {
  const double q = p.r0 / rho;
  return p.alpha * (1.0 - q * q);
}

struct PairSteer {
  double u;
  double v;
};

// Contribution of `other` on both normals of `self`.
PairSteer steer_pair(const FramedState& self, const FramedState& other, const LawParams& p, std::size_t i,
                     std::size_t j) {
  const Vec3 rel = self.r - other.r;
  const double d = rel.norm();
  if (!(d >= kCollisionDistance)) throw CollisionError(i, j, d);
  if (p.kind == LawKind::None) return {0.0, 0.0};
  const Vec3 rh = rel / d;
  const double f = f_unchecked(d, p);
  return {F_unchecked(rh, self.x, self.y, other.x, p) - f * rh.dot(self.y),
          F_unchecked(rh, self.x, self.z, other.x, p) - f * rh.dot(self.z)};
}

}  // namespace

std::string_view to_string(LawKind kind) {
  switch (kind) {
    case LawKind::None:
      return "none";
    case LawKind::Rectilinear:
      return "rectilinear";
    case LawKind::Circling:
      return "circling";
  }
  return "none";
}

LawKind parse_law_kind(std::string_view text) {
  if (text == "none") return LawKind::None;
  if (text == "rectilinear" || text == "rect") return LawKind::Rectilinear;
  if (text == "circling" || text == "circ") return LawKind::Circling;
  throw ContractError("unknown law kind '" + std::string(text) + "'");
}

void LawParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ContractError("alpha must be positive");
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw ContractError("r0 must be positive");
  if (sign != 1 && sign != -1) throw ContractError("sign must be +1 or -1");
  if (!std::isfinite(mu) || !std::isfinite(eta) || !(eta > 0.0) || !(mu > 0.5 * eta)) {
    std::ostringstream os;
    os << "A4 violated: need mu > eta/2 > 0 (mu = " << mu << ", eta = " << eta << ")";
    throw ContractError(os.str());
  }
}

int default_sign(LawKind kind) { return kind == LawKind::Circling ? -1 : 1; }

double f_interaction(double rho, const LawParams& p) {
  if (!(rho > 0.0)) throw DomainError("f_interaction: rho must be positive");
  return f_unchecked(rho, p);
}

double potential_minimizer(const LawParams& p, LawKind kind) {
  if (kind == LawKind::Circling) return (1.0 + std::sqrt(1.0 + p.alpha * p.alpha * p.r0 * p.r0)) / p.alpha;
  return p.r0;
}

double h_potential(double rho, const LawParams& p, LawKind kind) {
  if (!(rho > 0.0)) throw DomainError("h_potential: rho must be positive");
  if (kind == LawKind::Circling) {
    auto raw = [&](double s) { return p.alpha * (s + p.r0 * p.r0 / s) - 2.0 * std::log(s); };
    return raw(rho) - raw(potential_minimizer(p, kind));
  }
  return p.alpha * (rho + p.r0 * p.r0 / rho - 2.0 * p.r0);
}

double F_rect(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other, const LawParams& p) {
  check_alignment_inputs(r_unit, x_self, n_self, x_other);
  return F_rect_unchecked(r_unit, x_self, n_self, x_other, p);
}

double F_circ(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other, const LawParams& p) {
  check_alignment_inputs(r_unit, x_self, n_self, x_other);
  return F_circ_unchecked(r_unit, x_self, n_self, x_other, p);
}

double alignment_function(const Vec3& r_unit, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other,
                          const LawParams& p) {
  check_alignment_inputs(r_unit, x_self, n_self, x_other);
  return F_unchecked(r_unit, x_self, n_self, x_other, p);
}

double pair_steering(const Vec3& rel, const Vec3& x_self, const Vec3& n_self, const Vec3& x_other,
                     const LawParams& p) {
  const double d = rel.norm();
  if (!(d >= kCollisionDistance)) throw CollisionError(0, 1, d);
  const Vec3 rh = rel / d;
  return F_unchecked(rh, x_self, n_self, x_other, p) - f_unchecked(d, p) * rh.dot(n_self);
}

std::pair<ControlTriple, ControlTriple> two_vehicle_controls(const FramedState& s1, const FramedState& s2,
                                                             const LawParams& p) {
  const PairSteer a = steer_pair(s1, s2, p, 0, 1);
  const PairSteer b = steer_pair(s2, s1, p, 1, 0);
  return {{a.u, a.v, 0.0}, {b.u, b.v, 0.0}};
}

void n_vehicle_controls(std::span<const FramedState> states, const LawParams& p, std::span<ControlTriple> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(states.size());
  if (n < 2) throw ContractError("n_vehicle_controls: need at least two particles");
  if (out.size() != states.size()) throw ContractError("n_vehicle_controls: output size mismatch");
  const double count = static_cast<double>(n);

  // Exceptions cannot leave the parallel region; keep the lowest failing row.
  std::exception_ptr failure;
  std::ptrdiff_t failed_row = n;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= 32)
#endif
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    try {
      double u = 0.0, v = 0.0;
      for (std::ptrdiff_t k = 0; k < n; ++k) {
        if (k == j) continue;
        const PairSteer s = steer_pair(states[j], states[k], p, static_cast<std::size_t>(j), static_cast<std::size_t>(k));
        u += s.u;
        v += s.v;
      }
      out[j] = {u / count, v / count, 0.0};
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(gyroform_nvehicle_failure)
#endif
      if (j < failed_row) {
        failed_row = j;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<ControlTriple> n_vehicle_controls(std::span<const FramedState> states, const LawParams& p) {
  std::vector<ControlTriple> out(states.size());
  n_vehicle_controls(states, p, out);
  return out;
}

namespace reference {
std::vector<ControlTriple> n_vehicle_controls(std::span<const FramedState> states, const LawParams& p) {
  const std::size_t n = states.size();
  if (n < 2) throw ContractError("n_vehicle_controls: need at least two particles");
  std::vector<ControlTriple> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double u = 0.0, v = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const PairSteer s = steer_pair(states[j], states[k], p, j, k);
      u += s.u;
      v += s.v;
    }
    out[j] = {u / static_cast<double>(n), v / static_cast<double>(n), 0.0};
  }
  return out;
}
}  // namespace reference

std::pair<ControlTriple, ControlTriple> group_form_controls(const SE3Element& g1, const SE3Element& g2,
                                                            const LawParams& p) {
  const SE3Element g = se3_compose(se3_inverse(g1), g2);
  const SE3Element gi = se3_inverse(g);
  // g_ij and g^ij with 1-based row/column numbering of the 4x4 matrices.
  auto G = [&](int i, int j) { return j == 4 ? g.translation(i - 1) : g.rotation(i - 1, j - 1); };
  auto Gi = [&](int i, int j) { return j == 4 ? gi.translation(i - 1) : gi.rotation(i - 1, j - 1); };

  const double r = std::sqrt(G(1, 4) * G(1, 4) + G(2, 4) * G(2, 4) + G(3, 4) * G(3, 4));
  if (!(r >= kCollisionDistance)) throw CollisionError(0, 1, r);
  if (p.kind == LawKind::None) return {};
  const double f = f_unchecked(r, p);
  const double r2 = r * r;
  const double s = static_cast<double>(p.sign);

  ControlTriple c1, c2;
  if (p.kind == LawKind::Rectilinear) {
    c1.u = -s * p.eta * G(1, 4) * G(2, 4) / r2 + p.mu * G(2, 1) + f * G(2, 4) / r;
    c2.u = -s * p.eta * Gi(1, 4) * Gi(2, 4) / r2 + p.mu * Gi(2, 1) + f * Gi(2, 4) / r;
    c1.v = -s * p.eta * G(1, 4) * G(3, 4) / r2 + p.mu * G(3, 1) + f * G(3, 4) / r;
    c2.v = -s * p.eta * Gi(1, 4) * Gi(3, 4) / r2 + p.mu * Gi(3, 1) + f * Gi(3, 4) / r;
  } else {
    // Circling analogue: r.x_other seen from vehicle 1 is -g^14, from vehicle 2 it is -g_14.
    c1.u = s * p.eta * G(1, 4) * G(2, 4) / r2 + p.mu * (-G(2, 1) - 2.0 * Gi(1, 4) * G(2, 4) / r2) + f * G(2, 4) / r;
    c2.u = s * p.eta * Gi(1, 4) * Gi(2, 4) / r2 + p.mu * (-Gi(2, 1) - 2.0 * G(1, 4) * Gi(2, 4) / r2) + f * Gi(2, 4) / r;
    c1.v = s * p.eta * G(1, 4) * G(3, 4) / r2 + p.mu * (-G(3, 1) - 2.0 * Gi(1, 4) * G(3, 4) / r2) + f * G(3, 4) / r;
    c2.v = s * p.eta * Gi(1, 4) * Gi(3, 4) / r2 + p.mu * (-Gi(3, 1) - 2.0 * G(1, 4) * Gi(3, 4) / r2) + f * Gi(3, 4) / r;
  }
  return {c1, c2};
}

FeedbackLaw make_feedback_law(const LawParams& p) {
  return [p](std::span<const FramedState> states, std::span<ControlTriple> out) {
    const std::size_t n = states.size();
    if (n == 1 || p.kind == LawKind::None) {
      for (auto& c : out) c = {};
      return;
    }
    if (n == 2) {
      auto [c1, c2] = two_vehicle_controls(states[0], states[1], p);
      out[0] = c1;
      out[1] = c2;
      return;
    }
    n_vehicle_controls(states, p, out);
  };
}

}  // namespace gyroform
