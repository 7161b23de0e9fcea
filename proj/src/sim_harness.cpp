#include "gyroform/sim_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "gyroform/errors.hpp"
#include "gyroform/lyapunov.hpp"
#include "gyroform/sampling.hpp"

namespace gyroform {

namespace {

bool same_state(const FramedState& a, const FramedState& b) {
  return a.r == b.r && a.x == b.x && a.y == b.y && a.z == b.z;
}

double heading_margin(const FramedState& a, const FramedState& b, LawKind kind) {
  const ShapeTriple s = ShapeTriple::from_states(a, b);
  if (kind == LawKind::Circling) return circ_log_argument(s);
  return 1.0 + a.x.dot(b.x);
}

}  // namespace

void Scenario::validate() const {
  if (n == 0) throw ContractError("scenario: n must be at least 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractError("scenario: dt must be positive");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ContractError("scenario: T must be non-negative");
  if (sample_every == 0) throw ContractError("scenario: sample_every must be at least 1");
  if (!(convergence_tol > 0.0)) throw ContractError("scenario: convergence tolerance must be positive");
  if (!(convergence_window > 0.0)) throw ContractError("scenario: convergence window must be positive");
  if (box_side < 0.0 || min_start_separation < 0.0) throw ContractError("scenario: box and separation must be >= 0");
  if (law.kind != LawKind::None) law.validate();
  if (init == InitMode::Explicit) {
    if (states.size() != n) throw ContractError("scenario: explicit state count does not match n");
    for (const auto& s : states)
      if (!s.is_valid()) throw ContractError("scenario: explicit state has an invalid frame");
  }
}

bool Scenario::operator==(const Scenario& o) const {
  if (states.size() != o.states.size()) return false;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!same_state(states[i], o.states[i])) return false;
  return n == o.n && law == o.law && dt == o.dt && duration == o.duration && sample_every == o.sample_every &&
         seed == o.seed && init == o.init && box_side == o.box_side &&
         min_start_separation == o.min_start_separation && convergence_tol == o.convergence_tol &&
         convergence_window == o.convergence_window && monitors == o.monitors;
}

std::string_view to_string(TerminalClass c) {
  switch (c) {
    case TerminalClass::None:
      return "None";
    case TerminalClass::PerpendicularBaseline:
      return "PerpendicularBaseline";
    case TerminalClass::LeaderFollower:
      return "Leader-Follower";
    case TerminalClass::CirclingDiameter:
      return "CirclingDiameter";
  }
  return "None";
}

std::vector<FramedState> initial_states(const Scenario& sc) {
  if (sc.init == InitMode::Explicit) return sc.states;

  constexpr int kMaxAttempts = 100000;
  auto rng = sampling::make_stream(sc.seed, 0);
  const double half = 0.5 * sc.effective_box_side();
  const double min_sep = sc.effective_min_separation();

  std::vector<FramedState> out;
  out.reserve(sc.n);
  for (std::size_t i = 0; i < sc.n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      FramedState s = sampling::random_state(rng, half);
      bool ok = true;
      for (const auto& other : out) {
        if ((s.r - other.r).norm() < min_sep) {
          ok = false;
          break;
        }
        if (sc.n == 2 && sc.law.kind != LawKind::None && heading_margin(other, s, sc.law.kind) < kRandomStartMargin) {
          ok = false;
          break;
        }
      }
      if (ok) {
        out.push_back(s);
        placed = true;
      }
    }
    if (!placed) throw ContractError("initial_states: could not place particles; enlarge the box");
  }
  return out;
}

double alignment_metric(std::span<const FramedState> states) {
  const std::size_t n = states.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++pairs) sum += 1.0 - states[i].x.dot(states[j].x);
  return sum / static_cast<double>(pairs);
}

double min_pairwise_distance(std::span<const FramedState> states) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) best = std::min(best, (states[i].r - states[j].r).norm());
  return best;
}

TerminalClass classify_pair(const FramedState& s1, const FramedState& s2, const LawParams& law, double tol) {
  const Vec3 r = s2.r - s1.r;
  const double d = r.norm();
  if (!(d > 0.0)) return TerminalClass::None;
  const Vec3 rh = r / d;
  const double c = s1.x.dot(s2.x);
  const double f = f_interaction(d, law);
  if (1.0 - c <= tol) {
    if (std::abs(rh.dot(s1.x)) <= tol && std::abs(f) <= tol) return TerminalClass::PerpendicularBaseline;
    if ((s1.x - rh).norm() <= tol || (s1.x + rh).norm() <= tol) return TerminalClass::LeaderFollower;
  }
  if (1.0 + c <= tol && std::abs(rh.dot(s1.x)) <= tol && std::abs(f - 2.0 / d) <= tol * law.alpha)
    return TerminalClass::CirclingDiameter;
  return TerminalClass::None;
}

TerminalClass classify_terminal(std::span<const Sample> window, const LawParams& law, double tol) {
  if (window.size() < 10) throw ContractError("classify_terminal: window needs at least 10 samples");
  TerminalClass common = TerminalClass::None;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const auto& st = window[i].states;
    if (st.size() != 2) throw ContractError("classify_terminal: expects a two-vehicle trajectory");
    const TerminalClass c = classify_pair(st[0], st[1], law, tol);
    if (c == TerminalClass::None) return TerminalClass::None;
    if (i == 0) {
      common = c;
    } else if (c != common) {
      return TerminalClass::None;
    }
  }
  return common;
}

LyapunovSeries lyapunov_monitor(const Trajectory& traj, const LawParams& law) {
  LyapunovSeries out;
  out.values.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    if (s.states.size() != 2) throw ContractError("lyapunov_monitor: expects a two-vehicle trajectory");
    out.values.push_back(lyapunov_value(ShapeTriple::from_states(s.states[0], s.states[1]), law));
  }
  for (std::size_t k = 1; k < out.values.size(); ++k) {
    const double inc = out.values[k] - out.values[k - 1];
    if (inc > out.max_increase) out.max_increase = inc;
  }
  return out;
}

namespace {

// Shape stationarity for n > 2: pairwise distances and heading dot products
// vary by at most tol over the window.
bool shape_is_stationary(std::span<const Sample> window, double tol) {
  if (window.empty()) return false;
  const auto& ref = window.front().states;
  const std::size_t n = ref.size();
  for (const auto& s : window) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dd = (s.states[i].r - s.states[j].r).norm() - (ref[i].r - ref[j].r).norm();
        const double dc = s.states[i].x.dot(s.states[j].x) - ref[i].x.dot(ref[j].x);
        if (std::abs(dd) > tol || std::abs(dc) > tol) return false;
      }
    }
  }
  return true;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
  sc.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  RunReport& rep = result.report;

  const std::vector<FramedState> init = initial_states(sc);
  const bool pair_monitor = sc.n == 2 && sc.law.kind != LawKind::None && sc.monitors.lyapunov;

  double min_sep = std::numeric_limits<double>::infinity();
  double prev_v = std::numeric_limits<double>::quiet_NaN();
  double max_inc = 0.0;

  const TickObserver observer = [&](std::size_t tick, double, std::span<const FramedState> states) {
    for (const auto& s : states)
      if (!s.r.allFinite() || !s.x.allFinite()) throw NonFiniteError(tick, "non-finite state");
    if (states.size() >= 2) {
      const double d = min_pairwise_distance(states);
      min_sep = std::min(min_sep, d);
      if (d < kCollisionDistance) {
        for (std::size_t i = 0; i < states.size(); ++i)
          for (std::size_t j = i + 1; j < states.size(); ++j)
            if ((states[i].r - states[j].r).norm() == d) throw CollisionError(i, j, d);
      }
    }
    if (pair_monitor) {
      const double v = lyapunov_value(ShapeTriple::from_states(states[0], states[1]), sc.law);
      if (tick > 0 && std::isfinite(v) && std::isfinite(prev_v)) max_inc = std::max(max_inc, v - prev_v);
      prev_v = v;
    }
  };

  IntegrationOptions opts;
  opts.dt = sc.dt;
  opts.duration = sc.duration;
  opts.sample_every = sc.sample_every;

  try {
    integrate_into(result.trajectory, init, make_feedback_law(sc.law), opts, observer);
  } catch (const CollisionError& e) {
    rep.aborted = true;
    rep.diagnostic = e.what();
  } catch (const NonFiniteError& e) {
    rep.aborted = true;
    rep.diagnostic = e.what();
  }

  rep.min_separation = sc.n >= 2 ? (std::isfinite(min_sep) ? min_sep : 0.0) : 0.0;
  rep.max_lyapunov_increase = max_inc;

  const auto& samples = result.trajectory.samples;
  if (!samples.empty()) {
    const auto& last = samples.back().states;
    if (sc.n >= 2) rep.final_separation = sc.n == 2 ? (last[1].r - last[0].r).norm() : min_pairwise_distance(last);
    if (sc.monitors.alignment) rep.alignment_metric = alignment_metric(last);
  }

  if (!rep.aborted && sc.n >= 2 && sc.law.kind != LawKind::None) {
    // Trailing window of samples covering convergence_window time units.
    const double t_end = samples.back().t;
    std::size_t first = samples.size();
    while (first > 0 && samples[first - 1].t >= t_end - sc.convergence_window - 1e-12) --first;
    const std::span<const Sample> window(samples.data() + first, samples.size() - first);
    if (window.size() >= 10 && t_end >= sc.convergence_window) {
      if (sc.n == 2) {
        rep.terminal = classify_terminal(window, sc.law, sc.convergence_tol);
        rep.converged = rep.terminal != TerminalClass::None;
      } else {
        rep.converged = shape_is_stationary(window, sc.convergence_tol);
      }
    }
  }

  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::size_t SweepGrid::size() const {
  auto len = [](const auto& v) { return v.empty() ? std::size_t{1} : v.size(); };
  return len(alpha) * len(r0) * len(mu) * len(eta) * len(sign) * len(seeds);
}

Scenario SweepGrid::cell(std::size_t index) const {
  if (index >= size()) throw ContractError("sweep: cell index out of range");
  Scenario sc = base;
  auto pick = [&index](const auto& axis, auto& target) {
    if (axis.empty()) return;
    target = axis[index % axis.size()];
    index /= axis.size();
  };
  pick(seeds, sc.seed);
  pick(sign, sc.law.sign);
  pick(eta, sc.law.eta);
  pick(mu, sc.law.mu);
  pick(r0, sc.law.r0);
  pick(alpha, sc.law.alpha);
  return sc;
}

namespace {

SweepRow run_cell(const SweepGrid& grid, std::size_t index) {
  SweepRow row;
  row.cell = index;
  row.scenario = grid.cell(index);
  try {
    row.report = run_scenario(row.scenario).report;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.report.aborted = true;
    row.report.diagnostic = e.what();
  }
  return row;
}

void summarize(SweepResult& res) {
  if (res.rows.empty()) return;
  const double total = static_cast<double>(res.rows.size());
  std::size_t converged = 0;
  for (const auto& row : res.rows) {
    if (row.report.converged) ++converged;
    res.class_fraction[row.report.terminal] += 1.0 / total;
  }
  res.converged_fraction = static_cast<double>(converged) / total;
}

}  // namespace

SweepResult sweep(const SweepGrid& grid) {
  const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(grid.size());
  SweepResult res;
  res.rows.resize(static_cast<std::size_t>(cells));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < cells; ++i) res.rows[i] = run_cell(grid, static_cast<std::size_t>(i));
  summarize(res);
  return res;
}

namespace reference {
SweepResult sweep(const SweepGrid& grid) {
  SweepResult res;
  for (std::size_t i = 0; i < grid.size(); ++i) res.rows.push_back(run_cell(grid, i));
  summarize(res);
  return res;
}
}  // namespace reference

}  // namespace gyroform
