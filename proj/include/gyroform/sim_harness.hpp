#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gyroform/control_laws.hpp"
#include "gyroform/framed_state.hpp"

namespace gyroform {

enum class InitMode { Random, Explicit };

struct Monitors {
  bool lyapunov = true;
  bool separation = true;
  bool alignment = true;
  bool operator==(const Monitors&) const = default;
};

struct Scenario {
  std::size_t n = 2;
  LawParams law;
  double dt = 1e-3;
  double duration = 100.0;
  std::size_t sample_every = 10;
  std::uint64_t seed = 1;
  InitMode init = InitMode::Random;
  std::vector<FramedState> states;  // used when init == Explicit
  double box_side = 0.0;            // random init cube side; 0 means 4 r0
  double min_start_separation = 0.0;  // 0 means 0.1 r0
  double convergence_tol = 1e-3;
  double convergence_window = 5.0;  // trailing time window for classification
  Monitors monitors;

  /// Throws ContractError for n = 0, dt <= 0, negative duration, bad law
  /// gains, or explicit states whose count/frames are inconsistent.
  void validate() const;
  double effective_box_side() const { return box_side > 0.0 ? box_side : 4.0 * law.r0; }
  double effective_min_separation() const {
    return min_start_separation > 0.0 ? min_start_separation : 0.1 * law.r0;
  }
  bool operator==(const Scenario& other) const;
};

enum class TerminalClass { None, PerpendicularBaseline, LeaderFollower, CirclingDiameter };

std::string_view to_string(TerminalClass c);

struct RunReport {
  bool converged = false;
  TerminalClass terminal = TerminalClass::None;
  double final_separation = 0.0;  // |r2 - r1|; minimum pairwise distance for n > 2
  double min_separation = 0.0;    // over every tick
  double max_lyapunov_increase = 0.0;
  double alignment_metric = 0.0;  // mean pairwise (1 - x_i . x_j) at the end
  double wall_time = 0.0;         // seconds
  bool aborted = false;
  std::string diagnostic;
};

struct RunResult {
  Trajectory trajectory;
  RunReport report;
};

/// Lower bound on the heading log argument for random starts (1 + x1.x2 for
/// the rectilinear law, the circling log argument otherwise).
inline constexpr double kRandomStartMargin = 1e-3;

/// Initial states of a scenario. Random starts draw positions uniformly in a
/// cube of side effective_box_side() and headings uniformly on the sphere,
/// rejecting draws closer than effective_min_separation() or (n = 2) outside
/// the Lyapunov domain.
std::vector<FramedState> initial_states(const Scenario& sc);

/// Integrates the scenario and fills the report. Collisions and non-finite
/// states end the run with report.aborted set instead of throwing.
RunResult run_scenario(const Scenario& sc);

/// Class of a single two-vehicle configuration at tolerance `tol`.
TerminalClass classify_pair(const FramedState& s1, const FramedState& s2, const LawParams& law, double tol);

/// Class shared by every sample of the window, None otherwise. Needs at least
/// 10 samples of a two-vehicle trajectory (ContractError).
TerminalClass classify_terminal(std::span<const Sample> window, const LawParams& law, double tol);

struct LyapunovSeries {
  std::vector<double> values;
  double max_increase = 0.0;
};

/// V per sample (v_rect or v_circ by law kind); boundary states are +inf.
LyapunovSeries lyapunov_monitor(const Trajectory& traj, const LawParams& law);

/// Mean over pairs of (1 - x_i . x_j).
double alignment_metric(std::span<const FramedState> states);
double min_pairwise_distance(std::span<const FramedState> states);

struct SweepGrid {
  Scenario base;
  std::vector<double> alpha;
  std::vector<double> r0;
  std::vector<double> mu;
  std::vector<double> eta;
  std::vector<int> sign;
  std::vector<std::uint64_t> seeds;

  /// Number of cells (empty axes fall back to the base value).
  std::size_t size() const;
  /// Scenario of cell `index`, seeds varying fastest.
  Scenario cell(std::size_t index) const;
};

struct SweepRow {
  std::size_t cell = 0;
  Scenario scenario;
  RunReport report;
  std::string error;  // set when the cell could not run (e.g. invalid gains)
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double converged_fraction = 0.0;
  std::map<TerminalClass, double> class_fraction;
};

/// Runs every cell; cells execute concurrently under OpenMP and the rows are
/// ordered by cell index.
SweepResult sweep(const SweepGrid& grid);

namespace reference {
SweepResult sweep(const SweepGrid& grid);
}  // namespace reference

}  // namespace gyroform
