// gyroform: simulate, sweep and verify gyroscopically steered unit-speed
// particles.
//
// Exit codes: 0 success, 1 validation error (bad flags, bad config),
// 2 runtime failure (I/O, failed verification).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gyroform/config.hpp"
#include "gyroform/errors.hpp"
#include "gyroform/output.hpp"
#include "gyroform/shape_equilibria.hpp"
#include "gyroform/sim_harness.hpp"
#include "gyroform/verification.hpp"

namespace fs = std::filesystem;
using namespace gyroform;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  const ConfigDocument doc = load_config_file(config_path);
  const fs::path dir = out_dir.empty() ? fs::path(doc.output.dir) : fs::path(out_dir);
  fs::create_directories(dir);

  const RunResult run = run_scenario(doc.scenario);
  write_trajectory_csv(run.trajectory, (dir / doc.output.csv).string());
  write_report_json(run.report, (dir / doc.output.json).string());
  plot_svg(run.trajectory, doc.output.plane, (dir / doc.output.svg).string());

  const auto& r = run.report;
  std::printf("converged=%s terminalClass=%s finalSeparation=%.6g minSeparation=%.6g maxLyapunovIncrease=%.3g\n",
              r.converged ? "true" : "false", std::string(to_string(r.terminal)).c_str(), r.final_separation,
              r.min_separation, r.max_lyapunov_increase);
  if (r.aborted) std::printf("aborted: %s\n", r.diagnostic.c_str());
  std::printf("wrote %s, %s, %s\n", (dir / doc.output.csv).string().c_str(), (dir / doc.output.json).string().c_str(),
              (dir / doc.output.svg).string().c_str());
  return kOk;
}

void print_equilibrium_header() { std::printf("w,a,psi1,psi2,theta,b3,class,radius,pitchRate,residual\n"); }

void print_equilibrium_row(const EquilibriumSpec& spec) {
  const SE3Element g = equilibrium_family(spec);
  const auto [xi1, xi2] = equilibrium_twists(spec);
  const double residual = is_shape_equilibrium(g, xi1, xi2, tolerance::kAlgebra).residual;
  const FormationClass cls = classify(spec.w, spec.a);
  std::string radius = "n/a", pitch = "n/a";
  if (spec.a * spec.a + spec.w * spec.w > 0.0) {
    const HelixGeometry h = helix_geometry(spec.w, spec.a);
    radius = format_real(h.radius);
    pitch = format_real(h.pitch_rate);
  }
  std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s,%s,%.3g\n", spec.w, spec.a, spec.psi1, spec.psi2,
              spec.theta, spec.b3, std::string(to_string(cls)).c_str(), radius.c_str(), pitch.c_str(), residual);
}

std::vector<EquilibriumSpec> read_equilibrium_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read sweep file '" + path + "'");
  std::vector<EquilibriumSpec> specs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.starts_with("w,") || line.starts_with("w ")) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    EquilibriumSpec s;
    if (!(ls >> s.w >> s.a >> s.psi1 >> s.psi2 >> s.theta >> s.b3))
      throw ConfigError("expected six numbers w a psi1 psi2 theta b3", line_no);
    if (s.a < 0.0) throw ConfigError("a must be non-negative", line_no);
    specs.push_back(s);
  }
  return specs;
}

int cmd_equilibria(const EquilibriumSpec& spec, const std::string& sweep_file) {
  if (!sweep_file.empty()) {
    const auto specs = read_equilibrium_sweep(sweep_file);
    print_equilibrium_header();
    for (const auto& s : specs) print_equilibrium_row(s);
    return kOk;
  }
  if (spec.a < 0.0) throw ConfigError("--a must be non-negative");
  print_equilibrium_header();
  print_equilibrium_row(spec);
  return kOk;
}

int cmd_verify(const std::string& suite, std::size_t samples, std::uint64_t seed) {
  const auto results = run_verification(suite, samples, seed);
  std::size_t failed = 0;
  for (const auto& r : results) {
    const bool at_least = r.bound == PropertyResult::Bound::AtLeast;
    std::printf("%s  %-8s %-52s samples=%-8zu %s=%.3e (%s %.0e)\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(),
                r.name.c_str(), r.samples, at_least ? "min" : "max", r.worst, at_least ? ">=" : "<=", r.threshold);
    if (!r.passed) ++failed;
  }
  std::printf("%zu properties, %zu failed\n", results.size(), failed);
  return failed == 0 ? kOk : kRuntime;
}

int cmd_sweep(const std::string& config_path, const std::string& out_file) {
  const ConfigDocument doc = load_config_file(config_path);
  SweepGrid grid;
  if (doc.sweep) {
    grid = *doc.sweep;
  } else {
    grid.base = doc.scenario;
  }
  const SweepResult res = sweep(grid);

  std::ostringstream os;
  os << "cell,seed,alpha,r0,mu,eta,sign,converged,terminalClass,finalSeparation,minSeparation,"
        "maxLyapunovIncrease,alignmentMetric,error\n";
  for (const auto& row : res.rows) {
    const auto& l = row.scenario.law;
    const auto& r = row.report;
    os << row.cell << ',' << row.scenario.seed << ',' << format_real(l.alpha) << ',' << format_real(l.r0) << ','
       << format_real(l.mu) << ',' << format_real(l.eta) << ',' << l.sign << ',' << (r.converged ? "true" : "false")
       << ',' << to_string(r.terminal) << ',' << format_real(r.final_separation) << ','
       << format_real(r.min_separation) << ',' << format_real(r.max_lyapunov_increase) << ','
       << format_real(r.alignment_metric) << ',' << '"' << row.error << '"' << '\n';
  }
  if (out_file.empty()) {
    std::cout << os.str();
  } else {
    write_text_file(out_file, os.str());
  }
  std::fprintf(stderr, "cells=%zu converged=%.4f", res.rows.size(), res.converged_fraction);
  for (const auto& [cls, frac] : res.class_fraction)
    std::fprintf(stderr, " %s=%.4f", std::string(to_string(cls)).c_str(), frac);
  std::fprintf(stderr, "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gyroform: formation control of unit-speed particles in 3D"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario and write CSV, JSON and SVG");
  simulate->add_option("config", config_path, "Scenario config file")->required();
  simulate->add_option("--out", out_dir, "Output directory (overrides [output] dir)");

  EquilibriumSpec spec;
  std::vector<double> offset;
  std::string eq_sweep;
  auto* equilibria = app.add_subcommand("equilibria", "Construct and classify a relative equilibrium");
  equilibria->add_option("--w", spec.w, "Twist rate (1/m)");
  equilibria->add_option("--a", spec.a, "Curvature magnitude (1/m)");
  equilibria->add_option("--psi1", spec.psi1, "Normal-plane phase of particle 1 (rad)");
  equilibria->add_option("--psi2", spec.psi2, "Normal-plane phase of particle 2 (rad)");
  equilibria->add_option("--theta", spec.theta, "Free rotation about the axis (rad)");
  equilibria->add_option("--b3", spec.b3, "Free axial offset (m)");
  equilibria->add_option("--offset", offset, "Relative position for w = a = 0: x,y,z")
      ->delimiter(',')
      ->expected(3);
  equilibria->add_option("--sweep", eq_sweep, "CSV file of w,a,psi1,psi2,theta,b3 rows");

  std::string suite = "all";
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run the sampled inequality and invariant suites");
  verify->add_option("--suite", suite, "rect | circ | algebra | all")
      ->check(CLI::IsMember({"rect", "circ", "algebra", "all"}));
  verify->add_option("--samples", samples, "Draws per inequality property");
  verify->add_option("--seed", seed, "Random seed");

  std::string grid_path, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of scenarios");
  sweep_cmd->add_option("grid-config", grid_path, "Config with a [sweep] section")->required();
  sweep_cmd->add_option("--out", sweep_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kValidation;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_dir);
    if (*equilibria) {
      if (!offset.empty()) spec.offset = Vec3(offset[0], offset[1], offset[2]);
      return cmd_equilibria(spec, eq_sweep);
    }
    if (*verify) return cmd_verify(suite, samples, seed);
    if (*sweep_cmd) return cmd_sweep(grid_path, sweep_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kValidation;
}
