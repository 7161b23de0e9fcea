#pragma once

// Scenario configuration text:
//
//   [scenario]   n, seed, init (random|explicit), box_side, min_separation,
//                monitors, particle.<i> = rx ry rz xx xy xz [yx yy yz]
//   [law]        kind, alpha, r0 (m), mu, eta, sign
//   [integration] dt (s), T (s), sample_every, tol, window (s)
//   [output]     dir, csv, json, svg, plane (xy|xz|yz|auto|nx,ny,nz)
//   [sweep]      alpha, r0, mu, eta, sign (comma lists), seeds (list or a..b)
//
// '#' and ';' start comments. Unknown sections or keys are errors. Required:
// scenario.n and law.kind.

#include <optional>
#include <string>
#include <string_view>

#include "gyroform/output.hpp"
#include "gyroform/sim_harness.hpp"

namespace gyroform {

struct OutputSpec {
  std::string dir = "out";
  std::string csv = "trajectory.csv";
  std::string json = "report.json";
  std::string svg = "trajectory.svg";
  Projection plane;
  bool operator==(const OutputSpec&) const = default;
};

struct ConfigDocument {
  Scenario scenario;
  OutputSpec output;
  std::optional<SweepGrid> sweep;  // present when a [sweep] section exists
};

/// Throws ConfigError (with line number for syntax errors; "A4 violated" for
/// mu <= eta/2).
ConfigDocument parse_config_document(std::string_view text);
Scenario parse_config(std::string_view text);
ConfigDocument load_config_file(const std::string& path);

/// Canonical text for a scenario (17 significant digits); parse_config of the
/// result reproduces the scenario exactly.
std::string emit_config(const Scenario& sc, const OutputSpec& out = {});

}  // namespace gyroform
