#pragma once

// Sampled property suites behind `gyroform verify`.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gyroform {

struct PropertyResult {
  enum class Bound { AtLeast, AtMost };

  std::string suite;
  std::string name;
  std::size_t samples = 0;
  double worst = 0.0;      // minimum (AtLeast) or maximum (AtMost) observed
  double threshold = 0.0;
  Bound bound = Bound::AtMost;
  bool passed = false;
};

/// Suites: "rect", "circ", "algebra" or "all". `samples` is the draw count for
/// the inequality properties; the costlier properties use samples / 10.
/// Throws ContractError for an unknown suite name.
std::vector<PropertyResult> run_verification(std::string_view suite, std::size_t samples, std::uint64_t seed);

}  // namespace gyroform
