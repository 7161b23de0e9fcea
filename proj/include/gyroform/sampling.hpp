#pragma once

// Random draws for property checks and scenario initialization, plus the
// chunked sample-and-reduce kernel used by the verification suites.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

#include "gyroform/framed_state.hpp"
#include "gyroform/lie_geom.hpp"
#include "gyroform/lyapunov.hpp"

namespace gyroform::sampling {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream index); identical on every run.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

double uniform(Rng& rng, double lo, double hi);
/// Uniform on the unit sphere.
Vec3 random_unit(Rng& rng);
/// Uniform (Haar) rotation.
Mat3 random_rotation(Rng& rng);
/// Position uniform in the cube [-half, half]^3, frame uniform.
FramedState random_state(Rng& rng, double half_width);
SE3Element random_group(Rng& rng, double half_width);
/// Baseline direction, headings uniform on the sphere; |r| uniform in [min_len, max_len].
ShapeTriple random_shape(Rng& rng, double min_len = 0.2, double max_len = 5.0);

struct Extremes {
  std::size_t samples = 0;
  double min = 0.0;
  double max = 0.0;
  std::size_t argmin = 0;  // sample index of the minimum
  std::size_t argmax = 0;
};

/// Draw function: sample index and that sample's own stream -> value.
using SampleFn = std::function<double(std::size_t index, Rng& rng)>;

/// Samples are drawn in fixed-size chunks, each with its own stream, so the
/// result does not depend on the thread count. Chunks run in parallel under
/// OpenMP.
Extremes sample_extremes(std::size_t count, std::uint64_t seed, const SampleFn& fn);

inline constexpr std::size_t kChunk = 4096;

namespace reference {
/// Serial version of sample_extremes (same streams, same result).
Extremes sample_extremes(std::size_t count, std::uint64_t seed, const SampleFn& fn);
}  // namespace reference

}  // namespace gyroform::sampling
