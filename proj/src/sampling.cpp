#include "gyroform/sampling.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace gyroform::sampling {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x67726fu};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec3 random_unit(Rng& rng) {
  // Archimedes: z uniform in [-1, 1], azimuth uniform.
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> n01;
  Eigen::Quaterniond q(n01(rng), n01(rng), n01(rng), n01(rng));
  q.normalize();
  return q.toRotationMatrix();
}

FramedState random_state(Rng& rng, double half_width) {
  const Mat3 R = random_rotation(rng);
  FramedState s;
  s.r = {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width),
         uniform(rng, -half_width, half_width)};
  s.x = R.col(0);
  s.y = R.col(1);
  s.z = s.x.cross(s.y);  // same completion the config reader applies
  return s;
}

SE3Element random_group(Rng& rng, double half_width) {
  SE3Element g;
  g.rotation = random_rotation(rng);
  g.translation = {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width),
                   uniform(rng, -half_width, half_width)};
  return g;
}

ShapeTriple random_shape(Rng& rng, double min_len, double max_len) {
  const double len = uniform(rng, min_len, max_len);
  ShapeTriple s;
  s.r = len * random_unit(rng);
  s.x1 = random_unit(rng);
  s.x2 = random_unit(rng);
  return s;
}

namespace {

Extremes run_chunk(std::size_t chunk, std::size_t count, std::uint64_t seed, const SampleFn& fn) {
  Extremes e;
  e.min = std::numeric_limits<double>::infinity();
  e.max = -std::numeric_limits<double>::infinity();
  Rng rng = make_stream(seed, chunk);
  const std::size_t begin = chunk * kChunk;
  const std::size_t end = std::min(count, begin + kChunk);
  for (std::size_t i = begin; i < end; ++i) {
    const double v = fn(i, rng);
    ++e.samples;
    // NaN never compares less, so it is surfaced as the minimum explicitly.
    if (v < e.min || std::isnan(v)) {
      if (!std::isnan(e.min)) {
        e.min = v;
        e.argmin = i;
      }
    }
    if (v > e.max) {
      e.max = v;
      e.argmax = i;
    }
  }
  return e;
}

Extremes merge(const std::vector<Extremes>& parts) {
  Extremes total;
  total.min = std::numeric_limits<double>::infinity();
  total.max = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    total.samples += p.samples;
    if (p.samples == 0) continue;
    if ((p.min < total.min || std::isnan(p.min)) && !std::isnan(total.min)) {
      total.min = p.min;
      total.argmin = p.argmin;
    }
    if (p.max > total.max) {
      total.max = p.max;
      total.argmax = p.argmax;
    }
  }
  return total;
}

}  // namespace

Extremes sample_extremes(std::size_t count, std::uint64_t seed, const SampleFn& fn) {
  const std::ptrdiff_t chunks = static_cast<std::ptrdiff_t>((count + kChunk - 1) / kChunk);
  std::vector<Extremes> parts(static_cast<std::size_t>(chunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t c = 0; c < chunks; ++c) parts[c] = run_chunk(static_cast<std::size_t>(c), count, seed, fn);
  return merge(parts);
}

namespace reference {
Extremes sample_extremes(std::size_t count, std::uint64_t seed, const SampleFn& fn) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<Extremes> parts;
  parts.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) parts.push_back(run_chunk(c, count, seed, fn));
  return merge(parts);
}
}  // namespace reference

}  // namespace gyroform::sampling
