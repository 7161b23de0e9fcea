#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gyroform/sampling.hpp"
#include "gyroform/verification.hpp"

using namespace gyroform;

TEST(Sampling, StreamsAreReproducibleAndDistinct) {
  auto a = sampling::make_stream(5, 0), b = sampling::make_stream(5, 0), c = sampling::make_stream(5, 1);
  EXPECT_EQ(a(), b());
  EXPECT_NE(sampling::make_stream(5, 0)(), c());
}

TEST(Sampling, DrawsHaveTheirInvariants) {
  auto rng = sampling::make_stream(61, 0);
  Vec3 mean = Vec3::Zero();
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Vec3 u = sampling::random_unit(rng);
    EXPECT_NEAR(u.norm(), 1.0, 1e-15);
    mean += u;
    const Mat3 r = sampling::random_rotation(rng);
    EXPECT_LE(orthonormality_defect(r), 1e-14);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
    const ShapeTriple s = sampling::random_shape(rng, 0.2, 5.0);
    EXPECT_GE(s.r.norm(), 0.2 - 1e-15);
    EXPECT_LE(s.r.norm(), 5.0 + 1e-15);
    const FramedState st = sampling::random_state(rng, 1.5);
    EXPECT_LE(st.r.cwiseAbs().maxCoeff(), 1.5);
    EXPECT_TRUE(st.is_valid(1e-13));
  }
  EXPECT_LE((mean / n).norm(), 0.03);  // isotropy: mean of n unit vectors ~ 1/sqrt(n)
}

TEST(Sampling, ParallelExtremesEqualSerialReference) {
  const sampling::SampleFn fn = [](std::size_t i, sampling::Rng& rng) {
    return std::sin(double(i)) + sampling::uniform(rng, -1.0, 1.0);
  };
  for (std::size_t count : {1u, 4095u, 4096u, 10001u, 50000u}) {
    const auto par = sampling::sample_extremes(count, 9, fn);
    const auto ser = sampling::reference::sample_extremes(count, 9, fn);
    EXPECT_EQ(par.samples, count);
    EXPECT_EQ(par.min, ser.min);
    EXPECT_EQ(par.max, ser.max);
    EXPECT_EQ(par.argmin, ser.argmin);
    EXPECT_EQ(par.argmax, ser.argmax);
  }
}

TEST(Sampling, ExtremesFindKnownValuesAndPropagateNaN) {
  const auto e = sampling::sample_extremes(10000, 1, [](std::size_t i, sampling::Rng&) { return double(i % 777); });
  EXPECT_EQ(e.min, 0.0);
  EXPECT_EQ(e.max, 776.0);
  EXPECT_EQ(e.argmin, 0u);
  EXPECT_EQ(e.argmax, 776u);
  const auto n = sampling::sample_extremes(
      9000, 1, [](std::size_t i, sampling::Rng&) { return i == 5000 ? std::nan("") : 1.0; });
  EXPECT_TRUE(std::isnan(n.min) || std::isnan(n.max));
}

TEST(Verification, SuitesPassAndReportCounts) {
  const auto results = run_verification("all", 20000, 3);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed) << r.suite << ": " << r.name << " worst=" << r.worst;
    EXPECT_GT(r.samples, 0u);
  }
  EXPECT_THROW(run_verification("bogus", 10, 1), std::exception);
}
