// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "gyroform/control_laws.hpp"
#include "gyroform/lyapunov.hpp"
#include "gyroform/sampling.hpp"
#include "gyroform/sim_harness.hpp"

using namespace gyroform;

namespace {

std::vector<FramedState> swarm(std::size_t n) {
  auto rng = sampling::make_stream(42, 0);
  std::vector<FramedState> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(sampling::random_state(rng, 10.0));
  return s;
}

LawParams law() {
  LawParams p;
  p.kind = LawKind::Circling;
  p.sign = default_sign(p.kind);
  return p;
}

void BM_NVehicleParallel(benchmark::State& state) {
  const auto s = swarm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(n_vehicle_controls(s, law()));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_NVehicleSerial(benchmark::State& state) {
  const auto s = swarm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::n_vehicle_controls(s, law()));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

const sampling::SampleFn kIneq = [](std::size_t, sampling::Rng& rng) {
  return circ_inequality_vector(sampling::random_shape(rng), 1);
};

void BM_SampleParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sampling::sample_extremes(state.range(0), 1, kIneq));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sampling::reference::sample_extremes(state.range(0), 1, kIneq));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

SweepGrid grid() {
  SweepGrid g;
  g.base.law = law();
  g.base.duration = 10.0;
  g.sign = {1, -1};
  g.seeds = {1, 2, 3, 4};
  return g;
}

void BM_SweepParallel(benchmark::State& state) {
  const SweepGrid g = grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g));
}

void BM_SweepSerial(benchmark::State& state) {
  const SweepGrid g = grid();
  for (auto _ : state) benchmark::DoNotOptimize(reference::sweep(g));
}

}  // namespace

BENCHMARK(BM_NVehicleParallel)->Arg(16)->Arg(128)->Arg(1024);
BENCHMARK(BM_NVehicleSerial)->Arg(16)->Arg(128)->Arg(1024);
BENCHMARK(BM_SampleParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SampleSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
