#include <benchmark/benchmark.h>

#include "wgcasimir/diagrams.hpp"
#include "wgcasimir/master.hpp"
#include "wgcasimir/sweep.hpp"

namespace {

using namespace wgcasimir;

SystemConfig chain(int n) {
  auto c = SystemConfig::uniform(n, 10.0, 0.7, 0.05);
  c.drive_freq += 1.3;
  return c;
}

void BM_StationaryRho(benchmark::State& state) {
  const auto config = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(master::stationary_rho(config));
}
BENCHMARK(BM_StationaryRho)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_StationaryRhoCapped(benchmark::State& state) {
  auto config = chain(4);
  config.drive_amps = {0.1, 0.0, 0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(master::stationary_rho(config, 2));
}
BENCHMARK(BM_StationaryRhoCapped)->Unit(benchmark::kMillisecond);

void BM_SpectrumPoint(benchmark::State& state) {
  const auto sol = master::stationary_rho(chain(static_cast<int>(state.range(0))));
  const auto op = hilbert::annihilation(sol.basis(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(master::emission_spectrum_at(sol, op, 1003.0));
}
BENCHMARK(BM_SpectrumPoint)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_PairPropagator(benchmark::State& state) {
  const auto config = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagrams::pair_propagator(config, config.drive_freq));
}
BENCHMARK(BM_PairPropagator)->DenseRange(2, 6, 2);

void BM_PairPropagatorQuadrature(benchmark::State& state) {
  const auto config = chain(2);
  for (auto _ : state) benchmark::DoNotOptimize(diagrams::pair_propagator_quadrature(config, config.drive_freq));
}
BENCHMARK(BM_PairPropagatorQuadrature)->Unit(benchmark::kMillisecond);

void BM_FourCopyIntensities(benchmark::State& state) {
  const auto config = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagrams::emission_intensities_diagram(config));
}
BENCHMARK(BM_FourCopyIntensities)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_ScanPoint(benchmark::State& state) {
  sweep::ScanSpec spec;
  spec.base = chain(2);
  spec.axis1 = {"Omega", {2004.0}};
  spec.axis2 = {"qd", {0.9}};
  spec.observables = {sweep::Observable::I_minus, sweep::Observable::G2mm};
  spec.engines = sweep::parse_engines("all");
  spec.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sweep::run_scan(spec));
}
BENCHMARK(BM_ScanPoint)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
