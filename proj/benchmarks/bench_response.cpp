#include <benchmark/benchmark.h>

#include "rotospin/dynamics.hpp"
#include "rotospin/material.hpp"
#include "rotospin/response.hpp"
#include "rotospin/scan.hpp"

using namespace rotospin;

static void BM_CrossSections(benchmark::State& state) {
  const auto m = OscillatorModel::normalized(0.1, 1e-4);
  const auto d = DriveField::lcp(0.7);
  double W = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_sections(m, d, W));
    W += 1e-9;
  }
}
BENCHMARK(BM_CrossSections);

static void BM_Fig2Grid(benchmark::State& state) {
  ScanRequest req;
  req.model = OscillatorModel::normalized(0.1, 1e-4);
  req.frequency = {0.0, 2.0, 256};
  req.rotation = {0.0, 2.0, 256};
  req.units = ScanUnits::fig2;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_scan(req, threads));
  state.SetItemsProcessed(state.iterations() * 256 * 256);
}
BENCHMARK(BM_Fig2Grid)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SpinUpGoldSphere(benchmark::State& state) {
  const auto m = from_drude_sphere({1.37e16, 1.07e14, 1e-6});
  const auto d = DriveField::lcp(6.3e13, field_amplitude_for_intensity(1e8, m.light_speed));
  const auto body = RigidBodyParams::solid_sphere(19.3, 1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(time_to_target(m, d, body, 1e8));
}
BENCHMARK(BM_SpinUpGoldSphere);
BENCHMARK_MAIN();
