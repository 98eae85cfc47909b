// Copyright 2026 The rshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <vector>

#include <benchmark/benchmark.h>

#include "rshadow/calibration.hpp"
#include "rshadow/shadows.hpp"
#include "rshadow/states.hpp"
#include "rshadow/stats.hpp"

namespace {

using namespace rshadow;

StateVector layered_state(int n) {
  StateVector s(n);
  for (int q = 0; q < n; ++q) s.apply_single(q, gates::hadamard());
  for (int q = 0; q + 1 < n; ++q) s.apply(Gate::zz_phase(q, q + 1, 0.3));
  return s;
}

void BM_AcquireDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DenseSampler sampler(layered_state(n));
  SimulatedReadout device(ReadoutNoiseModel::symmetric(n, 0.02));
  for (auto _ : state) {
    auto shots = run_shadow_acquisition(sampler, 1000, device, RandomStream(1));
    benchmark::DoNotOptimize(shots.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_AcquireDense)->Arg(5)->Arg(9)->Arg(12);

void BM_AcquireProduct(benchmark::State& state) {
  const auto h = haar_product_state(12, 1);
  ProductSampler sampler(h.qubits);
  SimulatedReadout device(ReadoutNoiseModel::symmetric(12, 0.02));
  for (auto _ : state) {
    auto shots = run_shadow_acquisition(sampler, 1000, device, RandomStream(1));
    benchmark::DoNotOptimize(shots.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_AcquireProduct);

std::vector<ShadowShot> sample_shots(int n, std::int64_t t) {
  DenseSampler sampler(layered_state(n));
  SimulatedReadout device(ReadoutNoiseModel::symmetric(n, 0.02));
  return run_shadow_acquisition(sampler, t, device, RandomStream(2));
}

void BM_PurityHistogram(benchmark::State& state) {
  const auto shots = sample_shots(6, 100000);
  const auto f = LocalCoefficients::noiseless(6);
  std::vector<int> subset;
  for (int q = 0; q < state.range(0); ++q) subset.push_back(q);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_purity_naive(shots, f, subset).value);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_PurityHistogram)->Arg(1)->Arg(2)->Arg(4);

void BM_PurityPairs(benchmark::State& state) {
  const auto shots = sample_shots(6, state.range(0));
  const auto f = LocalCoefficients::noiseless(6);
  const std::vector<int> subset = {0, 1, 2, 3, 4, 5};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_purity_samebasis(shots, f, subset).value);
}
BENCHMARK(BM_PurityPairs)->Arg(500)->Arg(1400);

void BM_FidelityEstimate(benchmark::State& state) {
  const auto shots = sample_shots(4, 100000);
  const auto f = LocalCoefficients::noiseless(4);
  const Qubit2 plus(0.7071067811865476, 0.7071067811865476);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_fidelity_1q(shots, f, plus, 2).value);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_FidelityEstimate);

void BM_CalibrationFit(benchmark::State& state) {
  SimulatedReadout device(make_preset(PulsePreset::pulse_150us));
  const auto shots = run_calibration(12, 30000, device, RandomStream(3));
  CalibrationOptions opts;
  opts.pairs = all_pairs(12);
  opts.bootstrap_resamples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_f(shots, opts).f_local.data());
}
BENCHMARK(BM_CalibrationFit)->Arg(0)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_BootstrapPairPurity(benchmark::State& state) {
  const auto shots = sample_shots(9, 100000);
  const auto f = LocalCoefficients::noiseless(9);
  const RecordEstimator est = [](std::span<const ShadowShot> s, const LocalCoefficients& c) {
    return estimate_purity_naive(s, c, std::vector<int>{0, 1}).value;
  };
  BootstrapOptions opts;
  opts.resamples = 20;
  opts.joint = std::vector<int>{3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_ci(est, shots, f, RandomStream(4), opts).spread);
}
BENCHMARK(BM_BootstrapPairPurity)->Unit(benchmark::kMillisecond);

}  // namespace
