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
#include <benchmark/benchmark.h>

#include "rshadow/oracle.hpp"

namespace {

using namespace rshadow;

void BM_NoisyChannel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ensemble = state.range(1) ? oracle::TwirlEnsemble::full_clifford
                                       : oracle::TwirlEnsemble::pauli_axis_x_flip;
  const auto t = transition_matrix(ReadoutNoiseModel::symmetric(n, 0.03));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::build_noisy_channel(t, ensemble).ptm().data());
}
BENCHMARK(BM_NoisyChannel)->ArgsProduct({{1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_LocalCoefficients(benchmark::State& state) {
  const auto m = make_preset(PulsePreset::pulse_150us);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::local_coefficients(m).data());
}
BENCHMARK(BM_LocalCoefficients)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
