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
#include "rshadow/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

namespace rshadow {
namespace {

ReadoutNoiseModel asymmetric3() {
  ReadoutNoiseModel m;
  m.per_qubit = {{0.01, 0.05}, {0.02, 0.03}, {0.1, 0.0}};
  m.pairwise = {{0, 2, 0.04}};
  return m;
}

TEST(Noise, TransitionRowsAreDistributions) {
  const auto t = transition_matrix(asymmetric3());
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    EXPECT_NEAR(t.row(r).sum(), 1.0, 1e-14);
    EXPECT_GE(t.row(r).minCoeff(), 0.0);
  }
}

TEST(Noise, SingleQubitTransitionIsRates) {
  ReadoutNoiseModel m;
  m.per_qubit = {{0.02, 0.07}};
  const auto t = transition_matrix(m);
  EXPECT_NEAR(t(0, 1), 0.02, 1e-15);
  EXPECT_NEAR(t(1, 0), 0.07, 1e-15);
}

TEST(Noise, SampledReadoutMatchesTransitionMatrix) {
  const auto m = asymmetric3();
  const auto t = transition_matrix(m);
  RandomStream rng(21);
  const int n = 200000;
  for (std::uint32_t truth : {0u, 5u}) {
    std::vector<int> counts(8, 0);
    for (int i = 0; i < n; ++i) ++counts[apply_readout_noise(Bitstring(3, truth), m, 0, rng).value()];
    for (int r = 0; r < 8; ++r) {
      const double p = t(truth, r);
      EXPECT_NEAR(counts[static_cast<std::size_t>(r)] / double(n), p, 5 * std::sqrt(p * (1 - p) / n) + 1e-9);
    }
  }
}

TEST(Noise, RestrictIsTheExactMarginal) {
  const auto m = asymmetric3();
  const auto full = transition_matrix(m);
  const int subset[] = {2, 1};
  const auto marg = transition_matrix(m.restrict(subset));
  // Marginal over qubit 0, averaged over its true value (the rows agree for
  // either value because qubit 0's own flips do not touch qubits 1 and 2).
  for (int b = 0; b < 4; ++b) {
    for (int r = 0; r < 4; ++r) {
      // restricted index: qubit 2 is the high bit
      const int b2 = (b >> 1) & 1, b1 = b & 1, r2 = (r >> 1) & 1, r1 = r & 1;
      double p = 0.0;
      const int row = (b1 << 1) | b2;
      for (int r0 = 0; r0 < 2; ++r0) p += full(row, (r0 << 2) | (r1 << 1) | r2);
      EXPECT_NEAR(marg(b, r), p, 1e-14);
    }
  }
}

TEST(Noise, DriftScalesRates) {
  auto m = ReadoutNoiseModel::symmetric(2, 0.01);
  m.drift = DriftSchedule::linear(0, 100, 1.0, 2.0);
  EXPECT_NEAR(m.at(0).per_qubit[0].p01, 0.01, 1e-15);
  EXPECT_NEAR(m.at(50).per_qubit[1].p10, 0.015, 1e-15);
  EXPECT_NEAR(m.at(500).per_qubit[1].p10, 0.02, 1e-15);
  EXPECT_FALSE(m.at(10).drift.has_value());
  EXPECT_NEAR(m.drift->factor(-5), 1.0, 1e-15);
  EXPECT_NEAR(m.drift->max_factor(), 2.0, 1e-15);
}

TEST(Noise, ValidateRejectsBadModels) {
  auto m = ReadoutNoiseModel::symmetric(2, 0.6);
  m.drift = DriftSchedule::constant(2.0);
  EXPECT_THROW(m.validate(), std::invalid_argument);
  auto bad_pair = ReadoutNoiseModel::symmetric(2, 0.01);
  bad_pair.pairwise = {{0, 0, 0.1}};
  EXPECT_THROW(bad_pair.validate(), std::invalid_argument);
  EXPECT_THROW(ReadoutNoiseModel::symmetric(2, -0.1).validate(), std::invalid_argument);
  EXPECT_THROW(DriftSchedule({{0, 1.0}, {0, 2.0}}), std::invalid_argument);
  EXPECT_THROW(DriftSchedule({{0, -1.0}}), std::invalid_argument);
}

TEST(Presets, RangeAndMeanAreExact) {
  for (const auto& info : all_presets()) {
    const auto m = make_preset(info.preset);
    ASSERT_EQ(m.width(), kPresetQubits);
    std::vector<double> p;
    for (const auto& r : m.per_qubit) {
      EXPECT_EQ(r.p01, r.p10);
      p.push_back(r.symmetric());
    }
    EXPECT_NEAR(*std::min_element(p.begin(), p.end()), info.low, 1e-15);
    EXPECT_NEAR(*std::max_element(p.begin(), p.end()), info.high, 1e-15);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0) / p.size(), info.mean, 1e-12);
  }
}

TEST(Presets, ParseNames) {
  EXPECT_EQ(parse_preset("pulse-150us"), PulsePreset::pulse_150us);
  EXPECT_EQ(parse_preset("pulse-1500us"), PulsePreset::pulse_1500us);
  EXPECT_THROW(parse_preset("pulse-1us"), std::invalid_argument);
}

TEST(SimulatedReadout, UsesTheModel) {
  SimulatedReadout device(ReadoutNoiseModel::noiseless(4));
  RandomStream rng(1);
  const Bitstring b = Bitstring::parse("1011");
  EXPECT_EQ(device.read(b, 0, rng), b);
  EXPECT_EQ(device.width(), 4);
  EXPECT_THROW(device.read(Bitstring::parse("10"), 0, rng), std::invalid_argument);
}

}  // namespace
}  // namespace rshadow
