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
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rshadow/bitstring.hpp"
#include "rshadow/random.hpp"

namespace rshadow {

/// Readout error probabilities of one qubit.
struct FlipRates {
  double p01 = 0.0;  ///< P(read 1 | true 0)
  double p10 = 0.0;  ///< P(read 0 | true 1)

  /// Effective symmetric bit-flip rate (p01 + p10) / 2.
  double symmetric() const { return 0.5 * (p01 + p10); }
};

/// Correlated readout error: both bits flip together with probability p_both,
/// on top of the independent per-qubit flips.
struct PairFlip {
  int first = 0;
  int second = 1;
  double p_both = 0.0;
};

/// Piecewise-linear multiplicative factor on all flip probabilities, as a
/// function of the device clock (global shot index). Constant beyond the
/// first and last knot.
class DriftSchedule {
 public:
  explicit DriftSchedule(std::vector<std::pair<std::int64_t, double>> knots);
  static DriftSchedule constant(double factor);
  static DriftSchedule linear(std::int64_t begin, std::int64_t end, double from, double to);

  double factor(std::int64_t clock) const;
  double max_factor() const;
  const std::vector<std::pair<std::int64_t, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<std::int64_t, double>> knots_;
};

struct ReadoutNoiseModel {
  std::vector<FlipRates> per_qubit;
  std::vector<PairFlip> pairwise;
  std::optional<DriftSchedule> drift;

  int width() const { return static_cast<int>(per_qubit.size()); }

  /// Throws std::invalid_argument if any probability (after the largest drift
  /// factor) leaves [0, 1] or a pair references an invalid qubit.
  void validate() const;

  static ReadoutNoiseModel noiseless(int n_qubits);
  static ReadoutNoiseModel symmetric(int n_qubits, double p_flip);

  /// Drift factor at `clock` folded into the rates; the result has no drift.
  ReadoutNoiseModel at(std::int64_t clock) const;

  /// Exact marginal channel on `subset` (listed order) at `clock`. Pair terms
  /// with one endpoint outside the subset fold into that endpoint's rates.
  ReadoutNoiseModel restrict(std::span<const int> subset, std::int64_t clock = 0) const;
};

/// Samples a noisy readout of `true_bits`. Consumes width + |pairwise|
/// uniform draws, independent of the outcome.
Bitstring apply_readout_noise(const Bitstring& true_bits, const ReadoutNoiseModel& model,
                              std::int64_t clock, RandomStream& rng);

/// Exact stochastic matrix T(b, b') = p_{b -> b'} of the readout channel at
/// `clock`. Rows sum to one. Width limited to 12.
Eigen::MatrixXd transition_matrix(const ReadoutNoiseModel& model, std::int64_t clock = 0);

enum class PulsePreset { pulse_1500us, pulse_300us, pulse_150us };

struct PresetInfo {
  PulsePreset preset;
  std::string_view name;
  double low;
  double high;
  double mean;
  std::int64_t calibration_shots;
};

inline constexpr int kPresetQubits = 12;

std::span<const PresetInfo> all_presets();
const PresetInfo& preset_info(PulsePreset preset);
/// Accepts "pulse-1500us", "pulse-300us", "pulse-150us".
PulsePreset parse_preset(std::string_view name);

/// 12-qubit symmetric model for a readout pulse length. Rates are drawn from
/// a fixed seed, span exactly [low, high] and average exactly `mean`.
ReadoutNoiseModel make_preset(PulsePreset preset);

/// Readout stage of a device: turns the ideal measured bits into recorded
/// bits. Implementations may throw to signal backend failure.
class MeasurementBackend {
 public:
  virtual ~MeasurementBackend() = default;
  virtual int width() const = 0;
  virtual Bitstring read(const Bitstring& ideal, std::int64_t clock, RandomStream& rng) const = 0;
};

class SimulatedReadout final : public MeasurementBackend {
 public:
  explicit SimulatedReadout(ReadoutNoiseModel model);

  int width() const override { return model_.width(); }
  Bitstring read(const Bitstring& ideal, std::int64_t clock, RandomStream& rng) const override;
  const ReadoutNoiseModel& model() const { return model_; }

 private:
  ReadoutNoiseModel model_;
};

}  // namespace rshadow
