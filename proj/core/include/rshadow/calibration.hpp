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
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rshadow/bitstring.hpp"
#include "rshadow/interval.hpp"
#include "rshadow/noise.hpp"
#include "rshadow/random.hpp"

namespace rshadow {

/// One calibration shot: |0..0> prepared, X^flip_mask applied, then read out.
struct CalibrationShot {
  Bitstring flip_mask;
  Bitstring outcome;
  int batch = 0;
  std::int64_t shot_index = 0;

  /// Bits where the readout disagrees with the applied flips.
  Bitstring error() const { return flip_mask ^ outcome; }
};

using QubitPair = std::pair<int, int>;

class NonInvertibleCalibration : public std::runtime_error {
 public:
  explicit NonInvertibleCalibration(std::vector<int> qubits);
  const std::vector<int>& qubits() const { return qubits_; }

 private:
  std::vector<int> qubits_;
};

/// Per-qubit noisy expansion coefficients f̃_j used to build robust
/// snapshots. The noiseless value is 1/3 on every qubit.
class LocalCoefficients {
 public:
  explicit LocalCoefficients(std::vector<double> f);
  static LocalCoefficients noiseless(int n_qubits);

  int width() const { return static_cast<int>(f_.size()); }
  double operator[](int qubit) const { return f_.at(static_cast<std::size_t>(qubit)); }
  const std::vector<double>& values() const { return f_; }

  /// 1 / f̃_j. Throws NonInvertibleCalibration when f̃_j <= 0.
  double inverse(int qubit) const;
  /// Throws NonInvertibleCalibration listing every qubit of `support` with
  /// f̃_j <= 0.
  void require_invertible(std::span<const int> support) const;
  LocalCoefficients project(std::span<const int> subset) const;

 private:
  std::vector<double> f_;
};

struct CalibrationSpread {
  int resamples = 0;
  std::vector<double> f_local;
  std::vector<double> p_flip;
  std::map<QubitPair, double> f_pair;
  std::map<QubitPair, double> crosstalk;
};

struct CalibrationEstimate {
  std::vector<double> f_local;
  std::map<QubitPair, double> f_pair;
  std::vector<double> p_flip;
  std::int64_t n_shots = 0;
  /// Bootstrap standard deviations, present when resampling was requested.
  std::optional<CalibrationSpread> sigma;

  int width() const { return static_cast<int>(f_local.size()); }
  /// Qubits whose channel is not invertible (f̃_j <= 0).
  std::vector<int> non_invertible_qubits() const;
  bool invertible() const { return non_invertible_qubits().empty(); }
  LocalCoefficients coefficients() const { return LocalCoefficients(f_local); }

  /// 95% normal intervals from the bootstrap spread.
  Interval f_local_ci(int qubit, double level = 0.95) const;
  Interval p_flip_ci(int qubit, double level = 0.95) const;
};

struct CalibrationOptions {
  /// Pairs whose two-qubit coefficient f̃_(1,1) is estimated.
  std::vector<QubitPair> pairs;
  /// Also estimate every nearest-neighbour pair (q, q+1).
  bool adjacent_pairs = true;
  /// Bootstrap resamples of the error-pattern distribution; 0 disables.
  int bootstrap_resamples = 200;
  std::uint64_t bootstrap_seed = 0x63616c6962ull;
};

/// Runs `n_shots` X-twirled calibration shots. Shot t uses the stream
/// rng.split(clock_begin + t) and records shot_index = clock_begin + t.
std::vector<CalibrationShot> run_calibration(int n_qubits, std::int64_t n_shots,
                                             const MeasurementBackend& device,
                                             const RandomStream& rng, int batch = 0,
                                             std::int64_t clock_begin = 0);

/// Empirical means of the single-shot estimators
///   f̂_i = (1/3)(-1)^{a_i ⊕ b_i},  f̂_ij = (1/9)(-1)^{a_i ⊕ b_i ⊕ a_j ⊕ b_j},
/// with p_flip_i = (1 - 3 f̃_i) / 2.
CalibrationEstimate estimate_f(std::span<const CalibrationShot> shots,
                               const CalibrationOptions& options = {});

/// Empirical distribution of calibration error patterns a ⊕ b. Flip masks
/// are uniform by construction, so this is the whole fitted model.
class ErrorPatternModel {
 public:
  explicit ErrorPatternModel(std::span<const CalibrationShot> shots);

  int width() const { return width_; }
  std::int64_t shots() const { return n_shots_; }
  LocalCoefficients coefficients() const;
  /// Local coefficients of a synthetic run of the same size.
  LocalCoefficients resample(RandomStream& rng) const;

 private:
  int width_ = 0;
  std::int64_t n_shots_ = 0;
  std::vector<std::uint32_t> patterns_;
  std::vector<double> counts_;
  std::optional<DiscreteSampler> draw_;
};

/// Non-separability f̃_i f̃_j - f̃_ij; zero for crosstalk-free readout.
double crosstalk_statistic(const CalibrationEstimate& est, int i, int j);
/// Bootstrap standard deviation of the statistic, floored at its sampling
/// spread under independent flips.
double crosstalk_sigma(const CalibrationEstimate& est, int i, int j);

std::vector<QubitPair> all_pairs(int n_qubits);

}  // namespace rshadow
