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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rshadow/calibration.hpp"
#include "rshadow/interval.hpp"
#include "rshadow/random.hpp"
#include "rshadow/shadows.hpp"

namespace rshadow {

enum class PhaseKind { calibration, acquisition };

/// One contiguous block of the schedule. `index` counts phases of the same
/// kind; `shot_begin` is the offset within that kind's records and
/// `clock_begin` the position on the global device clock.
struct Phase {
  PhaseKind kind = PhaseKind::acquisition;
  int index = 0;
  std::int64_t shots = 0;
  std::int64_t shot_begin = 0;
  std::int64_t clock_begin = 0;
};

/// C_0, A_0, C_1, A_1, ..., A_{n-1}, C_n. Acquisition batch b is bracketed
/// by calibration phases b and b + 1.
struct ExperimentPlan {
  std::int64_t total_shots = 0;
  int n_batches = 0;
  std::int64_t calib_shots_per_batch = 0;
  std::vector<Phase> phases;

  const Phase& acquisition(int batch) const;
  const Phase& calibration(int index) const;
  std::int64_t total_clock() const;
};

ExperimentPlan make_plan(std::int64_t total_shots, int n_batches = 20,
                         std::int64_t calib_shots_per_batch = 600);

/// Deterministic function of the records and calibration coefficients.
using RecordEstimator =
    std::function<double(std::span<const ShadowShot>, const LocalCoefficients&)>;

enum class BootstrapModel {
  /// Fitted (basis, outcome) frequencies, sampled as a product over the
  /// support qubits, or jointly when `joint` is set.
  parametric,
  /// Records drawn with replacement.
  nonparametric,
};

struct BootstrapOptions {
  int resamples = 20;
  double level = 0.95;
  BootstrapModel model = BootstrapModel::parametric;
  /// Fit and resample the joint distribution over these qubits. The records
  /// and coefficients handed to the estimator are then projected onto them,
  /// so the estimator must address the support as qubits 0..k-1.
  std::optional<std::vector<int>> joint;
  /// When non-empty, every resample also redraws these calibration records
  /// from their empirical error-pattern distribution and refits f̃.
  std::span<const CalibrationShot> calibration;
};

struct BootstrapResult {
  double estimate = 0.0;
  double spread = 0.0;
  Interval interval;
  int resamples = 0;
};

/// estimate ± z · sd over resamples; resample r uses rng.split(r).
BootstrapResult bootstrap_ci(const RecordEstimator& estimator, std::span<const ShadowShot> shots,
                             const LocalCoefficients& f, const RandomStream& rng,
                             const BootstrapOptions& options = {});

/// Synthetic record set of the same size from the fitted model.
std::vector<ShadowShot> parametric_resample(std::span<const ShadowShot> shots, bool joint,
                                            RandomStream& rng);

enum class CalibrationPairing {
  /// The calibration phase right before the batch.
  before,
  /// The calibration phase right after the batch.
  after,
  /// Both neighbours pooled, weighted by their shot counts.
  bracketing,
};

struct BatchResult {
  int batch = 0;
  std::int64_t shots = 0;
  double estimate = 0.0;
  std::vector<double> f_local;
};

struct BatchedEstimate {
  std::vector<BatchResult> batches;
  /// Shot-weighted mean of the per-batch estimates.
  double pooled = 0.0;
};

/// Coefficients pooled from calibration estimates by shot count.
LocalCoefficients pool_coefficients(std::span<const CalibrationEstimate* const> parts);

/// `calibrations[c]` holds the estimate of calibration phase c (empty when the
/// phase was not run); batch b uses phases b and/or b + 1.
BatchedEstimate batched_estimates(const RecordEstimator& estimator,
                                  std::span<const ShadowShot> shots,
                                  std::span<const std::optional<CalibrationEstimate>> calibrations,
                                  CalibrationPairing pairing = CalibrationPairing::bracketing);

}  // namespace rshadow
