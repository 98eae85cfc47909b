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
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rshadow/calibration.hpp"
#include "rshadow/interval.hpp"
#include "rshadow/noise.hpp"
#include "rshadow/shadows.hpp"
#include "rshadow/states.hpp"
#include "rshadow/stats.hpp"

namespace rshadow {

const char* version();

/// Invalid or inconsistent configuration; `field` is a dotted path such as
/// "plan.shots".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class StateKind { haar_product, qaoa, pce };

struct StateSpec {
  StateKind kind = StateKind::haar_product;
  int n_qubits = 12;
  std::uint64_t seed = 1;
  std::filesystem::path graph_file;
  double gamma = kQaoaGamma;
  double beta = kQaoaBeta;
  std::optional<std::filesystem::path> theta_file;
  std::uint64_t train_seed = 1;
  int train_steps = 500;
};

struct NoiseSpec {
  std::optional<PulsePreset> preset;
  std::optional<double> symmetric;
  std::optional<ReadoutNoiseModel> model;
  /// Linear drift of every rate from `first` to `second` times its base value
  /// across the run.
  std::optional<std::pair<double, double>> drift;
  std::vector<PairFlip> extra_pairs;
};

struct PlanSpec {
  std::int64_t shots = 100000;
  int batches = 20;
  /// 0: derived from the preset's calibration budget, else 1000.
  std::int64_t calibration_shots_per_phase = 0;
};

enum class PurityEstimator { naive, same_basis };

struct CorrelatorSpec {
  int i = 0;
  int j = 1;
  char pauli_i = 'Z';
  char pauli_j = 'Z';
  std::string label;
};

struct EstimandSpec {
  bool all_fidelities = false;
  std::vector<int> fidelities;
  /// Use the PCE variable map as the correlator list.
  bool pce_correlators = false;
  std::vector<CorrelatorSpec> correlators;
  bool all_pair_purities = false;
  std::vector<std::vector<int>> purities;
  PurityEstimator purity_estimator = PurityEstimator::same_basis;
};

enum class CalibrationUse { pooled, batched };

struct EstimationSpec {
  CalibrationUse calibration = CalibrationUse::pooled;
  int bootstrap_resamples = 20;
  bool refit_calibration = true;
  int calibration_bootstrap = 200;
  std::int64_t pair_cap = 1'000'000;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  StateSpec state;
  NoiseSpec noise;
  PlanSpec plan;
  EstimandSpec estimands;
  EstimationSpec estimation;
  std::filesystem::path output = "rshadow-out";
  /// Robust columns also use f = 1/3.
  bool non_robust = false;
};

/// Relative paths resolve against `base_dir`, then $RSHADOW_DATA_DIR, then the
/// bundled data directory.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

std::filesystem::path resolve_data_file(const std::filesystem::path& name,
                                        const std::filesystem::path& base_dir = {});

struct PreparedState {
  StateKind kind = StateKind::haar_product;
  StateVector state{1};
  std::unique_ptr<ShotSampler> sampler;
  /// Per-qubit fidelity targets (product states only).
  std::vector<Qubit2> targets;
  std::optional<PceProblem> pce;
  std::vector<double> pce_theta;
};

PreparedState prepare_state(const StateSpec& spec);

std::string state_name(StateKind kind);
std::string noise_label(const NoiseSpec& spec);

ExperimentPlan plan_for(const ExperimentConfig& config);
ReadoutNoiseModel build_noise_model(const NoiseSpec& spec, int width, const ExperimentPlan& plan);

struct RunData {
  ExperimentPlan plan;
  std::vector<CalibrationShot> calibration;
  std::vector<ShadowShot> shadows;
};

/// Runs every phase of the plan on the simulated device; calibration phases
/// draw from seed stream 1 and acquisition phases from stream 2.
RunData simulate_run(const ExperimentConfig& config, const PreparedState& prepared,
                     const ReadoutNoiseModel& model, bool calibration_only = false);

enum class EstimandKind { fidelity, correlator, purity };

struct Estimand {
  EstimandKind kind = EstimandKind::fidelity;
  std::vector<int> qubits;
  /// Pauli labels for correlators, one per qubit.
  std::string paulis;
  std::string label;
};

std::vector<Estimand> resolve_estimands(const ExperimentConfig& config, const PreparedState& prepared);

struct EstimateRow {
  Estimand estimand;
  std::string estimator;
  double exact = 0.0;
  double robust = 0.0;
  Interval robust_ci;
  double non_robust = 0.0;
  Interval non_robust_ci;
  /// NaN when no closed form applies.
  double theory_bias = 0.0;
};

struct BatchRow {
  std::string estimand;
  int batch = 0;
  std::int64_t shots = 0;
  double robust = 0.0;
};

struct CalibrationSummary {
  std::string noise;
  CalibrationEstimate pooled;
  std::vector<CalibrationEstimate> phases;
  std::vector<std::int64_t> phase_clock;
  std::vector<double> p_flip_true;
};

struct EstimationReport {
  std::string state;
  std::string noise;
  std::int64_t shots = 0;
  CalibrationSummary calibration;
  std::vector<EstimateRow> rows;
  std::vector<BatchRow> batches;
};

CalibrationSummary summarize_calibration(const ExperimentConfig& config, const RunData& run,
                                         const ReadoutNoiseModel& model);

/// Throws NonInvertibleCalibration when robust estimation is impossible.
EstimationReport estimate_run(const ExperimentConfig& config, const PreparedState& prepared,
                              const ReadoutNoiseModel& model, const RunData& run);

inline constexpr int kCsvSchemaVersion = 1;

void write_calibration_outputs(const std::filesystem::path& dir, const CalibrationSummary& summary);
void write_estimate_outputs(const std::filesystem::path& dir, const EstimationReport& report);
void write_run_meta(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const std::string& command);

/// Panel CSVs from one or more run directories.
void report_figures(std::span<const std::filesystem::path> run_dirs, const std::filesystem::path& out);

void cmd_calibrate(const ExperimentConfig& config);
void cmd_acquire(const ExperimentConfig& config);
/// Reads the records written by cmd_acquire from the output directory.
void cmd_estimate(const ExperimentConfig& config);
void cmd_run_all(const ExperimentConfig& config);

}  // namespace rshadow
