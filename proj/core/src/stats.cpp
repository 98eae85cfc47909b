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
#include "rshadow/stats.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace rshadow {

const Phase& ExperimentPlan::acquisition(int batch) const {
  if (batch < 0 || batch >= n_batches) throw std::out_of_range("ExperimentPlan: batch out of range");
  return phases.at(static_cast<std::size_t>(2 * batch + 1));
}

const Phase& ExperimentPlan::calibration(int index) const {
  if (index < 0 || index > n_batches) throw std::out_of_range("ExperimentPlan: calibration phase out of range");
  return phases.at(static_cast<std::size_t>(2 * index));
}

std::int64_t ExperimentPlan::total_clock() const {
  return phases.empty() ? 0 : phases.back().clock_begin + phases.back().shots;
}

ExperimentPlan make_plan(std::int64_t total_shots, int n_batches, std::int64_t calib_shots_per_batch) {
  if (total_shots < 1) throw std::invalid_argument("make_plan: total shots must be >= 1");
  if (n_batches < 1) throw std::invalid_argument("make_plan: need at least one batch");
  if (n_batches > total_shots) throw std::invalid_argument("make_plan: more batches than shots");
  if (calib_shots_per_batch < 1) {
    throw std::invalid_argument("make_plan: calibration phases need at least one shot");
  }
  ExperimentPlan plan{total_shots, n_batches, calib_shots_per_batch, {}};
  const std::int64_t base = total_shots / n_batches;
  const std::int64_t extra = total_shots % n_batches;
  std::int64_t clock = 0;
  std::int64_t acq_begin = 0;
  auto add_calibration = [&](int c) {
    plan.phases.push_back({PhaseKind::calibration, c, calib_shots_per_batch, c * calib_shots_per_batch, clock});
    clock += calib_shots_per_batch;
  };
  for (int b = 0; b < n_batches; ++b) {
    add_calibration(b);
    const std::int64_t size = base + (b < extra ? 1 : 0);
    plan.phases.push_back({PhaseKind::acquisition, b, size, acq_begin, clock});
    acq_begin += size;
    clock += size;
  }
  add_calibration(n_batches);
  return plan;
}

namespace {

struct Category {
  std::uint32_t bases;
  std::uint32_t bits;
};

ShadowShot synthetic_shot(int width, std::uint32_t bases, std::uint32_t bits, std::int64_t t) {
  ShadowShot s;
  s.basis = BasisString(width);
  for (int q = 0; q < width; ++q) s.basis.set(q, static_cast<Basis>((bases >> (2 * q)) & 3u));
  s.flip_mask = Bitstring::zeros(width);
  s.outcome = Bitstring(width, bits);
  s.shot_index = t;
  return s;
}

}  // namespace

std::vector<ShadowShot> parametric_resample(std::span<const ShadowShot> shots, bool joint,
                                            RandomStream& rng) {
  if (shots.empty()) throw std::invalid_argument("parametric_resample: no shots");
  const int width = shots.front().width();
  const auto n = static_cast<std::int64_t>(shots.size());
  std::vector<ShadowShot> out;
  out.reserve(shots.size());

  if (joint) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> counts;
    for (const auto& s : shots) counts[{s.basis.packed(), s.adjusted().value()}] += 1.0;
    std::vector<Category> cats;
    std::vector<double> weights;
    for (const auto& [key, c] : counts) {
      cats.push_back({key.first, key.second});
      weights.push_back(c);
    }
    const DiscreteSampler draw(weights);
    for (std::int64_t t = 0; t < n; ++t) {
      const Category& c = cats[draw(rng)];
      out.push_back(synthetic_shot(width, c.bases, c.bits, t));
    }
    return out;
  }

  // Per qubit: 6 categories (basis, adjusted bit).
  std::vector<std::vector<double>> counts(static_cast<std::size_t>(width), std::vector<double>(6, 0.0));
  for (const auto& s : shots) {
    const Bitstring b = s.adjusted();
    for (int q = 0; q < width; ++q) {
      counts[static_cast<std::size_t>(q)][static_cast<std::size_t>(2 * static_cast<int>(s.basis[q]) + b.bit(q))] += 1.0;
    }
  }
  std::vector<DiscreteSampler> draws;
  for (const auto& c : counts) draws.emplace_back(c);
  for (std::int64_t t = 0; t < n; ++t) {
    std::uint32_t bases = 0;
    Bitstring bits = Bitstring::zeros(width);
    for (int q = 0; q < width; ++q) {
      const std::size_t d = draws[static_cast<std::size_t>(q)](rng);
      bases |= static_cast<std::uint32_t>(d / 2) << (2 * q);
      bits.set(q, static_cast<int>(d % 2));
    }
    out.push_back(synthetic_shot(width, bases, bits.value(), t));
  }
  return out;
}

BootstrapResult bootstrap_ci(const RecordEstimator& estimator, std::span<const ShadowShot> shots,
                             const LocalCoefficients& f, const RandomStream& rng,
                             const BootstrapOptions& options) {
  if (shots.empty()) throw std::invalid_argument("bootstrap_ci: no shots");
  if (options.resamples < 2) throw std::invalid_argument("bootstrap_ci: need at least two resamples");

  std::vector<ShadowShot> projected;
  std::span<const ShadowShot> records = shots;
  LocalCoefficients coeffs = f;
  if (options.joint) {
    projected = project_records(shots, *options.joint);
    records = projected;
    coeffs = f.project(*options.joint);
  }
  std::optional<ErrorPatternModel> calib;
  if (!options.calibration.empty()) calib.emplace(options.calibration);

  BootstrapResult out;
  out.estimate = estimator(records, coeffs);
  out.resamples = options.resamples;

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(options.resamples));
  for (int r = 0; r < options.resamples; ++r) {
    RandomStream stream = rng.split(static_cast<std::uint64_t>(r));
    try {
      std::vector<ShadowShot> sample;
      if (options.model == BootstrapModel::parametric) {
        sample = parametric_resample(records, options.joint.has_value(), stream);
      } else {
        sample.reserve(records.size());
        for (std::size_t t = 0; t < records.size(); ++t) sample.push_back(records[stream.below(records.size())]);
      }
      LocalCoefficients f_r = coeffs;
      if (calib) {
        f_r = calib->resample(stream);
        if (options.joint) f_r = f_r.project(*options.joint);
      }
      values.push_back(estimator(sample, f_r));
    } catch (const NonInvertibleCalibration& e) {
      throw NonInvertibleCalibration(e.qubits());
    } catch (const std::exception& e) {
      throw std::runtime_error("bootstrap resample " + std::to_string(r) + ": " + e.what());
    }
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  out.spread = std::sqrt(ss / static_cast<double>(values.size() - 1));
  out.interval = normal_interval(out.estimate, out.spread, options.level);
  return out;
}

LocalCoefficients pool_coefficients(std::span<const CalibrationEstimate* const> parts) {
  if (parts.empty()) throw std::invalid_argument("pool_coefficients: nothing to pool");
  const int width = parts.front()->width();
  std::vector<double> f(static_cast<std::size_t>(width), 0.0);
  double total = 0.0;
  for (const auto* p : parts) {
    if (p->width() != width) throw std::invalid_argument("pool_coefficients: width mismatch");
    const auto w = static_cast<double>(p->n_shots);
    for (int q = 0; q < width; ++q) f[static_cast<std::size_t>(q)] += w * p->f_local[static_cast<std::size_t>(q)];
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("pool_coefficients: no calibration shots");
  for (double& x : f) x /= total;
  return LocalCoefficients(std::move(f));
}

BatchedEstimate batched_estimates(const RecordEstimator& estimator,
                                  std::span<const ShadowShot> shots,
                                  std::span<const std::optional<CalibrationEstimate>> calibrations,
                                  CalibrationPairing pairing) {
  std::map<int, std::vector<ShadowShot>> by_batch;
  for (const auto& s : shots) by_batch[s.batch].push_back(s);
  if (by_batch.empty()) throw std::invalid_argument("batched_estimates: no shots");

  auto phase = [&](int c) -> const CalibrationEstimate* {
    if (c < 0 || c >= static_cast<int>(calibrations.size())) return nullptr;
    const auto& e = calibrations[static_cast<std::size_t>(c)];
    return e ? &*e : nullptr;
  };

  BatchedEstimate out;
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [b, records] : by_batch) {
    std::vector<const CalibrationEstimate*> parts;
    if (pairing != CalibrationPairing::after && phase(b)) parts.push_back(phase(b));
    if (pairing != CalibrationPairing::before && phase(b + 1)) parts.push_back(phase(b + 1));
    if (parts.empty()) {
      throw std::invalid_argument("batched_estimates: batch " + std::to_string(b) +
                                  " has no adjacent calibration");
    }
    const LocalCoefficients f = pool_coefficients(parts);
    BatchResult r{b, static_cast<std::int64_t>(records.size()), estimator(records, f), f.values()};
    weighted += static_cast<double>(r.shots) * r.estimate;
    total += static_cast<double>(r.shots);
    out.batches.push_back(std::move(r));
  }
  out.pooled = weighted / total;
  return out;
}

}  // namespace rshadow
