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
#include "rshadow/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace rshadow {

namespace {

std::string describe(const std::vector<int>& qubits) {
  std::string s = "calibration is not invertible (f <= 0) on qubit(s)";
  for (int q : qubits) s += " " + std::to_string(q);
  return s;
}

QubitPair normalized(int i, int j) { return i < j ? QubitPair{i, j} : QubitPair{j, i}; }

struct PatternHistogram {
  std::vector<std::uint32_t> patterns;
  std::vector<double> counts;
};

struct CoefficientSet {
  std::vector<double> f_local;
  std::vector<double> f_pair;
};

// f̂ from error-pattern counts. Agreement counts are summed as integers-in-
// doubles, so the result does not depend on record order.
CoefficientSet coefficients_from(const PatternHistogram& h, int width,
                                 const std::vector<QubitPair>& pairs) {
  CoefficientSet out;
  out.f_local.assign(static_cast<std::size_t>(width), 0.0);
  out.f_pair.assign(pairs.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < h.patterns.size(); ++k) {
    const std::uint32_t e = h.patterns[k];
    const double c = h.counts[k];
    total += c;
    for (int q = 0; q < width; ++q) {
      const bool err = (e >> (width - 1 - q)) & 1u;
      out.f_local[static_cast<std::size_t>(q)] += err ? -c : c;
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const bool ei = (e >> (width - 1 - pairs[p].first)) & 1u;
      const bool ej = (e >> (width - 1 - pairs[p].second)) & 1u;
      out.f_pair[p] += (ei != ej) ? -c : c;
    }
  }
  for (auto& f : out.f_local) f /= 3.0 * total;
  for (auto& f : out.f_pair) f /= 9.0 * total;
  return out;
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

NonInvertibleCalibration::NonInvertibleCalibration(std::vector<int> qubits)
    : std::runtime_error(describe(qubits)), qubits_(std::move(qubits)) {}

LocalCoefficients::LocalCoefficients(std::vector<double> f) : f_(std::move(f)) {}

LocalCoefficients LocalCoefficients::noiseless(int n_qubits) {
  return LocalCoefficients(std::vector<double>(static_cast<std::size_t>(n_qubits), 1.0 / 3.0));
}

double LocalCoefficients::inverse(int qubit) const {
  const double f = (*this)[qubit];
  if (!(f > 0.0)) throw NonInvertibleCalibration({qubit});
  return 1.0 / f;
}

void LocalCoefficients::require_invertible(std::span<const int> support) const {
  std::vector<int> bad;
  for (int q : support) {
    if (!((*this)[q] > 0.0)) bad.push_back(q);
  }
  if (!bad.empty()) throw NonInvertibleCalibration(std::move(bad));
}

LocalCoefficients LocalCoefficients::project(std::span<const int> subset) const {
  std::vector<double> out;
  out.reserve(subset.size());
  for (int q : subset) out.push_back((*this)[q]);
  return LocalCoefficients(std::move(out));
}

std::vector<int> CalibrationEstimate::non_invertible_qubits() const {
  std::vector<int> bad;
  for (int q = 0; q < width(); ++q) {
    if (!(f_local[static_cast<std::size_t>(q)] > 0.0)) bad.push_back(q);
  }
  return bad;
}

Interval CalibrationEstimate::f_local_ci(int qubit, double level) const {
  if (!sigma) throw std::logic_error("calibration estimate has no bootstrap spread");
  return normal_interval(f_local.at(static_cast<std::size_t>(qubit)),
                         sigma->f_local.at(static_cast<std::size_t>(qubit)), level);
}

Interval CalibrationEstimate::p_flip_ci(int qubit, double level) const {
  if (!sigma) throw std::logic_error("calibration estimate has no bootstrap spread");
  return normal_interval(p_flip.at(static_cast<std::size_t>(qubit)),
                         sigma->p_flip.at(static_cast<std::size_t>(qubit)), level);
}

std::vector<CalibrationShot> run_calibration(int n_qubits, std::int64_t n_shots,
                                             const MeasurementBackend& device,
                                             const RandomStream& rng, int batch,
                                             std::int64_t clock_begin) {
  if (n_shots < 1) throw std::invalid_argument("run_calibration: n_shots must be >= 1");
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("run_calibration: invalid qubit count");
  }
  if (device.width() != n_qubits) {
    throw std::invalid_argument("run_calibration: device width does not match register");
  }
  const std::uint32_t mask = (1u << n_qubits) - 1u;
  std::vector<CalibrationShot> shots;
  shots.reserve(static_cast<std::size_t>(n_shots));
  for (std::int64_t t = 0; t < n_shots; ++t) {
    const std::int64_t clock = clock_begin + t;
    RandomStream stream = rng.split(static_cast<std::uint64_t>(clock));
    const Bitstring flips(n_qubits, static_cast<std::uint32_t>(stream()) & mask);
    // X^a|0..0> is the basis state |a>, so the ideal readout is a itself.
    Bitstring outcome = device.read(flips, clock, stream);
    shots.push_back({flips, outcome, batch, clock});
  }
  return shots;
}

CalibrationEstimate estimate_f(std::span<const CalibrationShot> shots,
                               const CalibrationOptions& options) {
  if (shots.empty()) throw std::invalid_argument("estimate_f: no calibration shots");
  const int width = shots.front().flip_mask.width();

  std::vector<QubitPair> pairs;
  for (auto [i, j] : options.pairs) {
    if (i < 0 || j < 0 || i >= width || j >= width || i == j) {
      throw std::invalid_argument("estimate_f: invalid pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
    }
    pairs.push_back(normalized(i, j));
  }
  if (options.adjacent_pairs) {
    for (int q = 0; q + 1 < width; ++q) pairs.emplace_back(q, q + 1);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::unordered_map<std::uint32_t, std::size_t> index;
  PatternHistogram hist;
  for (const auto& s : shots) {
    if (s.flip_mask.width() != width || s.outcome.width() != width) {
      throw std::invalid_argument("estimate_f: inconsistent record widths");
    }
    const std::uint32_t e = s.flip_mask.value() ^ s.outcome.value();
    auto [it, inserted] = index.try_emplace(e, hist.patterns.size());
    if (inserted) {
      hist.patterns.push_back(e);
      hist.counts.push_back(0.0);
    }
    hist.counts[it->second] += 1.0;
  }

  const CoefficientSet point = coefficients_from(hist, width, pairs);
  CalibrationEstimate est;
  est.f_local = point.f_local;
  est.n_shots = static_cast<std::int64_t>(shots.size());
  for (double f : est.f_local) est.p_flip.push_back(0.5 * (1.0 - 3.0 * f));
  for (std::size_t p = 0; p < pairs.size(); ++p) est.f_pair[pairs[p]] = point.f_pair[p];

  if (options.bootstrap_resamples > 0) {
    // Parametric bootstrap: the flip masks are uniform by construction, so
    // the only fitted component is the categorical distribution of the
    // error pattern a ⊕ b.
    const DiscreteSampler draw(hist.counts);
    RandomStream rng(options.bootstrap_seed);
    const auto resamples = static_cast<std::size_t>(options.bootstrap_resamples);
    std::vector<std::vector<double>> f_rep(static_cast<std::size_t>(width));
    std::vector<std::vector<double>> pair_rep(pairs.size()), xt_rep(pairs.size());
    PatternHistogram synthetic{hist.patterns, std::vector<double>(hist.patterns.size())};
    for (std::size_t r = 0; r < resamples; ++r) {
      std::fill(synthetic.counts.begin(), synthetic.counts.end(), 0.0);
      for (std::size_t t = 0; t < shots.size(); ++t) synthetic.counts[draw(rng)] += 1.0;
      const CoefficientSet rep = coefficients_from(synthetic, width, pairs);
      for (int q = 0; q < width; ++q) {
        f_rep[static_cast<std::size_t>(q)].push_back(rep.f_local[static_cast<std::size_t>(q)]);
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        pair_rep[p].push_back(rep.f_pair[p]);
        xt_rep[p].push_back(rep.f_local[static_cast<std::size_t>(pairs[p].first)] *
                                rep.f_local[static_cast<std::size_t>(pairs[p].second)] -
                            rep.f_pair[p]);
      }
    }
    CalibrationSpread spread;
    spread.resamples = options.bootstrap_resamples;
    for (int q = 0; q < width; ++q) {
      const double sd = sample_sd(f_rep[static_cast<std::size_t>(q)]);
      spread.f_local.push_back(sd);
      spread.p_flip.push_back(1.5 * sd);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      spread.f_pair[pairs[p]] = sample_sd(pair_rep[p]);
      // Resampling the observed patterns cannot create a joint error that
      // never occurred, so rare pairs get a vanishing spread. Floor it at the
      // sampling sd of (4/9)(m_i m_j - m_ij) for independent flips.
      const double pi = est.p_flip[static_cast<std::size_t>(pairs[p].first)];
      const double pj = est.p_flip[static_cast<std::size_t>(pairs[p].second)];
      const double null_sd =
          4.0 / 9.0 * std::sqrt(std::max(0.0, pi * (1.0 - pi) * pj * (1.0 - pj)) / static_cast<double>(shots.size()));
      spread.crosstalk[pairs[p]] = std::max(sample_sd(xt_rep[p]), null_sd);
    }
    est.sigma = std::move(spread);
  }
  return est;
}

ErrorPatternModel::ErrorPatternModel(std::span<const CalibrationShot> shots) {
  if (shots.empty()) throw std::invalid_argument("ErrorPatternModel: no calibration shots");
  width_ = shots.front().flip_mask.width();
  n_shots_ = static_cast<std::int64_t>(shots.size());
  std::unordered_map<std::uint32_t, std::size_t> index;
  for (const auto& s : shots) {
    if (s.flip_mask.width() != width_ || s.outcome.width() != width_) {
      throw std::invalid_argument("ErrorPatternModel: inconsistent record widths");
    }
    const std::uint32_t e = s.flip_mask.value() ^ s.outcome.value();
    auto [it, inserted] = index.try_emplace(e, patterns_.size());
    if (inserted) {
      patterns_.push_back(e);
      counts_.push_back(0.0);
    }
    counts_[it->second] += 1.0;
  }
  draw_.emplace(counts_);
}

LocalCoefficients ErrorPatternModel::coefficients() const {
  return LocalCoefficients(coefficients_from({patterns_, counts_}, width_, {}).f_local);
}

LocalCoefficients ErrorPatternModel::resample(RandomStream& rng) const {
  PatternHistogram synthetic{patterns_, std::vector<double>(patterns_.size(), 0.0)};
  for (std::int64_t t = 0; t < n_shots_; ++t) synthetic.counts[(*draw_)(rng)] += 1.0;
  return LocalCoefficients(coefficients_from(synthetic, width_, {}).f_local);
}

double crosstalk_statistic(const CalibrationEstimate& est, int i, int j) {
  const auto it = est.f_pair.find(normalized(i, j));
  if (it == est.f_pair.end()) {
    throw std::invalid_argument("crosstalk_statistic: pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") was not estimated");
  }
  return est.f_local.at(static_cast<std::size_t>(i)) * est.f_local.at(static_cast<std::size_t>(j)) -
         it->second;
}

double crosstalk_sigma(const CalibrationEstimate& est, int i, int j) {
  if (!est.sigma) throw std::logic_error("calibration estimate has no bootstrap spread");
  const auto it = est.sigma->crosstalk.find(normalized(i, j));
  if (it == est.sigma->crosstalk.end()) {
    throw std::invalid_argument("crosstalk_sigma: pair was not estimated");
  }
  return it->second;
}

std::vector<QubitPair> all_pairs(int n_qubits) {
  std::vector<QubitPair> out;
  for (int i = 0; i < n_qubits; ++i) {
    for (int j = i + 1; j < n_qubits; ++j) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace rshadow
