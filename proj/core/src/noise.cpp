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
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rshadow {

namespace {

// p flip composed with an independent flip of probability q.
double compose_flip(double p, double q) { return p + q - 2.0 * p * q; }

void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(what + " = " + std::to_string(p) + " is outside [0, 1]");
  }
}

}  // namespace

DriftSchedule::DriftSchedule(std::vector<std::pair<std::int64_t, double>> knots)
    : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("DriftSchedule: needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].second > 0.0)) {
      throw std::invalid_argument("DriftSchedule: factors must be positive");
    }
    if (i > 0 && knots_[i].first <= knots_[i - 1].first) {
      throw std::invalid_argument("DriftSchedule: knots must be strictly increasing");
    }
  }
}

DriftSchedule DriftSchedule::constant(double factor) { return DriftSchedule({{0, factor}}); }

DriftSchedule DriftSchedule::linear(std::int64_t begin, std::int64_t end, double from, double to) {
  return DriftSchedule({{begin, from}, {end, to}});
}

double DriftSchedule::factor(std::int64_t clock) const {
  if (clock <= knots_.front().first) return knots_.front().second;
  if (clock >= knots_.back().first) return knots_.back().second;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), clock,
                             [](std::int64_t c, const auto& k) { return c < k.first; });
  auto lo = std::prev(hi);
  const double t = static_cast<double>(clock - lo->first) /
                   static_cast<double>(hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double DriftSchedule::max_factor() const {
  double m = 0.0;
  for (const auto& k : knots_) m = std::max(m, k.second);
  return m;
}

void ReadoutNoiseModel::validate() const {
  if (per_qubit.empty() || width() > kMaxQubits) {
    throw std::invalid_argument("ReadoutNoiseModel: width must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  const double scale = drift ? drift->max_factor() : 1.0;
  for (int q = 0; q < width(); ++q) {
    const auto& r = per_qubit[static_cast<std::size_t>(q)];
    const std::string where = "qubit " + std::to_string(q);
    check_probability(r.p01, where + " p01");
    check_probability(r.p10, where + " p10");
    check_probability(r.p01 * scale, where + " drift-scaled p01");
    check_probability(r.p10 * scale, where + " drift-scaled p10");
  }
  for (const auto& pf : pairwise) {
    if (pf.first < 0 || pf.first >= width() || pf.second < 0 || pf.second >= width() ||
        pf.first == pf.second) {
      throw std::invalid_argument("ReadoutNoiseModel: invalid pair (" + std::to_string(pf.first) +
                                  ", " + std::to_string(pf.second) + ")");
    }
    check_probability(pf.p_both, "pair p_both");
    check_probability(pf.p_both * scale, "drift-scaled pair p_both");
  }
}

ReadoutNoiseModel ReadoutNoiseModel::noiseless(int n_qubits) {
  return symmetric(n_qubits, 0.0);
}

ReadoutNoiseModel ReadoutNoiseModel::symmetric(int n_qubits, double p_flip) {
  ReadoutNoiseModel m;
  m.per_qubit.assign(static_cast<std::size_t>(n_qubits), FlipRates{p_flip, p_flip});
  m.validate();
  return m;
}

ReadoutNoiseModel ReadoutNoiseModel::at(std::int64_t clock) const {
  const double c = drift ? drift->factor(clock) : 1.0;
  ReadoutNoiseModel out;
  out.per_qubit.reserve(per_qubit.size());
  for (const auto& r : per_qubit) out.per_qubit.push_back({r.p01 * c, r.p10 * c});
  for (auto pf : pairwise) {
    pf.p_both *= c;
    out.pairwise.push_back(pf);
  }
  return out;
}

ReadoutNoiseModel ReadoutNoiseModel::restrict(std::span<const int> subset,
                                              std::int64_t clock) const {
  const ReadoutNoiseModel now = at(clock);
  std::vector<int> position(per_qubit.size(), -1);
  ReadoutNoiseModel out;
  for (int q : subset) {
    if (q < 0 || q >= width()) throw std::out_of_range("restrict: qubit out of range");
    if (position[static_cast<std::size_t>(q)] >= 0) {
      throw std::invalid_argument("restrict: duplicate qubit");
    }
    position[static_cast<std::size_t>(q)] = out.width();
    out.per_qubit.push_back(now.per_qubit[static_cast<std::size_t>(q)]);
  }
  for (const auto& pf : now.pairwise) {
    const int a = position[static_cast<std::size_t>(pf.first)];
    const int b = position[static_cast<std::size_t>(pf.second)];
    if (a >= 0 && b >= 0) {
      out.pairwise.push_back({a, b, pf.p_both});
    } else if (a >= 0 || b >= 0) {
      // Flips compose by XOR and commute, so a one-sided pair term is an
      // additional independent flip of the surviving qubit.
      auto& r = out.per_qubit[static_cast<std::size_t>(a >= 0 ? a : b)];
      r.p01 = compose_flip(r.p01, pf.p_both);
      r.p10 = compose_flip(r.p10, pf.p_both);
    }
  }
  return out;
}

Bitstring apply_readout_noise(const Bitstring& true_bits, const ReadoutNoiseModel& model,
                              std::int64_t clock, RandomStream& rng) {
  if (true_bits.width() != model.width()) {
    throw std::invalid_argument("apply_readout_noise: bitstring width " +
                                std::to_string(true_bits.width()) + " != model width " +
                                std::to_string(model.width()));
  }
  const double c = model.drift ? model.drift->factor(clock) : 1.0;
  Bitstring out = true_bits;
  for (int q = 0; q < model.width(); ++q) {
    const auto& r = model.per_qubit[static_cast<std::size_t>(q)];
    const double p = (true_bits.bit(q) ? r.p10 : r.p01) * c;
    if (rng.uniform() < p) out.flip(q);
  }
  for (const auto& pf : model.pairwise) {
    if (rng.uniform() < pf.p_both * c) {
      out.flip(pf.first);
      out.flip(pf.second);
    }
  }
  return out;
}

Eigen::MatrixXd transition_matrix(const ReadoutNoiseModel& model, std::int64_t clock) {
  const int n = model.width();
  if (n < 1 || n > 12) throw std::invalid_argument("transition_matrix: width must be in [1, 12]");
  const ReadoutNoiseModel now = model.at(clock);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd t(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (Eigen::Index bp = 0; bp < dim; ++bp) {
      double p = 1.0;
      for (int q = 0; q < n; ++q) {
        const int shift = n - 1 - q;
        const int in = static_cast<int>((b >> shift) & 1);
        const int out = static_cast<int>((bp >> shift) & 1);
        const auto& r = now.per_qubit[static_cast<std::size_t>(q)];
        const double flip = in ? r.p10 : r.p01;
        p *= (in == out) ? 1.0 - flip : flip;
      }
      t(b, bp) = p;
    }
  }
  for (const auto& pf : now.pairwise) {
    const Eigen::Index mask = (Eigen::Index{1} << (n - 1 - pf.first)) |
                              (Eigen::Index{1} << (n - 1 - pf.second));
    Eigen::MatrixXd next = (1.0 - pf.p_both) * t;
    for (Eigen::Index bp = 0; bp < dim; ++bp) next.col(bp ^ mask) += pf.p_both * t.col(bp);
    t = std::move(next);
  }
  return t;
}

namespace {

constexpr std::array<PresetInfo, 3> kPresets = {{
    {PulsePreset::pulse_1500us, "pulse-1500us", 0.0015, 0.0027, 0.0022, 12000},
    {PulsePreset::pulse_300us, "pulse-300us", 0.0093, 0.0195, 0.0128, 12000},
    {PulsePreset::pulse_150us, "pulse-150us", 0.0080, 0.0570, 0.0206, 31200},
}};

constexpr std::uint64_t kPresetSeed = 0x7072657365747321ull;

}  // namespace

std::span<const PresetInfo> all_presets() { return kPresets; }

const PresetInfo& preset_info(PulsePreset preset) {
  for (const auto& p : kPresets) {
    if (p.preset == preset) return p;
  }
  throw std::invalid_argument("unknown preset");
}

PulsePreset parse_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p.preset;
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected pulse-1500us, pulse-300us or pulse-150us)");
}

ReadoutNoiseModel make_preset(PulsePreset preset) {
  const PresetInfo& info = preset_info(preset);
  RandomStream rng(kPresetSeed, static_cast<std::uint64_t>(preset));
  std::vector<double> u(kPresetQubits);
  for (auto& x : u) x = rng.uniform();
  // Pin the extremes to the ends of the reported range.
  const auto [lo_it, hi_it] = std::minmax_element(u.begin(), u.end());
  *lo_it = 0.0;
  *hi_it = 1.0;

  // Rates low + (high - low) u^k keep the range; the mean decreases
  // monotonically in k, so bisect k onto the reported mean.
  const double target = (info.mean - info.low) / (info.high - info.low);
  auto mean_for = [&](double k) {
    double s = 0.0;
    for (double x : u) s += std::pow(x, k);
    return s / static_cast<double>(u.size());
  };
  double log_lo = std::log(1e-6), log_hi = std::log(1e6);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (log_lo + log_hi);
    if (mean_for(std::exp(mid)) > target) {
      log_lo = mid;
    } else {
      log_hi = mid;
    }
  }
  const double k = std::exp(0.5 * (log_lo + log_hi));

  ReadoutNoiseModel model;
  for (double x : u) {
    const double p = info.low + (info.high - info.low) * std::pow(x, k);
    model.per_qubit.push_back({p, p});
  }
  model.validate();
  return model;
}

SimulatedReadout::SimulatedReadout(ReadoutNoiseModel model) : model_(std::move(model)) {
  model_.validate();
}

Bitstring SimulatedReadout::read(const Bitstring& ideal, std::int64_t clock,
                                 RandomStream& rng) const {
  return apply_readout_noise(ideal, model_, clock, rng);
}

}  // namespace rshadow
