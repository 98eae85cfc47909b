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
#include "rshadow/shadows.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace rshadow {

char basis_char(Basis b) {
  switch (b) {
    case Basis::Z: return 'Z';
    case Basis::X: return 'X';
    case Basis::Y: return 'Y';
  }
  throw std::invalid_argument("basis_char: invalid basis");
}

Basis parse_basis(char c) {
  switch (c) {
    case 'Z': return Basis::Z;
    case 'X': return Basis::X;
    case 'Y': return Basis::Y;
    default: break;
  }
  throw std::invalid_argument(std::string("parse_basis: unknown basis '") + c + "'");
}

Matrix2 basis_rotation(Basis b) {
  switch (b) {
    case Basis::Z: return gates::identity();
    case Basis::X: return gates::hadamard();
    case Basis::Y: return gates::hadamard() * gates::phase_s_dag();
  }
  throw std::invalid_argument("basis_rotation: invalid basis");
}

Matrix2 basis_pauli(Basis b) { return gates::pauli(basis_char(b)); }

BasisString::BasisString(int width) : width_(width) {
  if (width < 0 || width > kMaxQubits) {
    throw std::invalid_argument("BasisString: width out of range");
  }
}

BasisString BasisString::parse(std::string_view text) {
  BasisString out(static_cast<int>(text.size()));
  for (std::size_t q = 0; q < text.size(); ++q) out.set(static_cast<int>(q), parse_basis(text[q]));
  return out;
}

void BasisString::set(int qubit, Basis b) {
  if (qubit < 0 || qubit >= width_) throw std::out_of_range("BasisString: qubit out of range");
  const int shift = 2 * qubit;
  packed_ = (packed_ & ~(3u << shift)) | (static_cast<std::uint32_t>(b) << shift);
}

BasisString BasisString::project(std::span<const int> subset) const {
  BasisString out(static_cast<int>(subset.size()));
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] < 0 || subset[k] >= width_) {
      throw std::out_of_range("BasisString::project: qubit out of range");
    }
    out.set(static_cast<int>(k), (*this)[subset[k]]);
  }
  return out;
}

std::string BasisString::to_string() const {
  std::string s(static_cast<std::size_t>(width_), 'Z');
  for (int q = 0; q < width_; ++q) s[static_cast<std::size_t>(q)] = basis_char((*this)[q]);
  return s;
}

DenseSampler::DenseSampler(StateVector state) : state_(std::move(state)) {}

Bitstring DenseSampler::sample(const BasisString& bases, RandomStream& rng) const {
  if (bases.width() != width()) throw std::invalid_argument("DenseSampler: basis width mismatch");
  StateVector rotated = state_;
  for (int q = 0; q < bases.width(); ++q) {
    if (bases[q] != Basis::Z) rotated.apply_single(q, basis_rotation(bases[q]));
  }
  return sample_z_basis(rotated, rng);
}

ProductSampler::ProductSampler(std::vector<Qubit2> qubits) : qubits_(std::move(qubits)) {
  if (qubits_.empty() || qubits_.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("ProductSampler: invalid qubit count");
  }
  for (const auto& v : qubits_) {
    if (std::abs(v.norm() - 1.0) > kNormTolerance) {
      throw std::invalid_argument("ProductSampler: factor is not normalized");
    }
  }
}

Bitstring ProductSampler::sample(const BasisString& bases, RandomStream& rng) const {
  if (bases.width() != width()) throw std::invalid_argument("ProductSampler: basis width mismatch");
  Bitstring out = Bitstring::zeros(width());
  for (int q = 0; q < width(); ++q) {
    const Qubit2 v = basis_rotation(bases[q]) * qubits_[static_cast<std::size_t>(q)];
    if (rng.uniform() < std::norm(v(1))) out.set(q, 1);
  }
  return out;
}

std::vector<ShadowShot> run_shadow_acquisition(const ShotSampler& prep, std::int64_t n_shots,
                                               const MeasurementBackend& device,
                                               const RandomStream& rng, int batch,
                                               std::int64_t clock_begin) {
  if (n_shots < 1) throw std::invalid_argument("run_shadow_acquisition: n_shots must be >= 1");
  const int n = prep.width();
  if (device.width() != n) {
    throw std::invalid_argument("run_shadow_acquisition: device width does not match state");
  }
  const std::uint32_t mask = (1u << n) - 1u;
  std::vector<ShadowShot> shots;
  shots.reserve(static_cast<std::size_t>(n_shots));
  for (std::int64_t t = 0; t < n_shots; ++t) {
    const std::int64_t clock = clock_begin + t;
    RandomStream stream = rng.split(static_cast<std::uint64_t>(clock));
    BasisString bases(n);
    for (int q = 0; q < n; ++q) bases.set(q, static_cast<Basis>(stream.below(3)));
    const Bitstring flips(n, static_cast<std::uint32_t>(stream()) & mask);
    // X^a after the basis change only relabels the ideal outcome.
    const Bitstring ideal = prep.sample(bases, stream) ^ flips;
    Bitstring outcome = device.read(ideal, clock, stream);
    shots.push_back({bases, flips, outcome, batch, clock});
  }
  return shots;
}

Matrix2 snapshot_factor(Basis basis, int adjusted_bit, double f_inverse) {
  const Matrix2 g = basis_rotation(basis);
  const Qubit2 v = g.adjoint().col(adjusted_bit & 1);
  return f_inverse * (v * v.adjoint()) + 0.5 * (1.0 - f_inverse) * Matrix2::Identity();
}

Eigen::MatrixXcd LocalSnapshot::materialize() const {
  if (factors_.empty() || factors_.size() > 8) {
    throw std::invalid_argument("LocalSnapshot::materialize: width must be in [1, 8]");
  }
  Eigen::MatrixXcd out = factors_.front();
  for (std::size_t q = 1; q < factors_.size(); ++q) {
    const Eigen::MatrixXcd prev = out;
    out.resize(prev.rows() * 2, prev.cols() * 2);
    for (Eigen::Index r = 0; r < prev.rows(); ++r) {
      for (Eigen::Index c = 0; c < prev.cols(); ++c) {
        out.block<2, 2>(2 * r, 2 * c) = prev(r, c) * factors_[q];
      }
    }
  }
  return out;
}

LocalSnapshot snapshot(const ShadowShot& shot, const LocalCoefficients& f) {
  if (f.width() != shot.width()) throw std::invalid_argument("snapshot: width mismatch");
  const Bitstring b = shot.adjusted();
  std::vector<Matrix2> factors;
  factors.reserve(static_cast<std::size_t>(shot.width()));
  for (int q = 0; q < shot.width(); ++q) {
    factors.push_back(snapshot_factor(shot.basis[q], b.bit(q), f.inverse(q)));
  }
  return LocalSnapshot(std::move(factors));
}

LocalObservable& LocalObservable::with(int qubit, const Matrix2& op) {
  if (qubit < 0 || qubit >= kMaxQubits) throw std::out_of_range("LocalObservable: qubit out of range");
  for (const auto& [q, _] : terms_) {
    if (q == qubit) throw std::invalid_argument("LocalObservable: qubit listed twice");
  }
  if (!op.isApprox(op.adjoint(), 1e-12)) {
    throw std::invalid_argument("LocalObservable: operator is not Hermitian");
  }
  terms_.emplace_back(qubit, op);
  return *this;
}

LocalObservable LocalObservable::pauli(std::vector<std::pair<int, char>> terms) {
  LocalObservable obs;
  for (auto [q, label] : terms) obs.with(q, gates::pauli(label));
  return obs;
}

LocalObservable LocalObservable::projector(int qubit, const Qubit2& phi) {
  if (std::abs(phi.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("LocalObservable::projector: state is not normalized");
  }
  LocalObservable obs;
  obs.with(qubit, phi * phi.adjoint());
  return obs;
}

std::vector<int> LocalObservable::support() const {
  std::vector<int> s;
  for (const auto& [q, _] : terms_) s.push_back(q);
  return s;
}

namespace {

void check_shots(std::span<const ShadowShot> shots, int width, const char* who) {
  for (const auto& s : shots) {
    if (s.width() != width || s.outcome.width() != width || s.flip_mask.width() != width) {
      throw std::invalid_argument(std::string(who) + ": records have inconsistent widths");
    }
  }
}

void check_subset(std::span<const int> subset, int width, const char* who) {
  if (subset.empty()) throw std::invalid_argument(std::string(who) + ": empty subset");
  std::vector<int> seen(subset.begin(), subset.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument(std::string(who) + ": repeated qubit in subset");
  }
  if (seen.front() < 0 || seen.back() >= width) {
    throw std::out_of_range(std::string(who) + ": qubit out of range");
  }
}

}  // namespace

Estimate estimate_observable(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                             const LocalObservable& obs) {
  if (shots.empty()) throw std::invalid_argument("estimate_observable: no shots");
  const int width = shots.front().width();
  check_shots(shots, width, "estimate_observable");
  if (f.width() != width) throw std::invalid_argument("estimate_observable: calibration width mismatch");
  const auto support = obs.support();
  for (int q : support) {
    if (q >= width) throw std::out_of_range("estimate_observable: observable exceeds register");
  }
  f.require_invertible(support);

  // Tr(O ρ̂_j) = Tr(O)/2 + f⁻¹ (-1)^b Tr(O P_U)/2, tabulated per (term, basis, bit).
  const auto& terms = obs.terms();
  std::vector<std::array<std::array<double, 2>, 3>> table(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [q, op] = terms[k];
    const double half_trace = 0.5 * op.trace().real();
    for (int b = 0; b < 3; ++b) {
      const double pauli_part =
          0.5 * f.inverse(q) * (op * basis_pauli(static_cast<Basis>(b))).trace().real();
      table[k][static_cast<std::size_t>(b)] = {half_trace + pauli_part, half_trace - pauli_part};
    }
  }

  std::vector<double> values(shots.size());
  for (std::size_t t = 0; t < shots.size(); ++t) {
    const Bitstring b = shots[t].adjusted();
    double v = 1.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const int q = terms[k].first;
      v *= table[k][static_cast<std::size_t>(shots[t].basis[q])][static_cast<std::size_t>(b.bit(q))];
    }
    values[t] = v;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const auto T = static_cast<double>(values.size());
  const double se = values.size() > 1 ? std::sqrt(ss / (T - 1.0) / T) : 0.0;
  return {mean, se, static_cast<std::int64_t>(values.size())};
}

Estimate estimate_fidelity_1q(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                              const Qubit2& target, int qubit) {
  return estimate_observable(shots, f, LocalObservable::projector(qubit, target));
}

Estimate estimate_pauli_correlator(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                                   int qubit_i, char pauli_i, int qubit_j, char pauli_j) {
  return estimate_observable(shots, f, LocalObservable::pauli({{qubit_i, pauli_i}, {qubit_j, pauli_j}}));
}

namespace {

// Per-qubit kernel indexed by digit 2·basis + adjusted bit; admissible[d][e]
// marks pairs that enter the average at all.
struct QubitKernel {
  std::array<std::array<double, 6>, 6> value{};
  std::array<std::array<bool, 6>, 6> admissible{};
};

QubitKernel naive_kernel(double f_inverse) {
  const double f2 = f_inverse * f_inverse;
  QubitKernel k;
  for (int d = 0; d < 6; ++d) {
    for (int e = 0; e < 6; ++e) {
      const bool same_basis = d / 2 == e / 2;
      const bool same_bit = d % 2 == e % 2;
      k.value[d][e] = same_basis ? f2 * ((same_bit ? 1.0 : 0.0) - 0.5) + 0.5 : 0.5;
      k.admissible[d][e] = true;
    }
  }
  return k;
}

QubitKernel samebasis_kernel(double f_inverse) {
  const double f2 = f_inverse * f_inverse;
  QubitKernel k;
  for (int d = 0; d < 6; ++d) {
    for (int e = 0; e < 6; ++e) {
      const bool same_basis = d / 2 == e / 2;
      const double sign = d % 2 == e % 2 ? 1.0 : -1.0;
      k.value[d][e] = same_basis ? 0.5 * (f2 / 3.0 * sign + 1.0) : 0.0;
      k.admissible[d][e] = same_basis;
    }
  }
  return k;
}

// Digits of every shot on the subset, row-major (shot, position).
struct Coded {
  int k = 0;
  std::vector<std::uint8_t> digits;
  std::size_t size() const { return k == 0 ? 0 : digits.size() / static_cast<std::size_t>(k); }
  const std::uint8_t* row(std::size_t t) const { return digits.data() + t * static_cast<std::size_t>(k); }
};

Coded encode(std::span<const ShadowShot> shots, std::span<const int> subset) {
  Coded c;
  c.k = static_cast<int>(subset.size());
  c.digits.resize(shots.size() * subset.size());
  for (std::size_t t = 0; t < shots.size(); ++t) {
    const Bitstring b = shots[t].adjusted();
    for (std::size_t m = 0; m < subset.size(); ++m) {
      const int q = subset[m];
      c.digits[t * subset.size() + m] =
          static_cast<std::uint8_t>(2 * static_cast<int>(shots[t].basis[q]) + b.bit(q));
    }
  }
  return c;
}

std::uint32_t basis_key(const std::uint8_t* row, int k) {
  std::uint32_t key = 0;
  for (int m = 0; m < k; ++m) key = key * 3 + row[m] / 2;
  return key;
}

bool pair_admissible(const std::vector<QubitKernel>& kern, const std::uint8_t* a, const std::uint8_t* b) {
  for (std::size_t m = 0; m < kern.size(); ++m) {
    if (!kern[m].admissible[a[m]][b[m]]) return false;
  }
  return true;
}

double pair_value(const std::vector<QubitKernel>& kern, const std::uint8_t* a, const std::uint8_t* b) {
  double v = 1.0;
  for (std::size_t m = 0; m < kern.size(); ++m) v *= kern[m].value[a[m]][b[m]];
  return v;
}

constexpr int kHistogramMaxSubset = 4;

// Exact U-statistic through category counts. With `b` empty the pairs are
// the distinct ordered pairs within `a`.
PairEstimate histogram_estimate(const std::vector<QubitKernel>& kern, const Coded& a, const Coded* b) {
  const int k = static_cast<int>(kern.size());
  std::size_t n_cat = 1;
  for (int m = 0; m < k; ++m) n_cat *= 6;
  auto counts_of = [&](const Coded& c) {
    std::vector<double> counts(n_cat, 0.0);
    for (std::size_t t = 0; t < c.size(); ++t) {
      std::size_t code = 0;
      for (int m = 0; m < k; ++m) code = code * 6 + c.row(t)[m];
      counts[code] += 1.0;
    }
    return counts;
  };
  const auto ca = counts_of(a);
  const auto cb = b ? counts_of(*b) : ca;

  std::vector<std::size_t> nz_a, nz_b;
  for (std::size_t c = 0; c < n_cat; ++c) {
    if (ca[c] > 0) nz_a.push_back(c);
    if (cb[c] > 0) nz_b.push_back(c);
  }
  auto digits_of = [&](std::size_t code) {
    std::array<std::uint8_t, kHistogramMaxSubset> d{};
    for (int m = k - 1; m >= 0; --m) {
      d[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>(code % 6);
      code /= 6;
    }
    return d;
  };

  double sum = 0.0;
  double weight = 0.0;
  for (std::size_t ci : nz_a) {
    const auto di = digits_of(ci);
    for (std::size_t cj : nz_b) {
      const auto dj = digits_of(cj);
      if (!pair_admissible(kern, di.data(), dj.data())) continue;
      double n_pairs = ca[ci] * cb[cj];
      if (!b && ci == cj) n_pairs -= ca[ci];
      sum += n_pairs * pair_value(kern, di.data(), dj.data());
      weight += n_pairs;
    }
  }
  if (weight <= 0.0) throw std::invalid_argument("pair estimator: no admissible shot pairs");
  return {sum / weight, static_cast<std::int64_t>(b ? weight : weight / 2.0), true};
}

// Direct enumeration or uniform subsampling over admissible pairs, grouped
// by basis pattern when only same-basis pairs are admissible.
PairEstimate enumerate_estimate(const std::vector<QubitKernel>& kern, bool same_basis_only,
                                const Coded& a, const Coded* b, const PairOptions& options) {
  const int k = static_cast<int>(kern.size());
  const Coded& other = b ? *b : a;

  std::map<std::uint32_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
  if (same_basis_only) {
    for (std::size_t t = 0; t < a.size(); ++t) groups[basis_key(a.row(t), k)].first.push_back(t);
    if (b) {
      for (std::size_t t = 0; t < b->size(); ++t) groups[basis_key(b->row(t), k)].second.push_back(t);
    }
  } else {
    auto& g = groups[0];
    for (std::size_t t = 0; t < a.size(); ++t) g.first.push_back(t);
    if (b) {
      for (std::size_t t = 0; t < b->size(); ++t) g.second.push_back(t);
    }
  }
  std::vector<const std::pair<std::vector<std::size_t>, std::vector<std::size_t>>*> group_list;
  std::vector<double> group_pairs;
  double total = 0.0;
  for (const auto& [_, g] : groups) {
    const auto na = static_cast<double>(g.first.size());
    const double pairs = b ? na * static_cast<double>(g.second.size()) : na * (na - 1.0) / 2.0;
    if (pairs <= 0.0) continue;
    group_list.push_back(&g);
    group_pairs.push_back(pairs);
    total += pairs;
  }
  if (total <= 0.0) throw std::invalid_argument("pair estimator: no admissible shot pairs");

  double sum = 0.0;
  if (total <= static_cast<double>(options.pair_cap)) {
    for (const auto* g : group_list) {
      const auto& ia = g->first;
      if (b) {
        for (std::size_t s : ia) {
          for (std::size_t t : g->second) sum += pair_value(kern, a.row(s), other.row(t));
        }
      } else {
        for (std::size_t x = 0; x < ia.size(); ++x) {
          for (std::size_t y = x + 1; y < ia.size(); ++y) {
            sum += pair_value(kern, a.row(ia[x]), a.row(ia[y]));
          }
        }
      }
    }
    return {sum / total, static_cast<std::int64_t>(total), true};
  }

  if (options.pair_cap < 1) throw std::invalid_argument("pair estimator: pair_cap must be >= 1");
  RandomStream rng(options.seed);
  const DiscreteSampler pick_group(group_pairs);
  for (std::int64_t draw = 0; draw < options.pair_cap; ++draw) {
    const auto* g = group_list[pick_group(rng)];
    const auto& ia = g->first;
    if (b) {
      const std::size_t s = ia[rng.below(ia.size())];
      const std::size_t t = g->second[rng.below(g->second.size())];
      sum += pair_value(kern, a.row(s), other.row(t));
    } else {
      const std::size_t x = rng.below(ia.size());
      std::size_t y = rng.below(ia.size() - 1);
      if (y >= x) ++y;
      sum += pair_value(kern, a.row(ia[x]), a.row(ia[y]));
    }
  }
  return {sum / static_cast<double>(options.pair_cap), options.pair_cap, false};
}

enum class Kernel { naive, samebasis };

PairEstimate pair_estimate(Kernel kind, std::span<const ShadowShot> shots_a,
                           const std::span<const ShadowShot>* shots_b, const LocalCoefficients& f,
                           std::span<const int> subset, const PairOptions& options,
                           const char* who) {
  if (shots_a.empty() || (shots_b && shots_b->empty())) {
    throw std::invalid_argument(std::string(who) + ": no shots");
  }
  const int width = shots_a.front().width();
  check_shots(shots_a, width, who);
  if (shots_b) check_shots(*shots_b, width, who);
  if (!shots_b && shots_a.size() < 2) {
    throw std::invalid_argument(std::string(who) + ": purity needs at least two shots");
  }
  if (f.width() != width) throw std::invalid_argument(std::string(who) + ": calibration width mismatch");
  check_subset(subset, width, who);
  f.require_invertible(subset);

  std::vector<QubitKernel> kern;
  for (int q : subset) {
    kern.push_back(kind == Kernel::naive ? naive_kernel(f.inverse(q)) : samebasis_kernel(f.inverse(q)));
  }
  const Coded a = encode(shots_a, subset);
  const Coded b = shots_b ? encode(*shots_b, subset) : Coded{};
  const Coded* pb = shots_b ? &b : nullptr;
  if (static_cast<int>(subset.size()) <= kHistogramMaxSubset) return histogram_estimate(kern, a, pb);
  return enumerate_estimate(kern, kind == Kernel::samebasis, a, pb, options);
}

std::vector<std::uint8_t> pair_digits(const ShadowShot& s, std::span<const int> subset) {
  const Bitstring b = s.adjusted();
  std::vector<std::uint8_t> d;
  for (int q : subset) d.push_back(static_cast<std::uint8_t>(2 * static_cast<int>(s.basis[q]) + b.bit(q)));
  return d;
}

}  // namespace

double naive_pair_value(const ShadowShot& s, const ShadowShot& t, const LocalCoefficients& f,
                        std::span<const int> subset) {
  check_subset(subset, std::min(s.width(), t.width()), "naive_pair_value");
  std::vector<QubitKernel> kern;
  for (int q : subset) kern.push_back(naive_kernel(f.inverse(q)));
  return pair_value(kern, pair_digits(s, subset).data(), pair_digits(t, subset).data());
}

double samebasis_pair_value(const ShadowShot& s, const ShadowShot& t, const LocalCoefficients& f,
                            std::span<const int> subset) {
  check_subset(subset, std::min(s.width(), t.width()), "samebasis_pair_value");
  std::vector<QubitKernel> kern;
  for (int q : subset) kern.push_back(samebasis_kernel(f.inverse(q)));
  const auto ds = pair_digits(s, subset);
  const auto dt = pair_digits(t, subset);
  if (!pair_admissible(kern, ds.data(), dt.data())) {
    throw std::invalid_argument("samebasis_pair_value: bases differ on the subset");
  }
  return pair_value(kern, ds.data(), dt.data());
}

PairEstimate estimate_purity_naive(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                                   std::span<const int> subset, const PairOptions& options) {
  return pair_estimate(Kernel::naive, shots, nullptr, f, subset, options, "estimate_purity_naive");
}

PairEstimate estimate_purity_naive(std::span<const ShadowShot> shots_a,
                                   std::span<const ShadowShot> shots_b, const LocalCoefficients& f,
                                   std::span<const int> subset, const PairOptions& options) {
  return pair_estimate(Kernel::naive, shots_a, &shots_b, f, subset, options, "estimate_purity_naive");
}

PairEstimate estimate_purity_samebasis(std::span<const ShadowShot> shots,
                                       const LocalCoefficients& f, std::span<const int> subset,
                                       const PairOptions& options) {
  return pair_estimate(Kernel::samebasis, shots, nullptr, f, subset, options,
                       "estimate_purity_samebasis");
}

PairEstimate estimate_purity_samebasis(std::span<const ShadowShot> shots_a,
                                       std::span<const ShadowShot> shots_b,
                                       const LocalCoefficients& f, std::span<const int> subset,
                                       const PairOptions& options) {
  return pair_estimate(Kernel::samebasis, shots_a, &shots_b, f, subset, options,
                       "estimate_purity_samebasis");
}

std::vector<ShadowShot> project_records(std::span<const ShadowShot> shots,
                                        std::span<const int> subset) {
  std::vector<ShadowShot> out;
  out.reserve(shots.size());
  for (const auto& s : shots) {
    out.push_back({s.basis.project(subset), s.flip_mask.project(subset), s.outcome.project(subset),
                   s.batch, s.shot_index});
  }
  return out;
}

}  // namespace rshadow
