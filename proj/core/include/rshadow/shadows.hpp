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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rshadow/bitstring.hpp"
#include "rshadow/calibration.hpp"
#include "rshadow/noise.hpp"
#include "rshadow/quantum.hpp"
#include "rshadow/random.hpp"

namespace rshadow {

/// Measured Pauli axis. The basis change applied before the Z readout is
/// I for Z, H for X and H S† for Y.
enum class Basis : std::uint8_t { Z = 0, X = 1, Y = 2 };

char basis_char(Basis b);
Basis parse_basis(char c);
/// Gate g with g† Z g equal to the basis Pauli.
Matrix2 basis_rotation(Basis b);
Matrix2 basis_pauli(Basis b);

/// Per-qubit basis choices packed two bits per qubit; text form "ZXY",
/// qubit 0 first.
class BasisString {
 public:
  BasisString() = default;
  explicit BasisString(int width);
  static BasisString parse(std::string_view text);

  int width() const { return width_; }
  Basis operator[](int qubit) const {
    return static_cast<Basis>((packed_ >> (2 * qubit)) & 3u);
  }
  void set(int qubit, Basis b);
  std::uint32_t packed() const { return packed_; }
  BasisString project(std::span<const int> subset) const;
  std::string to_string() const;

  friend bool operator==(const BasisString&, const BasisString&) = default;

 private:
  int width_ = 0;
  std::uint32_t packed_ = 0;
};

/// One randomized measurement: basis rotation g, then X^flip_mask, then a
/// Z readout giving `outcome`.
struct ShadowShot {
  BasisString basis;
  Bitstring flip_mask;
  Bitstring outcome;
  int batch = 0;
  std::int64_t shot_index = 0;

  int width() const { return basis.width(); }
  /// Outcome with the flip layer undone: b ⊕ a.
  Bitstring adjusted() const { return outcome ^ flip_mask; }
};

/// Source of ideal computational-basis outcomes after per-qubit basis
/// rotations of a prepared state.
class ShotSampler {
 public:
  virtual ~ShotSampler() = default;
  virtual int width() const = 0;
  virtual Bitstring sample(const BasisString& bases, RandomStream& rng) const = 0;
};

class DenseSampler final : public ShotSampler {
 public:
  explicit DenseSampler(StateVector state);
  int width() const override { return state_.n_qubits(); }
  Bitstring sample(const BasisString& bases, RandomStream& rng) const override;

 private:
  StateVector state_;
};

/// Independent per-qubit sampling for product states.
class ProductSampler final : public ShotSampler {
 public:
  explicit ProductSampler(std::vector<Qubit2> qubits);
  int width() const override { return static_cast<int>(qubits_.size()); }
  Bitstring sample(const BasisString& bases, RandomStream& rng) const override;

 private:
  std::vector<Qubit2> qubits_;
};

/// Acquires `n_shots` randomized measurements. Shot t draws its bases and
/// flip mask from rng.split(clock_begin + t) and records that clock as its
/// shot_index. The effective measurement unitary per qubit is X^a g.
std::vector<ShadowShot> run_shadow_acquisition(const ShotSampler& prep, std::int64_t n_shots,
                                               const MeasurementBackend& device,
                                               const RandomStream& rng, int batch = 0,
                                               std::int64_t clock_begin = 0);

/// f⁻¹ g†|b⟩⟨b|g + (1 - f⁻¹)/2 · I, with b the flip-adjusted outcome bit.
Matrix2 snapshot_factor(Basis basis, int adjusted_bit, double f_inverse);

/// Robust classical snapshot as a tensor product of 2x2 factors.
class LocalSnapshot {
 public:
  explicit LocalSnapshot(std::vector<Matrix2> factors) : factors_(std::move(factors)) {}
  int width() const { return static_cast<int>(factors_.size()); }
  const Matrix2& factor(int qubit) const { return factors_.at(static_cast<std::size_t>(qubit)); }
  /// Full 2^n x 2^n operator, qubit 0 most significant. n <= 8.
  Eigen::MatrixXcd materialize() const;

 private:
  std::vector<Matrix2> factors_;
};

LocalSnapshot snapshot(const ShadowShot& shot, const LocalCoefficients& f);

/// Tensor product of single-qubit Hermitian operators on distinct qubits;
/// identity elsewhere.
class LocalObservable {
 public:
  LocalObservable() = default;
  LocalObservable& with(int qubit, const Matrix2& op);

  /// e.g. pauli({{0, 'Z'}, {3, 'X'}}).
  static LocalObservable pauli(std::vector<std::pair<int, char>> terms);
  /// |φ⟩⟨φ| on one qubit.
  static LocalObservable projector(int qubit, const Qubit2& phi);

  const std::vector<std::pair<int, Matrix2>>& terms() const { return terms_; }
  std::vector<int> support() const;

 private:
  std::vector<std::pair<int, Matrix2>> terms_;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Mean over shots of Π_j Tr(O_j · factor_j) on the observable's support;
/// std_error is the sample standard deviation over √T.
Estimate estimate_observable(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                             const LocalObservable& obs);

Estimate estimate_fidelity_1q(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                              const Qubit2& target, int qubit);

/// ⟨P_i P_j⟩ for Pauli labels P_i, P_j.
Estimate estimate_pauli_correlator(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                                   int qubit_i, char pauli_i, int qubit_j, char pauli_j);

struct PairOptions {
  /// Largest number of shot pairs enumerated directly; beyond it pairs are
  /// subsampled uniformly. Unused when the subset is small enough for the
  /// exact histogram reduction (|subset| <= 4).
  std::int64_t pair_cap = 1'000'000;
  std::uint64_t seed = 0x7061697273ull;
};

struct PairEstimate {
  double value = 0.0;
  /// Number of shot pairs averaged (or sampled).
  std::int64_t pairs = 0;
  /// True when every admissible pair contributed.
  bool exhaustive = true;
};

/// Single-pair value of the overlap estimator over all basis combinations:
///   Π_i [ f_i⁻² (δ_{b_i b'_i} δ_{U_i U'_i} - δ_{U_i U'_i}/2) + 1/2 ].
double naive_pair_value(const ShadowShot& s, const ShadowShot& t, const LocalCoefficients& f,
                        std::span<const int> subset);

/// Single-pair value of the same-basis estimator
///   Π_i (1/2) [ f_i⁻²/3 · (-1)^{b_i + b'_i} + 1 ].
/// Throws if the bases differ on the subset.
double samebasis_pair_value(const ShadowShot& s, const ShadowShot& t, const LocalCoefficients& f,
                            std::span<const int> subset);

/// Purity Tr(ρ_S²): average over distinct shot pairs.
PairEstimate estimate_purity_naive(std::span<const ShadowShot> shots, const LocalCoefficients& f,
                                   std::span<const int> subset, const PairOptions& options = {});
/// Overlap Tr(ρ_S σ_S) from two independent datasets.
PairEstimate estimate_purity_naive(std::span<const ShadowShot> shots_a,
                                   std::span<const ShadowShot> shots_b, const LocalCoefficients& f,
                                   std::span<const int> subset, const PairOptions& options = {});

/// Same-basis estimators: only pairs with identical bases on the subset.
PairEstimate estimate_purity_samebasis(std::span<const ShadowShot> shots,
                                       const LocalCoefficients& f, std::span<const int> subset,
                                       const PairOptions& options = {});
PairEstimate estimate_purity_samebasis(std::span<const ShadowShot> shots_a,
                                       std::span<const ShadowShot> shots_b,
                                       const LocalCoefficients& f, std::span<const int> subset,
                                       const PairOptions& options = {});

/// Records restricted to `subset` (listed order); batch and shot index kept.
std::vector<ShadowShot> project_records(std::span<const ShadowShot> shots,
                                        std::span<const int> subset);

}  // namespace rshadow
