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
#include <vector>

#include <Eigen/Dense>

#include "rshadow/noise.hpp"
#include "rshadow/quantum.hpp"

/// Exact small-register ground truth for the twirled noisy measurement
/// channel. Superoperators are Pauli transfer matrices in the normalized
/// Pauli basis σ_P = P / √(2^n); Pauli index digits are 0=I, 1=X, 2=Y, 3=Z
/// with qubit 0 the most significant base-4 digit.
namespace rshadow::oracle {

inline constexpr int kMaxOracleQubits = 3;

class Superoperator {
 public:
  Superoperator(int n_qubits, Eigen::MatrixXd ptm);
  static Superoperator identity(int n_qubits);

  int n_qubits() const { return n_; }
  const Eigen::MatrixXd& ptm() const { return ptm_; }
  double operator()(Eigen::Index row, Eigen::Index col) const { return ptm_(row, col); }

  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  int n_;
  Eigen::MatrixXd ptm_;
};

enum class TwirlEnsemble {
  /// {I, H, HS†} × {I, X} per qubit, the ensemble used for acquisition.
  pauli_axis_x_flip,
  /// All 24 single-qubit Cliffords per qubit.
  full_clifford,
};

/// Unnormalized n-qubit Pauli operator for a base-4 index.
Eigen::MatrixXcd pauli_operator(int index, int n_qubits);

/// Number of non-identity factors in a Pauli index.
int pauli_weight(int index, int n_qubits);
/// Bitmask of non-identity qubits, qubit 0 most significant.
unsigned pauli_support(int index, int n_qubits);

/// ω(U): ρ ↦ U ρ U†.
Superoperator pauli_transfer_matrix(const Eigen::MatrixXcd& unitary);

/// M_Z, the computational-basis dephasing channel.
Superoperator z_dephasing(int n_qubits);

/// Classical readout channel from transition(b_true, b_read), including the
/// dephasing of the ideal measurement.
Superoperator readout_channel_ptm(const Eigen::MatrixXd& transition);

/// w_e = 2^{-n} Σ_b P(b → b ⊕ e).
std::vector<double> x_symmetrized_weights(const Eigen::MatrixXd& transition);

/// Dephasing followed by ρ ↦ Σ_e w_e X^e ρ X^e.
Superoperator stochastic_x_channel_ptm(std::span<const double> weights);

/// E_U ω(U)ᵀ · M_Z Λ · ω(U) over the ensemble, with Λ the readout channel.
Superoperator build_noisy_channel(const Eigen::MatrixXd& transition,
                                  TwirlEnsemble ensemble = TwirlEnsemble::pauli_axis_x_flip);
Superoperator build_noisy_channel(const ReadoutNoiseModel& model,
                                  TwirlEnsemble ensemble = TwirlEnsemble::pauli_axis_x_flip,
                                  std::int64_t clock = 0);

/// Π_λ: projector onto Paulis whose support is exactly λ.
Superoperator support_projector(int n_qubits, unsigned lambda);

/// f_λ = Tr(M̃ Π_λ) / 3^{|λ|}, indexed by λ as a bitmask.
std::vector<double> expansion_coefficients(const Superoperator& channel);

/// Σ_λ f_λ Π_λ.
Superoperator irrep_reconstruction(int n_qubits, std::span<const double> f);

/// The 24 single-qubit Cliffords up to global phase, generated by H and S.
std::vector<Matrix2> single_qubit_cliffords();

/// Single-qubit coefficient of `qubit` from the exact marginal channel.
double local_coefficient(const ReadoutNoiseModel& model, int qubit, std::int64_t clock = 0);
std::vector<double> local_coefficients(const ReadoutNoiseModel& model, std::int64_t clock = 0);
/// f_(1,1) of the exact marginal channel on (i, j).
double pair_coefficient(const ReadoutNoiseModel& model, int i, int j, std::int64_t clock = 0);
/// f_(1,0) f_(0,1) - f_(1,1) for the marginal on (i, j); the exact value of
/// crosstalk_statistic.
double non_separability(const ReadoutNoiseModel& model, int i, int j, std::int64_t clock = 0);

/// Bias of the non-robust linear estimator for one qubit;
/// overlap_term = (O|ρ) - (O|I)/2.
double bias_fidelity_1q(double f_tilde, double overlap_term);
double bias_pauli_2q(double f1, double f2, double correlator);
double bias_purity_1q(double f_tilde, double overlap);
/// Expectation of the non-robust two-qubit overlap estimator under
/// separable readout noise with coefficients f1, f2.
double noisy_purity_2q(double f1, double f2, double overlap_1, double overlap_2,
                       double overlap_full);
/// |noisy_purity_2q(...) - overlap_full|.
double bias_purity_2q(double f1, double f2, double overlap_1, double overlap_2,
                      double overlap_full);

}  // namespace rshadow::oracle
