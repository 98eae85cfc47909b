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

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rshadow/bitstring.hpp"
#include "rshadow/random.hpp"

namespace rshadow {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Qubit2 = Eigen::Vector2cd;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;

namespace gates {
Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
Matrix2 phase_s();
Matrix2 phase_s_dag();
/// Pauli matrix for 'I', 'X', 'Y' or 'Z'.
Matrix2 pauli(char label);
/// exp(-i theta P / 2) for P = X, Y or Z.
Matrix2 rotation(char axis, double theta);
/// exp(-i theta Z⊗Z).
Matrix4 zz_phase(double theta);
}  // namespace gates

bool is_unitary(const Eigen::MatrixXcd& u, double tolerance = kUnitaryTolerance);

enum class GateKind { single, zz_phase, two_qubit };

/// A unitary acting on one or two qubits. Factories validate unitarity, so a
/// constructed Gate is always unitary within kUnitaryTolerance.
class Gate {
 public:
  static Gate single(int qubit, const Matrix2& u);
  /// exp(-i theta Z_a Z_b).
  static Gate zz_phase(int a, int b, double theta);
  /// Two-qubit unitary in the basis |q_a q_b>, q_a most significant.
  static Gate two_qubit(int a, int b, const Matrix4& u);

  GateKind kind() const { return kind_; }
  int target(int i) const { return targets_[static_cast<std::size_t>(i)]; }
  int arity() const { return kind_ == GateKind::single ? 1 : 2; }
  const Matrix2& matrix2() const { return single_; }
  const Matrix4& matrix4() const { return double_; }
  double angle() const { return angle_; }

 private:
  Gate() = default;

  GateKind kind_ = GateKind::single;
  std::array<int, 2> targets_{0, 0};
  Matrix2 single_ = Matrix2::Identity();
  Matrix4 double_ = Matrix4::Identity();
  double angle_ = 0.0;
};

/// Pure state of n <= kMaxQubits qubits. Qubit 0 is the most significant bit
/// of the amplitude index.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(int n_qubits);
  /// Takes ownership of `amplitudes`; the length must be a power of two and
  /// the norm 1 within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);
  /// Tensor product of single-qubit states, qubit 0 first.
  static StateVector product(std::span<const Qubit2> qubits);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  /// In-place U|psi>.
  void apply(const Gate& gate);
  void apply_single(int qubit, const Matrix2& u);

 private:
  StateVector() = default;
  void check_qubit(int q) const;

  int n_ = 0;
  std::vector<Complex> amps_;
};

/// Density matrix on k qubits, Hermitian with unit trace.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);
  static DensityMatrix pure(const StateVector& state);

  int n_qubits() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Complex trace() const { return rho_.trace(); }

 private:
  int n_;
  Eigen::MatrixXcd rho_;
};

StateVector apply_gate(StateVector state, const Gate& gate);

/// Computational-basis measurement with Born-rule probabilities. Consumes
/// exactly one uniform draw from `rng`.
Bitstring sample_z_basis(const StateVector& state, RandomStream& rng);

/// Partial trace onto `subset`; the first listed qubit becomes qubit 0 of the
/// result. Throws on duplicate or out-of-range indices.
DensityMatrix reduced_density(const StateVector& state, std::span<const int> subset);

/// <psi|P|psi> for a Pauli label such as "XIZ" (qubit 0 first).
double exact_expectation(const StateVector& state, std::string_view pauli);

/// Tr(rho^2).
double purity(const DensityMatrix& dm);

/// Hilbert-Schmidt inner product Tr(a^† b), real part.
double overlap(const DensityMatrix& a, const DensityMatrix& b);

/// Haar-random 2x2 unitary via QR of a complex Ginibre matrix with the
/// diagonal phases of R moved into Q.
Matrix2 haar_random_unitary(RandomStream& rng);
Gate haar_random_single_qubit(int qubit, RandomStream& rng);

}  // namespace rshadow
