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
#include "rshadow/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rshadow {

namespace gates {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix2 hadamard() {
  Matrix2 m;
  m << 1, 1, 1, -1;
  return m / std::numbers::sqrt2;
}

Matrix2 phase_s() {
  Matrix2 m;
  m << 1, 0, 0, Complex(0, 1);
  return m;
}

Matrix2 phase_s_dag() { return phase_s().adjoint(); }

Matrix2 pauli(char label) {
  switch (label) {
    case 'I': return identity();
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: throw std::invalid_argument(std::string("unknown Pauli label '") + label + "'");
  }
}

Matrix2 rotation(char axis, double theta) {
  if (axis != 'X' && axis != 'Y' && axis != 'Z') {
    throw std::invalid_argument(std::string("unknown rotation axis '") + axis + "'");
  }
  return std::cos(theta / 2) * identity() - Complex(0, 1) * std::sin(theta / 2) * pauli(axis);
}

Matrix4 zz_phase(double theta) {
  Matrix4 m = Matrix4::Zero();
  const Complex same = std::exp(Complex(0, -theta));
  const Complex diff = std::exp(Complex(0, theta));
  m(0, 0) = same;
  m(1, 1) = diff;
  m(2, 2) = diff;
  m(3, 3) = same;
  return m;
}

}  // namespace gates

bool is_unitary(const Eigen::MatrixXcd& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tolerance;
}

Gate Gate::single(int qubit, const Matrix2& u) {
  if (qubit < 0) throw std::out_of_range("Gate: negative qubit index");
  if (!is_unitary(u)) throw std::invalid_argument("Gate: matrix is not unitary");
  Gate g;
  g.kind_ = GateKind::single;
  g.targets_ = {qubit, qubit};
  g.single_ = u;
  return g;
}

Gate Gate::zz_phase(int a, int b, double theta) {
  if (a < 0 || b < 0) throw std::out_of_range("Gate: negative qubit index");
  if (a == b) throw std::invalid_argument("Gate: two-qubit gate needs distinct targets");
  Gate g;
  g.kind_ = GateKind::zz_phase;
  g.targets_ = {a, b};
  g.angle_ = theta;
  g.double_ = gates::zz_phase(theta);
  return g;
}

Gate Gate::two_qubit(int a, int b, const Matrix4& u) {
  if (a < 0 || b < 0) throw std::out_of_range("Gate: negative qubit index");
  if (a == b) throw std::invalid_argument("Gate: two-qubit gate needs distinct targets");
  if (!is_unitary(u)) throw std::invalid_argument("Gate: matrix is not unitary");
  Gate g;
  g.kind_ = GateKind::two_qubit;
  g.targets_ = {a, b};
  g.double_ = u;
  return g;
}

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex(0, 0));
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("StateVector: length must be a power of two");
  }
  const int n = std::countr_zero(dim);
  if (n > kMaxQubits) throw std::invalid_argument("StateVector: too many qubits");
  StateVector s;
  s.n_ = n;
  s.amps_ = std::move(amplitudes);
  if (std::abs(s.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
  return s;
}

StateVector StateVector::product(std::span<const Qubit2> qubits) {
  StateVector s(static_cast<int>(qubits.size()));
  for (std::size_t i = 0; i < s.amps_.size(); ++i) {
    Complex a = 1.0;
    for (int q = 0; q < s.n_; ++q) {
      const int bit = static_cast<int>((i >> (s.n_ - 1 - q)) & 1u);
      a *= qubits[static_cast<std::size_t>(q)](bit);
    }
    s.amps_[i] = a;
  }
  if (std::abs(s.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("StateVector::product: factors are not normalized");
  }
  return s;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_) + "-qubit register");
  }
}

void StateVector::apply_single(int qubit, const Matrix2& u) {
  check_qubit(qubit);
  const std::size_t stride = std::size_t{1} << (n_ - 1 - qubit);
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i + stride];
      amps_[i] = u00 * a0 + u01 * a1;
      amps_[i + stride] = u10 * a0 + u11 * a1;
    }
  }
}

void StateVector::apply(const Gate& gate) {
  if (gate.kind() == GateKind::single) {
    apply_single(gate.target(0), gate.matrix2());
    return;
  }
  const int a = gate.target(0);
  const int b = gate.target(1);
  check_qubit(a);
  check_qubit(b);
  const std::size_t ma = std::size_t{1} << (n_ - 1 - a);
  const std::size_t mb = std::size_t{1} << (n_ - 1 - b);

  if (gate.kind() == GateKind::zz_phase) {
    const Complex same = std::exp(Complex(0, -gate.angle()));
    const Complex diff = std::conj(same);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const bool parity = ((i & ma) != 0) != ((i & mb) != 0);
      amps_[i] *= parity ? diff : same;
    }
    return;
  }

  const Matrix4& u = gate.matrix4();
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & ma) || (i & mb)) continue;
    const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
    Complex in[4];
    for (int k = 0; k < 4; ++k) in[k] = amps_[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += u(r, c) * in[c];
      amps_[idx[r]] = acc;
    }
  }
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries)
    : n_(n_qubits), rho_(std::move(entries)) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw std::invalid_argument("DensityMatrix: shape does not match qubit count");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  if (dim <= 256) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  if (state.n_qubits() > 10) throw std::invalid_argument("DensityMatrix::pure: register too large");
  Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(),
                                         static_cast<Eigen::Index>(state.dim()));
  return DensityMatrix(state.n_qubits(), psi * psi.adjoint());
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  if (std::abs(state.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("apply_gate: state is not normalized");
  }
  state.apply(gate);
  return state;
}

Bitstring sample_z_basis(const StateVector& state, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  const auto amps = state.amplitudes();
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    last_nonzero = i;
    cumulative += p;
    if (u < cumulative) return Bitstring(state.n_qubits(), static_cast<std::uint32_t>(i));
  }
  // Rounding left u above the accumulated total.
  return Bitstring(state.n_qubits(), static_cast<std::uint32_t>(last_nonzero));
}

DensityMatrix reduced_density(const StateVector& state, std::span<const int> subset) {
  const int n = state.n_qubits();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int q : subset) {
    if (q < 0 || q >= n) throw std::out_of_range("reduced_density: qubit out of range");
    if (used[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument("reduced_density: duplicate qubit " + std::to_string(q));
    }
    used[static_cast<std::size_t>(q)] = true;
  }
  const int k = static_cast<int>(subset.size());
  if (k == 0) throw std::invalid_argument("reduced_density: empty subset");
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!used[static_cast<std::size_t>(q)]) rest.push_back(q);
  }

  const Eigen::Index kept = Eigen::Index{1} << k;
  const Eigen::Index traced = Eigen::Index{1} << rest.size();
  Eigen::MatrixXcd m(kept, traced);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    Eigen::Index s = 0, r = 0;
    for (int q : subset) s = (s << 1) | static_cast<Eigen::Index>((i >> (n - 1 - q)) & 1u);
    for (int q : rest) r = (r << 1) | static_cast<Eigen::Index>((i >> (n - 1 - q)) & 1u);
    m(s, r) = amps[i];
  }
  Eigen::MatrixXcd rho = m * m.adjoint();
  // Symmetrize away rounding so the Hermiticity check is exact.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(k, std::move(rho));
}

double exact_expectation(const StateVector& state, std::string_view pauli) {
  const int n = state.n_qubits();
  if (static_cast<int>(pauli.size()) != n) {
    throw std::invalid_argument("exact_expectation: Pauli label length " +
                                std::to_string(pauli.size()) + " != " + std::to_string(n));
  }
  std::size_t xmask = 0, zmask = 0;
  int n_y = 0;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    switch (pauli[static_cast<std::size_t>(q)]) {
      case 'I': break;
      case 'X': xmask |= bit; break;
      case 'Y': xmask |= bit; zmask |= bit; ++n_y; break;
      case 'Z': zmask |= bit; break;
      default:
        throw std::invalid_argument("exact_expectation: malformed Pauli label '" +
                                    std::string(pauli) + "'");
    }
  }
  // P = i^{n_y} X^x Z^z, so P|k> = i^{n_y} (-1)^{|k & z|} |k ^ x>.
  static constexpr Complex kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto amps = state.amplitudes();
  Complex total = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double sign = (std::popcount(k & zmask) & 1) ? -1.0 : 1.0;
    total += std::conj(amps[k ^ xmask]) * sign * amps[k];
  }
  return (kPowI[n_y % 4] * total).real();
}

double purity(const DensityMatrix& dm) { return dm.matrix().cwiseAbs2().sum(); }

double overlap(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("overlap: size mismatch");
  return (a.matrix().adjoint() * b.matrix()).trace().real();
}

Matrix2 haar_random_unitary(RandomStream& rng) {
  Matrix2 g;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  Eigen::HouseholderQR<Matrix2> qr(g);
  const Matrix2 q = qr.householderQ();
  const Matrix2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix2 phases = Matrix2::Zero();
  for (int i = 0; i < 2; ++i) {
    const double mag = std::abs(r(i, i));
    phases(i, i) = mag > 0 ? r(i, i) / mag : Complex(1, 0);
  }
  return q * phases;
}

Gate haar_random_single_qubit(int qubit, RandomStream& rng) {
  return Gate::single(qubit, haar_random_unitary(rng));
}

}  // namespace rshadow
