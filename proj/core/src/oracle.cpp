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
#include "rshadow/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rshadow::oracle {
namespace {

void check_width(int n, const char* who) {
  if (n < 1 || n > kMaxOracleQubits) {
    throw std::invalid_argument(std::string(who) + ": oracle supports 1 to " +
                                std::to_string(kMaxOracleQubits) + " qubits, got " +
                                std::to_string(n));
  }
}

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int width_of_dim(Eigen::Index dim, int base) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d *= base;
    ++n;
  }
  if (d != dim) throw std::invalid_argument("oracle: dimension is not a power of " + std::to_string(base));
  return n;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

int pauli_digit(int index, int n, int qubit) { return (index / ipow(4, n - 1 - qubit)) % 4; }

// I ⊗ .. ⊗ w ⊗ .. ⊗ I with w on `qubit`.
Eigen::MatrixXd embed(const Eigen::MatrixXd& w, int qubit, int n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int q = 0; q < n; ++q) out = kron(out, q == qubit ? w : Eigen::MatrixXd::Identity(4, 4));
  return out;
}

std::vector<Eigen::MatrixXd> ensemble_ptms(TwirlEnsemble ensemble) {
  std::vector<Eigen::MatrixXd> out;
  if (ensemble == TwirlEnsemble::full_clifford) {
    for (const auto& c : single_qubit_cliffords()) out.push_back(pauli_transfer_matrix(c).ptm());
    return out;
  }
  const Matrix2 layer[3] = {gates::identity(), gates::hadamard(),
                            gates::hadamard() * gates::phase_s_dag()};
  for (const auto& g : layer) {
    out.push_back(pauli_transfer_matrix(g).ptm());
    out.push_back(pauli_transfer_matrix(gates::pauli_x() * g).ptm());
  }
  return out;
}

}  // namespace

Superoperator::Superoperator(int n_qubits, Eigen::MatrixXd ptm) : n_(n_qubits), ptm_(std::move(ptm)) {
  check_width(n_qubits, "Superoperator");
  const Eigen::Index dim = ipow(4, n_qubits);
  if (ptm_.rows() != dim || ptm_.cols() != dim) {
    throw std::invalid_argument("Superoperator: matrix must be 4^n x 4^n");
  }
}

Superoperator Superoperator::identity(int n_qubits) {
  check_width(n_qubits, "Superoperator::identity");
  const Eigen::Index dim = ipow(4, n_qubits);
  return Superoperator(n_qubits, Eigen::MatrixXd::Identity(dim, dim));
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("Superoperator: width mismatch in composition");
  return Superoperator(a.n_, a.ptm_ * b.ptm_);
}

Eigen::MatrixXcd pauli_operator(int index, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxOracleQubits + 1 || index < 0 || index >= ipow(4, n_qubits)) {
    throw std::out_of_range("pauli_operator: index out of range");
  }
  static constexpr char kLabels[4] = {'I', 'X', 'Y', 'Z'};
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    const Matrix2 p = gates::pauli(kLabels[pauli_digit(index, n_qubits, q)]);
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = out(r, c) * p;
    }
    out = std::move(next);
  }
  return out;
}

int pauli_weight(int index, int n_qubits) {
  int w = 0;
  for (int q = 0; q < n_qubits; ++q) w += pauli_digit(index, n_qubits, q) != 0;
  return w;
}

unsigned pauli_support(int index, int n_qubits) {
  unsigned s = 0;
  for (int q = 0; q < n_qubits; ++q) {
    if (pauli_digit(index, n_qubits, q) != 0) s |= 1u << (n_qubits - 1 - q);
  }
  return s;
}

Superoperator pauli_transfer_matrix(const Eigen::MatrixXcd& unitary) {
  const int n = width_of_dim(unitary.rows(), 2);
  check_width(n, "pauli_transfer_matrix");
  if (!is_unitary(unitary)) throw std::invalid_argument("pauli_transfer_matrix: matrix is not unitary");
  const int dim = ipow(4, n);
  std::vector<Eigen::MatrixXcd> paulis;
  for (int i = 0; i < dim; ++i) paulis.push_back(pauli_operator(i, n));
  const double scale = 1.0 / static_cast<double>(Eigen::Index{1} << n);
  Eigen::MatrixXd r(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const Eigen::MatrixXcd image = unitary * paulis[static_cast<std::size_t>(j)] * unitary.adjoint();
    for (int i = 0; i < dim; ++i) {
      r(i, j) = scale * (paulis[static_cast<std::size_t>(i)] * image).trace().real();
    }
  }
  return Superoperator(n, std::move(r));
}

Superoperator readout_channel_ptm(const Eigen::MatrixXd& transition) {
  if (transition.rows() != transition.cols()) {
    throw std::invalid_argument("readout_channel_ptm: transition matrix must be square");
  }
  const int n = width_of_dim(transition.rows(), 2);
  check_width(n, "readout_channel_ptm");
  const int dim = ipow(4, n);
  const Eigen::Index states = transition.rows();
  // ⟨b|P|b⟩ for every Pauli; zero unless P is Z-type.
  Eigen::MatrixXd diag(dim, states);
  for (int i = 0; i < dim; ++i) {
    const Eigen::MatrixXcd p = pauli_operator(i, n);
    for (Eigen::Index b = 0; b < states; ++b) diag(i, b) = p(b, b).real();
  }
  const double scale = 1.0 / static_cast<double>(states);
  return Superoperator(n, scale * diag * transition.transpose() * diag.transpose());
}

Superoperator z_dephasing(int n_qubits) {
  check_width(n_qubits, "z_dephasing");
  const Eigen::Index states = Eigen::Index{1} << n_qubits;
  return readout_channel_ptm(Eigen::MatrixXd::Identity(states, states));
}

std::vector<double> x_symmetrized_weights(const Eigen::MatrixXd& transition) {
  const Eigen::Index states = transition.rows();
  width_of_dim(states, 2);
  std::vector<double> w(static_cast<std::size_t>(states), 0.0);
  for (Eigen::Index e = 0; e < states; ++e) {
    for (Eigen::Index b = 0; b < states; ++b) w[static_cast<std::size_t>(e)] += transition(b, b ^ e);
    w[static_cast<std::size_t>(e)] /= static_cast<double>(states);
  }
  return w;
}

Superoperator stochastic_x_channel_ptm(std::span<const double> weights) {
  const auto states = static_cast<Eigen::Index>(weights.size());
  width_of_dim(states, 2);
  Eigen::MatrixXd t(states, states);
  for (Eigen::Index b = 0; b < states; ++b) {
    for (Eigen::Index c = 0; c < states; ++c) t(b, c) = weights[static_cast<std::size_t>(b ^ c)];
  }
  return readout_channel_ptm(t);
}

Superoperator build_noisy_channel(const Eigen::MatrixXd& transition, TwirlEnsemble ensemble) {
  const Superoperator noisy = readout_channel_ptm(transition);
  const int n = noisy.n_qubits();
  const auto elements = ensemble_ptms(ensemble);
  const int m = static_cast<int>(elements.size());
  const Eigen::MatrixXd& r = noisy.ptm();

  if (ensemble == TwirlEnsemble::pauli_axis_x_flip) {
    // Every joint element of the product ensemble, enumerated explicitly.
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(r.rows(), r.cols());
    const int total = ipow(m, n);
    for (int code = 0; code < total; ++code) {
      Eigen::MatrixXd w = Eigen::MatrixXd::Identity(1, 1);
      for (int q = 0, rest = code; q < n; ++q, rest /= m) {
        w = kron(w, elements[static_cast<std::size_t>(rest % m)]);
      }
      acc += w.transpose() * r * w;
    }
    return Superoperator(n, acc / static_cast<double>(total));
  }

  // Product ensemble: twirl one qubit at a time.
  Eigen::MatrixXd acc = r;
  for (int q = 0; q < n; ++q) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(r.rows(), r.cols());
    for (const auto& e : elements) {
      const Eigen::MatrixXd w = embed(e, q, n);
      next += w.transpose() * acc * w;
    }
    acc = next / static_cast<double>(m);
  }
  return Superoperator(n, acc);
}

Superoperator build_noisy_channel(const ReadoutNoiseModel& model, TwirlEnsemble ensemble,
                                  std::int64_t clock) {
  check_width(model.width(), "build_noisy_channel");
  model.validate();
  return build_noisy_channel(transition_matrix(model, clock), ensemble);
}

Superoperator support_projector(int n_qubits, unsigned lambda) {
  check_width(n_qubits, "support_projector");
  const int dim = ipow(4, n_qubits);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (pauli_support(i, n_qubits) == lambda) p(i, i) = 1.0;
  }
  return Superoperator(n_qubits, std::move(p));
}

std::vector<double> expansion_coefficients(const Superoperator& channel) {
  const int n = channel.n_qubits();
  std::vector<double> f(std::size_t{1} << n, 0.0);
  for (int i = 0; i < ipow(4, n); ++i) f[pauli_support(i, n)] += channel(i, i);
  for (std::size_t lambda = 0; lambda < f.size(); ++lambda) {
    f[lambda] /= static_cast<double>(ipow(3, std::popcount(static_cast<unsigned>(lambda))));
  }
  return f;
}

Superoperator irrep_reconstruction(int n_qubits, std::span<const double> f) {
  check_width(n_qubits, "irrep_reconstruction");
  if (f.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("irrep_reconstruction: expected 2^n coefficients");
  }
  const int dim = ipow(4, n_qubits);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = f[pauli_support(i, n_qubits)];
  return Superoperator(n_qubits, std::move(m));
}

std::vector<Matrix2> single_qubit_cliffords() {
  // Fix the global phase so that the first non-negligible entry is real positive.
  auto canonical = [](Matrix2 u) {
    for (Eigen::Index k = 0; k < 4; ++k) {
      const Complex z = u(k % 2, k / 2);
      if (std::abs(z) > 1e-9) {
        u *= std::conj(z) / std::abs(z);
        break;
      }
    }
    return u;
  };
  const Matrix2 generators[2] = {gates::hadamard(), gates::phase_s()};
  std::vector<Matrix2> group = {Matrix2::Identity()};
  for (std::size_t next = 0; next < group.size(); ++next) {
    for (const auto& g : generators) {
      const Matrix2 candidate = canonical(g * group[next]);
      bool known = false;
      for (const auto& h : group) {
        if (candidate.isApprox(h, 1e-9)) {
          known = true;
          break;
        }
      }
      if (!known) group.push_back(candidate);
    }
  }
  if (group.size() != 24) throw std::logic_error("single_qubit_cliffords: closure did not give 24 elements");
  return group;
}

double local_coefficient(const ReadoutNoiseModel& model, int qubit, std::int64_t clock) {
  const int subset[1] = {qubit};
  return expansion_coefficients(build_noisy_channel(model.restrict(subset, clock)))[1];
}

std::vector<double> local_coefficients(const ReadoutNoiseModel& model, std::int64_t clock) {
  std::vector<double> f;
  for (int q = 0; q < model.width(); ++q) f.push_back(local_coefficient(model, q, clock));
  return f;
}

double pair_coefficient(const ReadoutNoiseModel& model, int i, int j, std::int64_t clock) {
  const int subset[2] = {i, j};
  return expansion_coefficients(build_noisy_channel(model.restrict(subset, clock)))[3];
}

double non_separability(const ReadoutNoiseModel& model, int i, int j, std::int64_t clock) {
  const int subset[2] = {i, j};
  const auto f = expansion_coefficients(build_noisy_channel(model.restrict(subset, clock)));
  // Bitmask λ with qubit i as the high bit: 0b10 = {i}, 0b01 = {j}.
  return f[2] * f[1] - f[3];
}

double bias_fidelity_1q(double f_tilde, double overlap_term) {
  return std::abs((1.0 - 3.0 * f_tilde) * overlap_term);
}

double bias_pauli_2q(double f1, double f2, double correlator) {
  return std::abs(correlator) * std::abs(1.0 - 9.0 * f1 * f2);
}

double bias_purity_1q(double f_tilde, double overlap) {
  return std::abs((overlap - 0.5) * (1.0 - 9.0 * f_tilde * f_tilde));
}

double noisy_purity_2q(double f1, double f2, double overlap_1, double overlap_2,
                       double overlap_full) {
  const double a = 9.0 * f1 * f1;
  const double b = 9.0 * f2 * f2;
  const double ab = 81.0 * f1 * f1 * f2 * f2;
  return 0.25 + a * (overlap_1 / 2.0 - 0.25) + b * (overlap_2 / 2.0 - 0.25) +
         ab * (0.25 - (overlap_1 + overlap_2) / 2.0 + overlap_full);
}

double bias_purity_2q(double f1, double f2, double overlap_1, double overlap_2,
                      double overlap_full) {
  return std::abs(noisy_purity_2q(f1, f2, overlap_1, overlap_2, overlap_full) - overlap_full);
}

}  // namespace rshadow::oracle
