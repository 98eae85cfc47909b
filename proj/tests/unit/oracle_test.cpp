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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace rshadow::oracle {
namespace {

ReadoutNoiseModel skewed(int n) {
  ReadoutNoiseModel m;
  const double rates[][2] = {{0.02, 0.07}, {0.05, 0.01}, {0.0, 0.12}};
  for (int q = 0; q < n; ++q) m.per_qubit.push_back({rates[q][0], rates[q][1]});
  return m;
}

TEST(Pauli, IndexingAndWeights) {
  // index 0b0111 for n = 2: qubit 0 -> X (1), qubit 1 -> Z (3)
  EXPECT_EQ(pauli_weight(7, 2), 2);
  EXPECT_EQ(pauli_support(7, 2), 0b11u);
  EXPECT_EQ(pauli_support(3, 2), 0b01u);
  EXPECT_EQ(pauli_support(12, 2), 0b10u);
  const Eigen::MatrixXcd xz = pauli_operator(7, 2);
  EXPECT_NEAR(xz(0, 2).real(), 1.0, 1e-15);  // X on the most significant qubit
  EXPECT_NEAR(xz(1, 3).real(), -1.0, 1e-15);
}

TEST(Ptm, UnitaryChannelIsOrthogonalAndComposes) {
  RandomStream rng(1);
  const Matrix2 a = haar_random_unitary(rng), b = haar_random_unitary(rng);
  const auto pa = pauli_transfer_matrix(a), pb = pauli_transfer_matrix(b);
  EXPECT_LT((pa.ptm() * pa.ptm().transpose() - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-12);
  EXPECT_LT(((pa * pb).ptm() - pauli_transfer_matrix(a * b).ptm()).norm(), 1e-12);
}

TEST(Ptm, DephasingKeepsOnlyZStrings) {
  const auto d = z_dephasing(2);
  for (int p = 0; p < 16; ++p) {
    const bool diag = (p / 4 == 0 || p / 4 == 3) && (p % 4 == 0 || p % 4 == 3);
    EXPECT_NEAR(d(p, p), diag ? 1.0 : 0.0, 1e-15);
  }
}

class ChannelSuite : public ::testing::TestWithParam<int> {};

TEST_P(ChannelSuite, ReconstructionFromIrrepCoefficients) {
  const int n = GetParam();
  auto m = skewed(n);
  if (n >= 2) m.pairwise = {{0, 1, 0.03}};
  const auto channel = build_noisy_channel(m);
  const auto f = expansion_coefficients(channel);
  EXPECT_LT((channel.ptm() - irrep_reconstruction(n, f).ptm()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_P(ChannelSuite, FullCliffordTwirlHasTheSameCoefficients) {
  const int n = GetParam();
  auto m = skewed(n);
  if (n >= 2) m.pairwise = {{0, n - 1, 0.04}};
  const auto t = transition_matrix(m);
  const auto small = expansion_coefficients(build_noisy_channel(t, TwirlEnsemble::pauli_axis_x_flip));
  const auto full = expansion_coefficients(build_noisy_channel(t, TwirlEnsemble::full_clifford));
  ASSERT_EQ(small.size(), full.size());
  for (std::size_t k = 0; k < small.size(); ++k) EXPECT_NEAR(small[k], full[k], 1e-12);
}

TEST_P(ChannelSuite, XTwirledReadoutIsAStochasticXChannel) {
  const int n = GetParam();
  auto m = skewed(n);
  if (n >= 2) m.pairwise = {{0, 1, 0.02}};
  const auto t = transition_matrix(m);
  // Average of X^a (M_Z Λ) X^a over all flip masks.
  const auto raw = readout_channel_ptm(t);
  const int dim = 1 << n;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(raw.ptm().rows(), raw.ptm().cols());
  for (int a = 0; a < dim; ++a) {
    Eigen::MatrixXcd xa = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      const Matrix2 g = ((a >> (n - 1 - q)) & 1) ? gates::pauli_x() : gates::identity();
      Eigen::MatrixXcd next(xa.rows() * 2, xa.cols() * 2);
      for (Eigen::Index i = 0; i < xa.rows(); ++i)
        for (Eigen::Index j = 0; j < xa.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = xa(i, j) * g;
      xa = next;
    }
    const auto w = pauli_transfer_matrix(xa);
    acc += (w * raw * w).ptm();
  }
  acc /= dim;
  const auto weights = x_symmetrized_weights(t);
  double total = 0.0;
  for (double w : weights) total += w;
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_LT((acc - stochastic_x_channel_ptm(weights).ptm()).cwiseAbs().maxCoeff(), 1e-12);
  // The shadow channel only sees the symmetrized channel.
  const auto sym = stochastic_x_channel_ptm(weights);
  const auto direct = expansion_coefficients(build_noisy_channel(t));
  Eigen::MatrixXd tsym(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int r = 0; r < dim; ++r) tsym(b, r) = weights[static_cast<std::size_t>(b ^ r)];
  const auto via_sym = expansion_coefficients(build_noisy_channel(tsym));
  for (std::size_t k = 0; k < direct.size(); ++k) EXPECT_NEAR(direct[k], via_sym[k], 1e-12);
  (void)sym;
}

INSTANTIATE_TEST_SUITE_P(Widths, ChannelSuite, ::testing::Values(1, 2, 3));

TEST(Coefficients, NoiselessValues) {
  const auto f = expansion_coefficients(build_noisy_channel(ReadoutNoiseModel::noiseless(2)));
  EXPECT_NEAR(f[0], 1.0, 1e-14);
  EXPECT_NEAR(f[1], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(f[2], 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(f[3], 1.0 / 9.0, 1e-14);
}

TEST(Coefficients, LocalFormulaFromRates) {
  RandomStream rng(2);
  for (int k = 0; k < 20; ++k) {
    ReadoutNoiseModel m;
    m.per_qubit = {{0.3 * rng.uniform(), 0.3 * rng.uniform()}};
    EXPECT_NEAR(local_coefficient(m, 0), (1.0 - m.per_qubit[0].p01 - m.per_qubit[0].p10) / 3.0, 1e-12);
  }
}

TEST(Coefficients, SeparableNoiseFactorizes) {
  const auto m = skewed(3);
  const auto f = expansion_coefficients(build_noisy_channel(m));
  // λ bitmask with qubit 0 as the high bit.
  EXPECT_NEAR(f[0b101], f[0b100] * f[0b001], 1e-14);
  EXPECT_NEAR(f[0b111], f[0b100] * f[0b010] * f[0b001], 1e-14);
  EXPECT_NEAR(non_separability(m, 0, 2), 0.0, 1e-14);
}

TEST(Coefficients, CorrelatedFlipIsNonSeparable) {
  auto m = ReadoutNoiseModel::symmetric(3, 0.01);
  m.pairwise = {{0, 2, 0.05}};
  const double ns = non_separability(m, 0, 2);
  const double f0 = local_coefficient(m, 0), f2 = local_coefficient(m, 2);
  EXPECT_NEAR(ns, f0 * f2 - pair_coefficient(m, 0, 2), 1e-14);
  // Common flips cancel in the two-qubit parity: f_ij = (1 - 2p)^2 / 9.
  EXPECT_NEAR(pair_coefficient(m, 0, 2), 0.98 * 0.98 / 9.0, 1e-14);
  EXPECT_LT(ns, 0.0);
  EXPECT_NEAR(non_separability(m, 0, 1), 0.0, 1e-14);
}

TEST(Cliffords, TwentyFourDistinctElements) {
  const auto c = single_qubit_cliffords();
  ASSERT_EQ(c.size(), 24u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_TRUE(is_unitary(c[i]));
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      EXPECT_GT(1.0 - std::abs((c[i].adjoint() * c[j]).trace()) / 2.0, 1e-6);
    }
  }
}

TEST(Bias, ClosedForms) {
  EXPECT_NEAR(bias_fidelity_1q((1 - 2 * 0.0206) / 3, 0.5), 0.0206, 1e-15);
  EXPECT_NEAR(bias_pauli_2q((1 - 0.04) / 3, (1 - 0.04) / 3, 1.0), 1 - 0.96 * 0.96, 1e-14);
  EXPECT_NEAR(bias_purity_1q(1.0 / 3.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(bias_purity_2q(1.0 / 3.0, 1.0 / 3.0, 0.7, 0.6, 0.5), 0.0, 1e-15);
}

TEST(Oracle, RejectsLargeRegisters) {
  EXPECT_THROW(build_noisy_channel(ReadoutNoiseModel::noiseless(kMaxOracleQubits + 1)), std::invalid_argument);
}

}  // namespace
}  // namespace rshadow::oracle
