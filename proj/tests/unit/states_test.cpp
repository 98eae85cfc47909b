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
#include "rshadow/states.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

namespace rshadow {
namespace {

const std::filesystem::path kData = RSHADOW_TEST_DATA_DIR;

TEST(Graph, ParseWithExplicitEdgesRescales) {
  const auto g = WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"b"},{"label":"c"}],
    "edges":[{"u":"a","v":"b","weight":2.0},{"u":"b","v":"c","weight":4.0}]})");
  ASSERT_EQ(g.size(), 3);
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_DOUBLE_EQ(g.edges()[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(g.edges()[1].weight, 1.0);
  EXPECT_EQ(g.index_of("c"), 2);
  EXPECT_THROW(g.index_of("zz"), std::out_of_range);
}

TEST(Graph, RejectsMalformedInput) {
  EXPECT_THROW(WeightedGraph::parse("{"), std::invalid_argument);
  EXPECT_THROW(WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"a"}],"edges":[]})"), std::invalid_argument);
  EXPECT_THROW(WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"b"}],"edges":[{"u":"a","v":"q","weight":1}]})"),
               std::invalid_argument);
  EXPECT_THROW(WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"b"}],"edges":[{"u":"a","v":"b","weight":-1}]})"),
               std::invalid_argument);
  EXPECT_THROW(WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"b"}]})"), std::invalid_argument);
}

TEST(Graph, CoordinatesGiveGreatCircleWeights) {
  // Quarter of the equator vs. a pole: distances pi/2, pi/2 and pi/2 radians.
  const auto g = WeightedGraph::from_coordinates({"a", "b", "c"}, {{0, 0}, {0, 90}, {90, 0}});
  for (const auto& e : g.edges()) EXPECT_NEAR(e.weight, 1.0, 1e-12);
  const auto h = WeightedGraph::from_coordinates({"a", "b", "c"}, {{0, 0}, {0, 45}, {0, 90}});
  std::vector<double> w;
  for (const auto& e : h.edges()) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  EXPECT_NEAR(w[0], 0.5, 1e-12);
  EXPECT_NEAR(w[2], 1.0, 1e-12);
}

TEST(Graph, BundledFilesLoad) {
  const auto at = WeightedGraph::load(kData / "austria_capitals.json");
  EXPECT_EQ(at.size(), 9);
  EXPECT_EQ(at.edges().size(), 36u);
  const auto eu = WeightedGraph::load(kData / "eu_capitals.json");
  EXPECT_EQ(eu.size(), 27);
}

TEST(HaarProduct, DeterministicAndConsistent) {
  const auto a = haar_product_state(4, 7);
  const auto b = haar_product_state(4, 7);
  ASSERT_EQ(a.qubits.size(), 4u);
  for (int q = 0; q < 4; ++q) {
    EXPECT_TRUE(a.qubits[static_cast<std::size_t>(q)] == b.qubits[static_cast<std::size_t>(q)]);
    EXPECT_LT((a.gates[static_cast<std::size_t>(q)].matrix2().col(0) - a.qubits[static_cast<std::size_t>(q)]).norm(), 1e-14);
    const int one[] = {q};
    const auto rho = reduced_density(a.state, one);
    const Qubit2& phi = a.qubits[static_cast<std::size_t>(q)];
    EXPECT_NEAR((phi.adjoint() * rho.matrix() * phi)(0, 0).real(), 1.0, 1e-12);
  }
  // A different qubit count keeps the leading factors (per-qubit streams).
  const auto c = haar_product_state(6, 7);
  EXPECT_TRUE(c.qubits[2] == a.qubits[2]);
}

TEST(Qaoa, MatchesDirectConstruction) {
  const auto g = WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"b"},{"label":"c"}],
    "edges":[{"u":"a","v":"b","weight":1.0},{"u":"b","v":"c","weight":0.5},{"u":"a","v":"c","weight":0.25}]})");
  const double gamma = 0.29, beta = 0.56;
  const StateVector s = qaoa_layer_state(g, gamma, beta);
  // Phase of each computational basis state, then the mixer applied by hand.
  Eigen::VectorXcd v(8);
  for (int z = 0; z < 8; ++z) {
    double cost = 0.0;
    for (const auto& e : g.edges()) {
      const int zu = ((z >> (2 - e.u)) & 1) ? -1 : 1;
      const int zv = ((z >> (2 - e.v)) & 1) ? -1 : 1;
      cost += e.weight * zu * zv;
    }
    v(z) = std::exp(Complex(0, -gamma * cost)) / std::sqrt(8.0);
  }
  const Matrix2 mx = std::cos(beta) * gates::identity() - Complex(0, std::sin(beta)) * gates::pauli_x();
  Eigen::MatrixXcd mixer = Eigen::MatrixXcd::Ones(1, 1);
  for (int q = 0; q < 3; ++q) {
    Eigen::MatrixXcd next(mixer.rows() * 2, mixer.cols() * 2);
    for (Eigen::Index i = 0; i < mixer.rows(); ++i)
      for (Eigen::Index j = 0; j < mixer.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = mixer(i, j) * mx;
    mixer = next;
  }
  const Eigen::VectorXcd expect = mixer * v;
  for (int z = 0; z < 8; ++z) EXPECT_NEAR(std::abs(s[static_cast<std::size_t>(z)] - expect(z)), 0.0, 1e-13);
}

TEST(Qaoa, BundledGraphStateIsEntangled) {
  const auto s = qaoa_layer_state(WeightedGraph::load(kData / "austria_capitals.json"));
  EXPECT_EQ(s.n_qubits(), 9);
  const int pair[] = {0, 1};
  const double p = purity(reduced_density(s, pair));
  EXPECT_LT(p, 1.0 - 1e-3);
  EXPECT_GT(p, 0.25);
}

TEST(Pce, VariableMapIsCanonical) {
  const auto problem = PceProblem::from_graph(WeightedGraph::load(kData / "eu_capitals.json"));
  ASSERT_EQ(problem.variables.size(), 27u);
  EXPECT_EQ(problem.variables[0].i, 0);
  EXPECT_EQ(problem.variables[0].j, 1);
  EXPECT_EQ(problem.variables[0].axis, 'Z');
  EXPECT_EQ(problem.variables[10].axis, 'X');
  EXPECT_EQ(problem.variables[10].i, 0);
  EXPECT_EQ(problem.variables[0].pauli(5), "ZZIII");
  std::map<std::string, int> seen;
  for (const auto& v : problem.variables) EXPECT_EQ(seen[v.pauli(5)]++, 0);
  EXPECT_EQ(problem.parameter_count(), 20);
}

TEST(Pce, CircuitIsNormalizedAndObjectiveMatchesDefinition) {
  const auto problem = PceProblem::from_graph(WeightedGraph::load(kData / "eu_capitals.json"));
  RandomStream rng(3);
  std::vector<double> theta(static_cast<std::size_t>(problem.parameter_count()));
  for (auto& t : theta) t = rng.uniform() * 2 * std::numbers::pi;
  const auto state = pce_state(theta, problem);
  EXPECT_NEAR(state.norm(), 1.0, 1e-12);
  const auto corr = pce_correlators(state, problem);
  double expect = 0.0;
  for (const auto& e : problem.graph.edges()) {
    const double zu = std::tanh(problem.sharpness * corr[static_cast<std::size_t>(e.u)]);
    const double zv = std::tanh(problem.sharpness * corr[static_cast<std::size_t>(e.v)]);
    expect += e.weight * (1 - zu * zv) / 2;
  }
  EXPECT_NEAR(pce_soft_objective(corr, problem), expect, 1e-12);
  EXPECT_NEAR(pce_soft_objective_at(theta, problem), expect, 1e-12);
  EXPECT_THROW(pce_state(std::vector<double>(3, 0.0), problem), std::invalid_argument);
}

TEST(Pce, GradientMatchesFiniteDifferenceOfObjective) {
  const auto problem = PceProblem::from_graph(WeightedGraph::load(kData / "eu_capitals.json"));
  std::vector<double> theta(static_cast<std::size_t>(problem.parameter_count()), 0.3);
  const auto g = pce_gradient(theta, problem);
  auto shifted = theta;
  shifted[5] += 1e-5;
  const double up = pce_soft_objective_at(shifted, problem);
  shifted[5] -= 2e-5;
  const double down = pce_soft_objective_at(shifted, problem);
  EXPECT_NEAR(g[5], (up - down) / 2e-5, 1e-5);
}

TEST(Pce, ShortTrainingImprovesObjective) {
  const auto problem = PceProblem::from_graph(WeightedGraph::load(kData / "eu_capitals.json"));
  AdamOptions opts;
  opts.steps = 60;
  const auto t = train_pce(problem, 5, opts);
  ASSERT_EQ(t.objective.size(), 61u);
  EXPECT_GT(*std::max_element(t.objective.begin(), t.objective.end()), t.objective.front());
  EXPECT_NEAR(pce_soft_objective_at(t.theta, problem), t.objective.back(), 1e-12);
  const auto again = train_pce(problem, 5, opts);
  EXPECT_EQ(t.theta, again.theta);
}

TEST(Pce, DecodeAndCut) {
  const auto g = WeightedGraph::parse(R"({"vertices":[{"label":"a"},{"label":"b"}],
    "edges":[{"u":"a","v":"b","weight":1.0}]})");
  const auto problem = PceProblem::from_graph(g, 3);
  const auto signs = pce_decode(problem, {{"a", -0.4}, {"b", 0.0}});
  EXPECT_EQ(signs.at("a"), -1);
  EXPECT_EQ(signs.at("b"), 1);
  EXPECT_THROW(pce_decode(problem, {{"a", 0.1}}), std::invalid_argument);
  const int cut[] = {1, -1};
  const int same[] = {1, 1};
  EXPECT_DOUBLE_EQ(cut_value(g, cut), 1.0);
  EXPECT_DOUBLE_EQ(cut_value(g, same), 0.0);
}

}  // namespace
}  // namespace rshadow
