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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rshadow/quantum.hpp"

namespace rshadow {

struct Edge {
  int u = 0;
  int v = 1;
  double weight = 1.0;
};

/// Undirected weighted graph with labelled vertices. Weights are rescaled on
/// construction so the largest is exactly 1.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::string> labels, std::vector<Edge> edges);

  /// Complete graph weighted by great-circle distance between (lat, lon)
  /// pairs in degrees.
  static WeightedGraph from_coordinates(std::vector<std::string> labels,
                                        const std::vector<std::pair<double, double>>& lat_lon);

  /// JSON document with "vertices" (label, lat, lon) and optional "edges"
  /// (u, v labels, weight). Without edges the coordinate construction is used.
  static WeightedGraph load(const std::filesystem::path& path);
  static WeightedGraph parse(std::string_view json_text);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int index_of(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

struct HaarProductState {
  /// V_k with the state ⊗_k V_k|0⟩; V_k|0⟩ is the fidelity target of qubit k.
  std::vector<Gate> gates;
  std::vector<Qubit2> qubits;
  StateVector state;
};

HaarProductState haar_product_state(int n_qubits, std::uint64_t seed);

inline constexpr double kQaoaGamma = 0.29;
inline constexpr double kQaoaBeta = 0.56;

/// [⊗_l exp(-iβ X_l)] · [Π_(i,j) exp(-iγ w_ij Z_i Z_j)] · H^⊗n |0⟩.
StateVector qaoa_layer_state(const WeightedGraph& graph, double gamma = kQaoaGamma,
                             double beta = kQaoaBeta);

struct PceVariable {
  std::string label;
  int i = 0;
  int j = 1;
  char axis = 'Z';

  /// Pauli label of P_i P_j on an n-qubit register.
  std::string pauli(int n_qubits) const;
};

enum class PceRotations {
  /// One angle per qubit per layer, axis cycling X, Y, Z with the layer.
  single_axis,
  /// exp(-iaX/2) exp(-ibY/2) exp(-icZ/2): three angles per qubit per layer.
  three_angle,
};

struct PceProblem {
  int n_qubits = 5;
  int locality = 2;
  double sharpness = 6.25;
  int layers = 4;
  std::vector<PceVariable> variables;
  WeightedGraph graph;
  Matrix4 entangler = gates::zz_phase(0.78539816339744830962);
  PceRotations rotations = PceRotations::single_axis;

  /// Canonical variable map: qubit pairs in lexicographic order, axis blocks
  /// Z, X, Y, one variable per graph vertex in vertex order.
  static PceProblem from_graph(WeightedGraph graph, int n_qubits = 5);

  int parameter_count() const;
};

/// Brickwork circuit: each layer rotates every qubit, then entangles
/// (0,1),(2,3),... on even layers and (1,2),(3,4),... on odd layers.
StateVector pce_state(std::span<const double> theta, const PceProblem& problem);

/// ⟨P_k⟩ for every variable, in variable order.
std::vector<double> pce_correlators(const StateVector& state, const PceProblem& problem);

/// Σ_(u,v) w_uv (1 - z_u z_v)/2 with z = tanh(sharpness · ⟨P⟩).
double pce_soft_objective(std::span<const double> correlators, const PceProblem& problem);
double pce_soft_objective_at(std::span<const double> theta, const PceProblem& problem);

struct PceTraining {
  std::vector<double> theta;
  /// Objective before the first step and after every step.
  std::vector<double> objective;
};

struct AdamOptions {
  int steps = 500;
  double learning_rate = 0.02;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double fd_step = 1e-4;
};

/// Gradient ascent on the soft objective from angles uniform in [-π, π).
PceTraining train_pce(const PceProblem& problem, std::uint64_t seed, const AdamOptions& options = {});

/// Central finite-difference gradient of the soft objective.
std::vector<double> pce_gradient(std::span<const double> theta, const PceProblem& problem,
                                 double step = 1e-4);

/// Sign of each labelled correlator; exactly zero decodes to +1. Throws if a
/// variable of `problem` has no entry.
std::map<std::string, int> pce_decode(const PceProblem& problem,
                                      const std::map<std::string, double>& correlators);

/// Σ_(u,v) w_uv (1 - x_u x_v)/2 for a ±1 assignment in vertex order.
double cut_value(const WeightedGraph& graph, std::span<const int> assignment);

}  // namespace rshadow
