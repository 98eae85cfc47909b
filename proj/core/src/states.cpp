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
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rshadow/random.hpp"

namespace rshadow {

WeightedGraph::WeightedGraph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const std::set<std::string> distinct(labels_.begin(), labels_.end());
  if (distinct.size() != labels_.size()) throw std::invalid_argument("WeightedGraph: duplicate vertex label");
  std::set<std::pair<int, int>> seen;
  double max_weight = 0.0;
  for (const auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= size() || e.v >= size()) {
      throw std::invalid_argument("WeightedGraph: edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("WeightedGraph: self-loop on vertex " + labels_[e.u]);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("WeightedGraph: edge weights must be positive");
    }
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
      throw std::invalid_argument("WeightedGraph: repeated edge");
    }
    max_weight = std::max(max_weight, e.weight);
  }
  for (auto& e : edges_) e.weight = e.weight == max_weight ? 1.0 : e.weight / max_weight;
}

WeightedGraph WeightedGraph::from_coordinates(std::vector<std::string> labels,
                                              const std::vector<std::pair<double, double>>& lat_lon) {
  if (labels.size() != lat_lon.size()) {
    throw std::invalid_argument("WeightedGraph: one coordinate pair per label required");
  }
  constexpr double kDeg = std::numbers::pi / 180.0;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < labels.size(); ++u) {
    for (std::size_t v = u + 1; v < labels.size(); ++v) {
      const double phi1 = lat_lon[u].first * kDeg;
      const double phi2 = lat_lon[v].first * kDeg;
      const double dphi = phi2 - phi1;
      const double dlambda = (lat_lon[v].second - lat_lon[u].second) * kDeg;
      const double h = std::pow(std::sin(dphi / 2), 2) +
                       std::cos(phi1) * std::cos(phi2) * std::pow(std::sin(dlambda / 2), 2);
      const double angle = 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
      edges.push_back({static_cast<int>(u), static_cast<int>(v), angle});
    }
  }
  return WeightedGraph(std::move(labels), std::move(edges));
}

WeightedGraph WeightedGraph::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph file: ") + e.what());
  }
  try {
    std::vector<std::string> labels;
    std::vector<std::pair<double, double>> coords;
    bool have_coords = true;
    for (const auto& v : doc.at("vertices")) {
      labels.push_back(v.at("label").get<std::string>());
      if (v.contains("lat") && v.contains("lon")) {
        coords.emplace_back(v["lat"].get<double>(), v["lon"].get<double>());
      } else {
        have_coords = false;
      }
    }
    if (!doc.contains("edges")) {
      if (!have_coords) throw std::invalid_argument("graph file: vertices need lat/lon when edges are omitted");
      return from_coordinates(std::move(labels), coords);
    }
    auto index = [&](const std::string& label) {
      const auto it = std::find(labels.begin(), labels.end(), label);
      if (it == labels.end()) throw std::invalid_argument("graph file: unknown vertex '" + label + "'");
      return static_cast<int>(it - labels.begin());
    };
    std::vector<Edge> edges;
    for (const auto& e : doc["edges"]) {
      edges.push_back({index(e.at("u").get<std::string>()), index(e.at("v").get<std::string>()),
                       e.at("weight").get<double>()});
    }
    return WeightedGraph(std::move(labels), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph file: ") + e.what());
  }
}

WeightedGraph WeightedGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

int WeightedGraph::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("WeightedGraph: unknown label '" + std::string(label) + "'");
  return static_cast<int>(it - labels_.begin());
}

HaarProductState haar_product_state(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("haar_product_state: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  RandomStream rng(seed);
  HaarProductState out{{}, {}, StateVector(n_qubits)};
  for (int q = 0; q < n_qubits; ++q) {
    RandomStream stream = rng.split(static_cast<std::uint64_t>(q));
    out.gates.push_back(haar_random_single_qubit(q, stream));
    out.qubits.push_back(out.gates.back().matrix2().col(0));
  }
  out.state = StateVector::product(out.qubits);
  return out;
}

StateVector qaoa_layer_state(const WeightedGraph& graph, double gamma, double beta) {
  const int n = graph.size();
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qaoa_layer_state: graph must have 1 to " + std::to_string(kMaxQubits) +
                                " vertices");
  }
  StateVector psi(n);
  for (int q = 0; q < n; ++q) psi.apply_single(q, gates::hadamard());
  for (const auto& e : graph.edges()) psi.apply(Gate::zz_phase(e.u, e.v, gamma * e.weight));
  // exp(-iβX) is the standard rotation at angle 2β.
  const Matrix2 mixer = gates::rotation('X', 2.0 * beta);
  for (int q = 0; q < n; ++q) psi.apply_single(q, mixer);
  return psi;
}

std::string PceVariable::pauli(int n_qubits) const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  s.at(static_cast<std::size_t>(i)) = axis;
  s.at(static_cast<std::size_t>(j)) = axis;
  return s;
}

PceProblem PceProblem::from_graph(WeightedGraph graph, int n_qubits) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) throw std::invalid_argument("PceProblem: invalid qubit count");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_qubits; ++i) {
    for (int j = i + 1; j < n_qubits; ++j) pairs.emplace_back(i, j);
  }
  const std::size_t slots = 3 * pairs.size();
  if (static_cast<std::size_t>(graph.size()) > slots) {
    throw std::invalid_argument("PceProblem: " + std::to_string(graph.size()) + " variables exceed " +
                                std::to_string(slots) + " two-body correlators");
  }
  PceProblem p;
  p.n_qubits = n_qubits;
  static constexpr char kAxes[3] = {'Z', 'X', 'Y'};
  for (int k = 0; k < graph.size(); ++k) {
    const auto& [i, j] = pairs[static_cast<std::size_t>(k) % pairs.size()];
    p.variables.push_back({graph.labels()[static_cast<std::size_t>(k)], i, j,
                           kAxes[static_cast<std::size_t>(k) / pairs.size()]});
  }
  p.graph = std::move(graph);
  return p;
}

int PceProblem::parameter_count() const {
  return layers * n_qubits * (rotations == PceRotations::three_angle ? 3 : 1);
}

StateVector pce_state(std::span<const double> theta, const PceProblem& problem) {
  if (static_cast<int>(theta.size()) != problem.parameter_count()) {
    throw std::invalid_argument("pce_state: expected " + std::to_string(problem.parameter_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  static constexpr char kCycle[3] = {'X', 'Y', 'Z'};
  const int n = problem.n_qubits;
  auto entangler = [&](int a, int b) { return Gate::two_qubit(a, b, problem.entangler); };
  StateVector psi(n);
  std::size_t k = 0;
  for (int l = 0; l < problem.layers; ++l) {
    for (int q = 0; q < n; ++q) {
      if (problem.rotations == PceRotations::single_axis) {
        psi.apply_single(q, gates::rotation(kCycle[l % 3], theta[k++]));
      } else {
        const Matrix2 u = gates::rotation('X', theta[k]) * gates::rotation('Y', theta[k + 1]) *
                          gates::rotation('Z', theta[k + 2]);
        k += 3;
        psi.apply_single(q, u);
      }
    }
    for (int a = l % 2; a + 1 < n; a += 2) psi.apply(entangler(a, a + 1));
  }
  return psi;
}

std::vector<double> pce_correlators(const StateVector& state, const PceProblem& problem) {
  std::vector<double> c;
  c.reserve(problem.variables.size());
  for (const auto& v : problem.variables) c.push_back(exact_expectation(state, v.pauli(problem.n_qubits)));
  return c;
}

double pce_soft_objective(std::span<const double> correlators, const PceProblem& problem) {
  if (correlators.size() != problem.variables.size()) {
    throw std::invalid_argument("pce_soft_objective: one correlator per variable required");
  }
  std::vector<double> z(correlators.size());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = std::tanh(problem.sharpness * correlators[k]);
  double total = 0.0;
  for (const auto& e : problem.graph.edges()) {
    total += e.weight * (1.0 - z[static_cast<std::size_t>(e.u)] * z[static_cast<std::size_t>(e.v)]) / 2.0;
  }
  return total;
}

double pce_soft_objective_at(std::span<const double> theta, const PceProblem& problem) {
  return pce_soft_objective(pce_correlators(pce_state(theta, problem), problem), problem);
}

std::vector<double> pce_gradient(std::span<const double> theta, const PceProblem& problem, double step) {
  std::vector<double> x(theta.begin(), theta.end());
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double keep = x[k];
    x[k] = keep + step;
    const double up = pce_soft_objective_at(x, problem);
    x[k] = keep - step;
    const double down = pce_soft_objective_at(x, problem);
    x[k] = keep;
    g[k] = (up - down) / (2.0 * step);
  }
  return g;
}

PceTraining train_pce(const PceProblem& problem, std::uint64_t seed, const AdamOptions& options) {
  RandomStream rng(seed);
  PceTraining out;
  out.theta.resize(static_cast<std::size_t>(problem.parameter_count()));
  for (double& t : out.theta) t = std::numbers::pi * (2.0 * rng.uniform() - 1.0);

  std::vector<double> m(out.theta.size(), 0.0);
  std::vector<double> v(out.theta.size(), 0.0);
  out.objective.push_back(pce_soft_objective_at(out.theta, problem));
  double b1t = 1.0;
  double b2t = 1.0;
  for (int step = 0; step < options.steps; ++step) {
    const auto g = pce_gradient(out.theta, problem, options.fd_step);
    b1t *= options.beta1;
    b2t *= options.beta2;
    for (std::size_t k = 0; k < g.size(); ++k) {
      m[k] = options.beta1 * m[k] + (1.0 - options.beta1) * g[k];
      v[k] = options.beta2 * v[k] + (1.0 - options.beta2) * g[k] * g[k];
      const double m_hat = m[k] / (1.0 - b1t);
      const double v_hat = v[k] / (1.0 - b2t);
      // Ascent: the objective is maximized.
      out.theta[k] += options.learning_rate * m_hat / (std::sqrt(v_hat) + options.epsilon);
    }
    out.objective.push_back(pce_soft_objective_at(out.theta, problem));
  }
  return out;
}

std::map<std::string, int> pce_decode(const PceProblem& problem,
                                      const std::map<std::string, double>& correlators) {
  std::map<std::string, int> out;
  for (const auto& v : problem.variables) {
    const auto it = correlators.find(v.label);
    if (it == correlators.end()) throw std::invalid_argument("pce_decode: missing correlator for '" + v.label + "'");
    out[v.label] = it->second < 0.0 ? -1 : 1;
  }
  return out;
}

double cut_value(const WeightedGraph& graph, std::span<const int> assignment) {
  if (static_cast<int>(assignment.size()) != graph.size()) {
    throw std::invalid_argument("cut_value: one assignment per vertex required");
  }
  double total = 0.0;
  for (const auto& e : graph.edges()) {
    const int xu = assignment[static_cast<std::size_t>(e.u)];
    const int xv = assignment[static_cast<std::size_t>(e.v)];
    if ((xu != 1 && xu != -1) || (xv != 1 && xv != -1)) {
      throw std::invalid_argument("cut_value: assignment entries must be +1 or -1");
    }
    total += e.weight * (1.0 - xu * xv) / 2.0;
  }
  return total;
}

}  // namespace rshadow
