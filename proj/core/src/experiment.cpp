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
#include "rshadow/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rshadow/oracle.hpp"
#include "rshadow/records.hpp"

#ifndef RSHADOW_VERSION
#define RSHADOW_VERSION "0.0.0"
#endif
#ifndef RSHADOW_DEFAULT_DATA_DIR
#define RSHADOW_DEFAULT_DATA_DIR ""
#endif
#ifndef RSHADOW_INSTALL_DATA_DIR
#define RSHADOW_INSTALL_DATA_DIR ""
#endif

namespace rshadow {

const char* version() { return RSHADOW_VERSION; }

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---- config helpers -------------------------------------------------------

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(join(path, key), "unknown field");
    }
  }
}

template <typename T>
T as(const json& v, const std::string& path) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path, "has the wrong type");
  }
}

template <typename T>
T get_or(const json& obj, const std::string& path, const char* key, T fallback) {
  return obj.contains(key) ? as<T>(obj.at(key), join(path, key)) : fallback;
}

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw ConfigError(join(path, key), "missing required field");
  return obj.at(key);
}

std::vector<int> int_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected a list of qubit indices");
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(as<int>(v[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

ReadoutNoiseModel parse_model(const json& m, const std::string& path) {
  check_keys(m, path, {"per_qubit", "pairwise", "drift"});
  ReadoutNoiseModel model;
  const json& pq = require(m, path, "per_qubit");
  if (!pq.is_array() || pq.empty()) throw ConfigError(join(path, "per_qubit"), "expected a non-empty list");
  for (std::size_t k = 0; k < pq.size(); ++k) {
    const std::string p = join(path, "per_qubit") + "[" + std::to_string(k) + "]";
    check_keys(pq[k], p, {"p01", "p10"});
    model.per_qubit.push_back({as<double>(require(pq[k], p, "p01"), join(p, "p01")),
                               as<double>(require(pq[k], p, "p10"), join(p, "p10"))});
  }
  if (m.contains("pairwise")) {
    const json& pw = m.at("pairwise");
    for (std::size_t k = 0; k < pw.size(); ++k) {
      const std::string p = join(path, "pairwise") + "[" + std::to_string(k) + "]";
      check_keys(pw[k], p, {"first", "second", "p_both"});
      model.pairwise.push_back({as<int>(require(pw[k], p, "first"), join(p, "first")),
                                as<int>(require(pw[k], p, "second"), join(p, "second")),
                                as<double>(require(pw[k], p, "p_both"), join(p, "p_both"))});
    }
  }
  if (m.contains("drift")) {
    std::vector<std::pair<std::int64_t, double>> knots;
    for (const auto& k : m.at("drift")) {
      if (!k.is_array() || k.size() != 2) throw ConfigError(join(path, "drift"), "expected [clock, factor] pairs");
      knots.emplace_back(as<std::int64_t>(k[0], join(path, "drift")), as<double>(k[1], join(path, "drift")));
    }
    try {
      model.drift = DriftSchedule(std::move(knots));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(join(path, "drift"), e.what());
    }
  }
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return model;
}

fs::path data_file(const json& obj, const std::string& path, const char* key, const char* fallback,
                   const fs::path& base_dir) {
  const fs::path name = obj.contains(key) ? fs::path(as<std::string>(obj.at(key), join(path, key))) : fs::path(fallback);
  try {
    return resolve_data_file(name, base_dir);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, key), e.what());
  }
}

// ---- formatting -------------------------------------------------------------

std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string qubit_list(const std::vector<int>& qs) {
  std::string s;
  for (std::size_t k = 0; k < qs.size(); ++k) s += (k ? "-" : "") + std::to_string(qs[k]);
  return s;
}

std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int state_width(const StateSpec& spec) {
  switch (spec.kind) {
    case StateKind::haar_product: return spec.n_qubits;
    case StateKind::qaoa: return WeightedGraph::load(spec.graph_file).size();
    case StateKind::pce: return 5;
  }
  return 0;
}

std::string kind_name(EstimandKind k) {
  switch (k) {
    case EstimandKind::fidelity: return "fidelity";
    case EstimandKind::correlator: return "correlator";
    case EstimandKind::purity: return "purity";
  }
  return "";
}

}  // namespace

fs::path resolve_data_file(const fs::path& name, const fs::path& base_dir) {
  if (name.is_absolute()) {
    if (fs::exists(name)) return name;
    throw std::invalid_argument("file not found: " + name.string());
  }
  std::vector<fs::path> candidates;
  if (!base_dir.empty()) candidates.push_back(base_dir / name);
  candidates.push_back(fs::current_path() / name);
  if (const char* env = std::getenv("RSHADOW_DATA_DIR"); env && *env) candidates.push_back(fs::path(env) / name);
  if (*RSHADOW_INSTALL_DATA_DIR) candidates.push_back(fs::path(RSHADOW_INSTALL_DATA_DIR) / name);
  if (*RSHADOW_DEFAULT_DATA_DIR) candidates.push_back(fs::path(RSHADOW_DEFAULT_DATA_DIR) / name);
  for (const auto& c : candidates) {
    if (fs::exists(c)) return fs::absolute(c).lexically_normal();
  }
  throw std::invalid_argument("file not found: " + name.string());
}

ExperimentConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
  }
  check_keys(doc, "", {"seed", "output", "state", "noise", "plan", "estimands", "estimation"});
  ExperimentConfig cfg;
  cfg.seed = get_or<std::uint64_t>(doc, "", "seed", 1);
  if (doc.contains("output")) {
    const fs::path out = as<std::string>(doc["output"], "output");
    cfg.output = out.is_absolute() || base_dir.empty() ? out : base_dir / out;
  }

  // state
  const json& st = require(doc, "", "state");
  check_keys(st, "state", {"type", "n_qubits", "seed", "graph_file", "gamma", "beta", "theta_file",
                           "train_seed", "train_steps"});
  const std::string type = as<std::string>(require(st, "state", "type"), "state.type");
  if (type == "haar-product") {
    cfg.state.kind = StateKind::haar_product;
    cfg.state.n_qubits = get_or<int>(st, "state", "n_qubits", 12);
    cfg.state.seed = get_or<std::uint64_t>(st, "state", "seed", 1);
    if (cfg.state.n_qubits < 1 || cfg.state.n_qubits > kMaxQubits) {
      throw ConfigError("state.n_qubits", "must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
  } else if (type == "qaoa") {
    cfg.state.kind = StateKind::qaoa;
    cfg.state.graph_file = data_file(st, "state", "graph_file", "austria_capitals.json", base_dir);
    cfg.state.gamma = get_or<double>(st, "state", "gamma", kQaoaGamma);
    cfg.state.beta = get_or<double>(st, "state", "beta", kQaoaBeta);
  } else if (type == "pce") {
    cfg.state.kind = StateKind::pce;
    cfg.state.graph_file = data_file(st, "state", "graph_file", "eu_capitals.json", base_dir);
    if (st.contains("theta_file")) cfg.state.theta_file = data_file(st, "state", "theta_file", "", base_dir);
    cfg.state.train_seed = get_or<std::uint64_t>(st, "state", "train_seed", 1);
    cfg.state.train_steps = get_or<int>(st, "state", "train_steps", 500);
    if (cfg.state.train_steps < 0) throw ConfigError("state.train_steps", "must be >= 0");
  } else {
    throw ConfigError("state.type", "unknown state type '" + type + "' (haar-product, qaoa, pce)");
  }

  // noise
  const json& nz = require(doc, "", "noise");
  check_keys(nz, "noise", {"preset", "symmetric", "model", "model_file", "drift", "pairwise"});
  const int sources = static_cast<int>(nz.contains("preset")) + static_cast<int>(nz.contains("symmetric")) +
                      static_cast<int>(nz.contains("model")) + static_cast<int>(nz.contains("model_file"));
  if (sources != 1) throw ConfigError("noise", "give exactly one of preset, symmetric, model, model_file");
  if (nz.contains("preset")) {
    try {
      cfg.noise.preset = parse_preset(as<std::string>(nz["preset"], "noise.preset"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("noise.preset", e.what());
    }
  } else if (nz.contains("symmetric")) {
    cfg.noise.symmetric = as<double>(nz["symmetric"], "noise.symmetric");
  } else if (nz.contains("model")) {
    cfg.noise.model = parse_model(nz["model"], "noise.model");
  } else {
    const fs::path file = data_file(nz, "noise", "model_file", "", base_dir);
    std::ifstream in(file);
    std::ostringstream text;
    text << in.rdbuf();
    json m;
    try {
      m = json::parse(text.str());
    } catch (const json::exception& e) {
      throw ConfigError("noise.model_file", std::string("not valid JSON: ") + e.what());
    }
    cfg.noise.model = parse_model(m, "noise.model_file");
  }
  if (nz.contains("drift")) {
    const json& d = nz["drift"];
    check_keys(d, "noise.drift", {"from", "to"});
    cfg.noise.drift = std::make_pair(get_or<double>(d, "noise.drift", "from", 1.0),
                                     as<double>(require(d, "noise.drift", "to"), "noise.drift.to"));
  }
  if (nz.contains("pairwise")) {
    for (std::size_t k = 0; k < nz["pairwise"].size(); ++k) {
      const std::string p = "noise.pairwise[" + std::to_string(k) + "]";
      const json& e = nz["pairwise"][k];
      check_keys(e, p, {"first", "second", "p_both"});
      cfg.noise.extra_pairs.push_back({as<int>(require(e, p, "first"), join(p, "first")),
                                       as<int>(require(e, p, "second"), join(p, "second")),
                                       as<double>(require(e, p, "p_both"), join(p, "p_both"))});
    }
  }

  // plan
  if (doc.contains("plan")) {
    const json& pl = doc["plan"];
    check_keys(pl, "plan", {"shots", "batches", "calibration_shots_per_phase"});
    cfg.plan.shots = get_or<std::int64_t>(pl, "plan", "shots", cfg.plan.shots);
    cfg.plan.batches = get_or<int>(pl, "plan", "batches", cfg.plan.batches);
    cfg.plan.calibration_shots_per_phase = get_or<std::int64_t>(pl, "plan", "calibration_shots_per_phase", 0);
  }
  if (cfg.plan.shots < 1) throw ConfigError("plan.shots", "must be >= 1");
  if (cfg.plan.batches < 1 || cfg.plan.batches > cfg.plan.shots) {
    throw ConfigError("plan.batches", "must be in [1, plan.shots]");
  }
  if (cfg.plan.calibration_shots_per_phase < 0) throw ConfigError("plan.calibration_shots_per_phase", "must be >= 0");

  // estimands
  auto& es = cfg.estimands;
  if (doc.contains("estimands")) {
    const json& e = doc["estimands"];
    check_keys(e, "estimands", {"fidelities", "correlators", "purities", "purity_estimator"});
    if (e.contains("fidelities")) {
      if (e["fidelities"].is_string()) {
        if (e["fidelities"] != "all") throw ConfigError("estimands.fidelities", "expected \"all\" or a list");
        es.all_fidelities = true;
      } else {
        es.fidelities = int_list(e["fidelities"], "estimands.fidelities");
      }
    }
    if (e.contains("correlators")) {
      if (e["correlators"].is_string()) {
        if (e["correlators"] != "pce") throw ConfigError("estimands.correlators", "expected \"pce\" or a list");
        es.pce_correlators = true;
      } else {
        for (std::size_t k = 0; k < e["correlators"].size(); ++k) {
          const std::string p = "estimands.correlators[" + std::to_string(k) + "]";
          const json& c = e["correlators"][k];
          check_keys(c, p, {"qubits", "paulis", "label"});
          const auto qs = int_list(require(c, p, "qubits"), join(p, "qubits"));
          const auto ps = as<std::string>(require(c, p, "paulis"), join(p, "paulis"));
          if (qs.size() != 2 || ps.size() != 2) throw ConfigError(p, "expected two qubits and two Pauli labels");
          for (char ch : ps) {
            if (ch != 'X' && ch != 'Y' && ch != 'Z') throw ConfigError(join(p, "paulis"), "labels must be X, Y or Z");
          }
          es.correlators.push_back({qs[0], qs[1], ps[0], ps[1], get_or<std::string>(c, p, "label", "")});
        }
      }
    }
    if (e.contains("purities")) {
      if (e["purities"].is_string()) {
        if (e["purities"] != "all-pairs") throw ConfigError("estimands.purities", "expected \"all-pairs\" or a list");
        es.all_pair_purities = true;
      } else {
        for (std::size_t k = 0; k < e["purities"].size(); ++k) {
          es.purities.push_back(int_list(e["purities"][k], "estimands.purities[" + std::to_string(k) + "]"));
        }
      }
    }
    const std::string pe = get_or<std::string>(e, "estimands", "purity_estimator",
                                               cfg.state.kind == StateKind::qaoa ? "naive" : "same-basis");
    if (pe == "naive") {
      es.purity_estimator = PurityEstimator::naive;
    } else if (pe == "same-basis") {
      es.purity_estimator = PurityEstimator::same_basis;
    } else {
      throw ConfigError("estimands.purity_estimator", "expected \"naive\" or \"same-basis\"");
    }
  } else {
    switch (cfg.state.kind) {
      case StateKind::haar_product: es.all_fidelities = true; break;
      case StateKind::qaoa:
        es.all_pair_purities = true;
        es.purity_estimator = PurityEstimator::naive;
        break;
      case StateKind::pce:
        es.pce_correlators = true;
        es.all_pair_purities = true;
        es.purity_estimator = PurityEstimator::same_basis;
        break;
    }
  }

  // estimation
  if (doc.contains("estimation")) {
    const json& e = doc["estimation"];
    check_keys(e, "estimation", {"calibration", "bootstrap_resamples", "refit_calibration",
                                 "calibration_bootstrap", "pair_cap"});
    const std::string use = get_or<std::string>(e, "estimation", "calibration", "pooled");
    if (use == "pooled") {
      cfg.estimation.calibration = CalibrationUse::pooled;
    } else if (use == "batched") {
      cfg.estimation.calibration = CalibrationUse::batched;
    } else {
      throw ConfigError("estimation.calibration", "expected \"pooled\" or \"batched\"");
    }
    cfg.estimation.bootstrap_resamples = get_or<int>(e, "estimation", "bootstrap_resamples", 20);
    cfg.estimation.refit_calibration = get_or<bool>(e, "estimation", "refit_calibration", true);
    cfg.estimation.calibration_bootstrap = get_or<int>(e, "estimation", "calibration_bootstrap", 200);
    cfg.estimation.pair_cap = get_or<std::int64_t>(e, "estimation", "pair_cap", 1'000'000);
  }
  if (cfg.estimation.bootstrap_resamples < 2) throw ConfigError("estimation.bootstrap_resamples", "must be >= 2");
  if (cfg.estimation.calibration_bootstrap < 0) throw ConfigError("estimation.calibration_bootstrap", "must be >= 0");
  if (cfg.estimation.pair_cap < 1) throw ConfigError("estimation.pair_cap", "must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), fs::absolute(path).parent_path());
}

std::string state_name(StateKind kind) {
  switch (kind) {
    case StateKind::haar_product: return "haar-product";
    case StateKind::qaoa: return "qaoa";
    case StateKind::pce: return "pce";
  }
  return "";
}

std::string noise_label(const NoiseSpec& spec) {
  std::string s;
  if (spec.preset) {
    s = std::string(preset_info(*spec.preset).name);
  } else if (spec.symmetric) {
    s = "symmetric-" + num(*spec.symmetric);
  } else {
    s = "custom";
  }
  if (spec.drift) s += "+drift";
  if (!spec.extra_pairs.empty()) s += "+pairs";
  return s;
}

PreparedState prepare_state(const StateSpec& spec) {
  PreparedState p;
  p.kind = spec.kind;
  switch (spec.kind) {
    case StateKind::haar_product: {
      HaarProductState h = haar_product_state(spec.n_qubits, spec.seed);
      p.targets = h.qubits;
      p.sampler = std::make_unique<ProductSampler>(h.qubits);
      p.state = std::move(h.state);
      break;
    }
    case StateKind::qaoa: {
      p.state = qaoa_layer_state(WeightedGraph::load(spec.graph_file), spec.gamma, spec.beta);
      p.sampler = std::make_unique<DenseSampler>(p.state);
      break;
    }
    case StateKind::pce: {
      PceProblem problem = PceProblem::from_graph(WeightedGraph::load(spec.graph_file));
      if (spec.theta_file) {
        std::ifstream in(*spec.theta_file);
        json theta;
        try {
          in >> theta;
          p.pce_theta = theta.get<std::vector<double>>();
        } catch (const json::exception& e) {
          throw ConfigError("state.theta_file", std::string("expected a JSON list of angles: ") + e.what());
        }
        if (static_cast<int>(p.pce_theta.size()) != problem.parameter_count()) {
          throw ConfigError("state.theta_file", "expected " + std::to_string(problem.parameter_count()) + " angles");
        }
      } else {
        AdamOptions adam;
        adam.steps = spec.train_steps;
        p.pce_theta = train_pce(problem, spec.train_seed, adam).theta;
      }
      p.state = pce_state(p.pce_theta, problem);
      p.sampler = std::make_unique<DenseSampler>(p.state);
      p.pce = std::move(problem);
      break;
    }
  }
  return p;
}

ExperimentPlan plan_for(const ExperimentConfig& config) {
  std::int64_t per_phase = config.plan.calibration_shots_per_phase;
  if (per_phase == 0) {
    if (config.noise.preset) {
      const std::int64_t budget = preset_info(*config.noise.preset).calibration_shots;
      const std::int64_t phases = config.plan.batches + 1;
      per_phase = (budget + phases - 1) / phases;
    } else {
      per_phase = 1000;
    }
  }
  return make_plan(config.plan.shots, config.plan.batches, per_phase);
}

ReadoutNoiseModel build_noise_model(const NoiseSpec& spec, int width, const ExperimentPlan& plan) {
  ReadoutNoiseModel model;
  if (spec.preset) {
    model = make_preset(*spec.preset);
    if (width > model.width()) {
      throw ConfigError("noise.preset", "preset covers " + std::to_string(model.width()) + " qubits, state has " +
                                            std::to_string(width));
    }
    if (width < model.width()) {
      std::vector<int> first(static_cast<std::size_t>(width));
      for (int q = 0; q < width; ++q) first[static_cast<std::size_t>(q)] = q;
      model = model.restrict(first);
    }
  } else if (spec.symmetric) {
    if (*spec.symmetric < 0.0 || *spec.symmetric > 1.0) throw ConfigError("noise.symmetric", "must be in [0, 1]");
    model = ReadoutNoiseModel::symmetric(width, *spec.symmetric);
  } else if (spec.model) {
    model = *spec.model;
    if (model.width() != width) {
      throw ConfigError("noise.model", "model covers " + std::to_string(model.width()) + " qubits, state has " +
                                           std::to_string(width));
    }
  } else {
    throw ConfigError("noise", "no noise source");
  }
  for (const auto& p : spec.extra_pairs) model.pairwise.push_back(p);
  if (spec.drift) {
    model.drift = DriftSchedule::linear(0, std::max<std::int64_t>(plan.total_clock() - 1, 1), spec.drift->first,
                                        spec.drift->second);
  }
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("noise", e.what());
  }
  return model;
}

RunData simulate_run(const ExperimentConfig& config, const PreparedState& prepared,
                     const ReadoutNoiseModel& model, bool calibration_only) {
  RunData run;
  run.plan = plan_for(config);
  const int n = prepared.state.n_qubits();
  const SimulatedReadout device(model);
  const RandomStream root(config.seed);
  const RandomStream calib_rng = root.split(1);
  const RandomStream acq_rng = root.split(2);
  for (const auto& phase : run.plan.phases) {
    if (phase.kind == PhaseKind::calibration) {
      auto shots = run_calibration(n, phase.shots, device, calib_rng, phase.index, phase.clock_begin);
      run.calibration.insert(run.calibration.end(), shots.begin(), shots.end());
    } else if (!calibration_only) {
      auto shots = run_shadow_acquisition(*prepared.sampler, phase.shots, device, acq_rng, phase.index,
                                          phase.clock_begin);
      run.shadows.insert(run.shadows.end(), shots.begin(), shots.end());
    }
  }
  return run;
}

std::vector<Estimand> resolve_estimands(const ExperimentConfig& config, const PreparedState& prepared) {
  const int n = prepared.state.n_qubits();
  const auto& es = config.estimands;
  std::vector<Estimand> out;
  auto check = [&](int q, const std::string& field) {
    if (q < 0 || q >= n) throw ConfigError(field, "qubit " + std::to_string(q) + " outside the register");
  };

  std::vector<int> fids = es.fidelities;
  if (es.all_fidelities) {
    fids.clear();
    for (int q = 0; q < n; ++q) fids.push_back(q);
  }
  if (!fids.empty() && prepared.targets.empty()) {
    throw ConfigError("estimands.fidelities", "fidelity targets exist only for the haar-product state");
  }
  for (int q : fids) {
    check(q, "estimands.fidelities");
    out.push_back({EstimandKind::fidelity, {q}, "", "F" + std::to_string(q)});
  }

  if (es.pce_correlators) {
    if (!prepared.pce) throw ConfigError("estimands.correlators", "\"pce\" needs the pce state");
    for (const auto& v : prepared.pce->variables) {
      out.push_back({EstimandKind::correlator, {v.i, v.j}, std::string(2, v.axis), v.label});
    }
  }
  for (const auto& c : es.correlators) {
    check(c.i, "estimands.correlators");
    check(c.j, "estimands.correlators");
    if (c.i == c.j) throw ConfigError("estimands.correlators", "correlator qubits must differ");
    std::string label = c.label;
    if (label.empty()) label = std::string(1, c.pauli_i) + std::to_string(c.i) + c.pauli_j + std::to_string(c.j);
    out.push_back({EstimandKind::correlator, {c.i, c.j}, std::string{c.pauli_i, c.pauli_j}, label});
  }

  std::vector<std::vector<int>> subsets = es.purities;
  if (es.all_pair_purities) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) subsets.push_back({i, j});
    }
  }
  for (const auto& s : subsets) {
    if (s.empty()) throw ConfigError("estimands.purities", "empty subset");
    for (int q : s) check(q, "estimands.purities");
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("estimands.purities", "repeated qubit in subset");
    }
    out.push_back({EstimandKind::purity, s, "", "P" + qubit_list(s)});
  }
  return out;
}

namespace {

// Shot-weighted oracle coefficients over the given phases; exact for linear
// drift since f is linear in the rates.
std::vector<double> averaged_coefficients(const ReadoutNoiseModel& model, const ExperimentPlan& plan,
                                          PhaseKind kind) {
  std::vector<double> f(static_cast<std::size_t>(model.width()), 0.0);
  double total = 0.0;
  for (const auto& ph : plan.phases) {
    if (ph.kind != kind) continue;
    const std::int64_t mid = ph.clock_begin + (ph.shots - 1) / 2;
    const double w = static_cast<double>(ph.shots);
    for (int q = 0; q < model.width(); ++q) {
      double fq = oracle::local_coefficient(model, q, mid);
      if (ph.shots % 2 == 0) fq = 0.5 * (fq + oracle::local_coefficient(model, q, mid + 1));
      f[static_cast<std::size_t>(q)] += w * fq;
    }
    total += w;
  }
  for (double& x : f) x /= total;
  return f;
}

RecordEstimator make_estimator(const Estimand& e, const PreparedState& prepared, PurityEstimator purity,
                               std::int64_t pair_cap) {
  // Records arrive projected onto the estimand's qubits.
  switch (e.kind) {
    case EstimandKind::fidelity: {
      const Qubit2 target = prepared.targets.at(static_cast<std::size_t>(e.qubits[0]));
      return [target](std::span<const ShadowShot> s, const LocalCoefficients& f) {
        return estimate_fidelity_1q(s, f, target, 0).value;
      };
    }
    case EstimandKind::correlator: {
      const char a = e.paulis[0];
      const char b = e.paulis[1];
      return [a, b](std::span<const ShadowShot> s, const LocalCoefficients& f) {
        return estimate_pauli_correlator(s, f, 0, a, 1, b).value;
      };
    }
    case EstimandKind::purity: {
      std::vector<int> local(e.qubits.size());
      for (std::size_t k = 0; k < local.size(); ++k) local[k] = static_cast<int>(k);
      PairOptions opts;
      opts.pair_cap = pair_cap;
      if (purity == PurityEstimator::naive) {
        return [local, opts](std::span<const ShadowShot> s, const LocalCoefficients& f) {
          return estimate_purity_naive(s, f, local, opts).value;
        };
      }
      return [local, opts](std::span<const ShadowShot> s, const LocalCoefficients& f) {
        return estimate_purity_samebasis(s, f, local, opts).value;
      };
    }
  }
  throw std::logic_error("unknown estimand kind");
}

double exact_value(const Estimand& e, const PreparedState& prepared) {
  switch (e.kind) {
    case EstimandKind::fidelity: {
      const auto rho = reduced_density(prepared.state, e.qubits);
      const Qubit2& phi = prepared.targets.at(static_cast<std::size_t>(e.qubits[0]));
      return (phi.adjoint() * rho.matrix() * phi)(0, 0).real();
    }
    case EstimandKind::correlator: {
      std::string label(static_cast<std::size_t>(prepared.state.n_qubits()), 'I');
      label[static_cast<std::size_t>(e.qubits[0])] = e.paulis[0];
      label[static_cast<std::size_t>(e.qubits[1])] = e.paulis[1];
      return exact_expectation(prepared.state, label);
    }
    case EstimandKind::purity: return purity(reduced_density(prepared.state, e.qubits));
  }
  return kNaN;
}

double theory_bias(const Estimand& e, const PreparedState& prepared, const std::vector<double>& f, double exact) {
  auto fq = [&](int k) { return f.at(static_cast<std::size_t>(e.qubits.at(static_cast<std::size_t>(k)))); };
  switch (e.kind) {
    case EstimandKind::fidelity: return oracle::bias_fidelity_1q(fq(0), exact - 0.5);
    case EstimandKind::correlator: return oracle::bias_pauli_2q(fq(0), fq(1), exact);
    case EstimandKind::purity:
      if (e.qubits.size() == 1) return oracle::bias_purity_1q(fq(0), exact);
      if (e.qubits.size() == 2) {
        const int a[1] = {e.qubits[0]};
        const int b[1] = {e.qubits[1]};
        return oracle::bias_purity_2q(fq(0), fq(1), purity(reduced_density(prepared.state, a)),
                                      purity(reduced_density(prepared.state, b)), exact);
      }
      return kNaN;
  }
  return kNaN;
}

}  // namespace

CalibrationSummary summarize_calibration(const ExperimentConfig& config, const RunData& run,
                                         const ReadoutNoiseModel& model) {
  if (run.calibration.empty()) throw std::invalid_argument("no calibration records");
  CalibrationSummary s;
  s.noise = noise_label(config.noise);
  const int n = run.calibration.front().flip_mask.width();
  CalibrationOptions opts;
  opts.pairs = all_pairs(n);
  opts.adjacent_pairs = false;
  opts.bootstrap_resamples = config.estimation.calibration_bootstrap;
  opts.bootstrap_seed = mix64(config.seed ^ 0x63616c6962ull);
  s.pooled = estimate_f(run.calibration, opts);

  std::map<int, std::vector<CalibrationShot>> phases;
  for (const auto& c : run.calibration) phases[c.batch].push_back(c);
  CalibrationOptions quick;
  quick.adjacent_pairs = false;
  quick.bootstrap_resamples = 0;
  for (const auto& [idx, shots] : phases) {
    s.phases.push_back(estimate_f(shots, quick));
    s.phase_clock.push_back(shots.front().shot_index);
  }
  for (double f : averaged_coefficients(model, run.plan, PhaseKind::calibration)) {
    s.p_flip_true.push_back(0.5 * (1.0 - 3.0 * f));
  }
  return s;
}

EstimationReport estimate_run(const ExperimentConfig& config, const PreparedState& prepared,
                              const ReadoutNoiseModel& model, const RunData& run) {
  if (run.shadows.empty()) throw std::invalid_argument("no shadow records");
  const int n = prepared.state.n_qubits();
  if (run.shadows.front().width() != n) throw std::invalid_argument("shadow records do not match the state width");

  EstimationReport report;
  report.state = state_name(prepared.kind);
  report.noise = noise_label(config.noise);
  report.shots = static_cast<std::int64_t>(run.shadows.size());
  report.calibration = summarize_calibration(config, run, model);

  const LocalCoefficients f_nr = LocalCoefficients::noiseless(n);
  const LocalCoefficients f_r = config.non_robust ? f_nr : report.calibration.pooled.coefficients();
  const std::vector<double> f_true = averaged_coefficients(model, run.plan, PhaseKind::acquisition);

  // Phase estimates come back in calibration-phase order; map them to slots.
  std::vector<std::optional<CalibrationEstimate>> by_phase(static_cast<std::size_t>(run.plan.n_batches + 1));
  {
    std::map<int, int> phase_ids;
    for (const auto& c : run.calibration) phase_ids.emplace(c.batch, 0);
    std::size_t k = 0;
    for (const auto& [idx, _] : phase_ids) {
      if (idx >= 0 && idx < static_cast<int>(by_phase.size())) {
        by_phase[static_cast<std::size_t>(idx)] = report.calibration.phases.at(k);
      }
      ++k;
    }
  }

  const RandomStream boot = RandomStream(config.seed).split(3);
  const auto estimands = resolve_estimands(config, prepared);
  std::uint64_t stream = 0;
  for (const auto& e : estimands) {
    const RecordEstimator est = make_estimator(e, prepared, config.estimands.purity_estimator, config.estimation.pair_cap);
    BootstrapOptions opts;
    opts.resamples = config.estimation.bootstrap_resamples;
    opts.joint = e.qubits;

    EstimateRow row;
    row.estimand = e;
    row.estimator = e.kind == EstimandKind::purity
                        ? (config.estimands.purity_estimator == PurityEstimator::naive ? "naive" : "same-basis")
                        : "linear";
    row.exact = exact_value(e, prepared);

    const BootstrapResult nr = bootstrap_ci(est, run.shadows, f_nr, boot.split(stream++), opts);
    row.non_robust = nr.estimate;
    row.non_robust_ci = nr.interval;

    if (!config.non_robust && config.estimation.refit_calibration) opts.calibration = run.calibration;
    const BootstrapResult r = bootstrap_ci(est, run.shadows, f_r, boot.split(stream++), opts);
    row.robust = r.estimate;
    row.robust_ci = r.interval;

    if (config.estimation.calibration == CalibrationUse::batched && !config.non_robust) {
      const std::vector<int> support = e.qubits;
      const RecordEstimator full = [&est, support](std::span<const ShadowShot> s, const LocalCoefficients& f) {
        const auto projected = project_records(s, support);
        return est(projected, f.project(support));
      };
      const BatchedEstimate b = batched_estimates(full, run.shadows, by_phase, CalibrationPairing::bracketing);
      // Spread from the pooled bootstrap, centred on the batched estimate.
      const double shift = b.pooled - row.robust;
      row.robust = b.pooled;
      row.robust_ci = {row.robust_ci.low + shift, row.robust_ci.high + shift};
      for (const auto& br : b.batches) report.batches.push_back({e.label, br.batch, br.shots, br.estimate});
    }
    row.theory_bias = theory_bias(e, prepared, f_true, row.exact);
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_calibration_outputs(const fs::path& dir, const CalibrationSummary& s) {
  ensure_dir(dir);
  const auto& est = s.pooled;
  {
    auto out = open_out(dir / "calibration.csv");
    out << "schema_version,noise,qubit,f,f_sd,p_flip,p_flip_ci_low,p_flip_ci_high,p_flip_true\n";
    for (int q = 0; q < est.width(); ++q) {
      const auto uq = static_cast<std::size_t>(q);
      const double sd = est.sigma ? est.sigma->f_local[uq] : kNaN;
      const Interval ci = est.sigma ? est.p_flip_ci(q) : Interval{kNaN, kNaN};
      out << kCsvSchemaVersion << ',' << csv_field(s.noise) << ',' << q << ',' << num(est.f_local[uq]) << ','
          << num(sd) << ',' << num(est.p_flip[uq]) << ',' << num(ci.low) << ',' << num(ci.high) << ','
          << num(uq < s.p_flip_true.size() ? s.p_flip_true[uq] : kNaN) << '\n';
    }
  }
  {
    auto out = open_out(dir / "crosstalk.csv");
    out << "schema_version,noise,qubit_i,qubit_j,f_pair,statistic,sigma,z\n";
    for (const auto& [pair, fp] : est.f_pair) {
      const double stat = crosstalk_statistic(est, pair.first, pair.second);
      const double sig = est.sigma ? crosstalk_sigma(est, pair.first, pair.second) : kNaN;
      out << kCsvSchemaVersion << ',' << csv_field(s.noise) << ',' << pair.first << ',' << pair.second << ','
          << num(fp) << ',' << num(stat) << ',' << num(sig) << ',' << num(sig > 0 ? stat / sig : kNaN) << '\n';
    }
  }
  {
    auto out = open_out(dir / "calibration_phases.csv");
    out << "schema_version,noise,phase,clock_begin,shots,qubit,f,p_flip\n";
    for (std::size_t k = 0; k < s.phases.size(); ++k) {
      const auto& ph = s.phases[k];
      for (int q = 0; q < ph.width(); ++q) {
        out << kCsvSchemaVersion << ',' << csv_field(s.noise) << ',' << k << ',' << s.phase_clock[k] << ','
            << ph.n_shots << ',' << q << ',' << num(ph.f_local[static_cast<std::size_t>(q)]) << ','
            << num(ph.p_flip[static_cast<std::size_t>(q)]) << '\n';
      }
    }
  }
}

void write_estimate_outputs(const fs::path& dir, const EstimationReport& report) {
  write_calibration_outputs(dir, report.calibration);
  {
    auto out = open_out(dir / "estimates.csv");
    out << "schema_version,state,noise,kind,qubits,paulis,label,estimator,exact,robust,robust_ci_low,"
           "robust_ci_high,non_robust,non_robust_ci_low,non_robust_ci_high,delta_nr,delta_r,delta_gain,"
           "theory_bias\n";
    for (const auto& r : report.rows) {
      const double dnr = std::abs(r.non_robust - r.exact);
      const double dr = std::abs(r.robust - r.exact);
      out << kCsvSchemaVersion << ',' << report.state << ',' << csv_field(report.noise) << ','
          << kind_name(r.estimand.kind) << ',' << qubit_list(r.estimand.qubits) << ',' << r.estimand.paulis << ','
          << csv_field(r.estimand.label) << ',' << r.estimator << ',' << num(r.exact) << ',' << num(r.robust) << ','
          << num(r.robust_ci.low) << ',' << num(r.robust_ci.high) << ',' << num(r.non_robust) << ','
          << num(r.non_robust_ci.low) << ',' << num(r.non_robust_ci.high) << ',' << num(dnr) << ',' << num(dr)
          << ',' << num(dnr - dr) << ',' << num(r.theory_bias) << '\n';
    }
  }
  {
    auto out = open_out(dir / "batches.csv");
    out << "schema_version,estimand,batch,shots,robust\n";
    for (const auto& b : report.batches) {
      out << kCsvSchemaVersion << ',' << csv_field(b.estimand) << ',' << b.batch << ',' << b.shots << ','
          << num(b.robust) << '\n';
    }
  }
  {
    auto out = open_out(dir / "report.txt");
    char line[512];
    out << "rshadow estimation report\n";
    out << "state: " << report.state << "   noise: " << report.noise << "   shots: " << report.shots << "\n\n";
    out << "calibration (pooled over " << report.calibration.pooled.n_shots << " shots)\n";
    std::snprintf(line, sizeof line, "  %5s %10s %10s %10s\n", "qubit", "f", "p_flip", "p_true");
    out << line;
    const auto& cal = report.calibration;
    for (int q = 0; q < cal.pooled.width(); ++q) {
      const auto uq = static_cast<std::size_t>(q);
      std::snprintf(line, sizeof line, "  %5d %10.6f %10.6f %10.6f\n", q, cal.pooled.f_local[uq],
                    cal.pooled.p_flip[uq], uq < cal.p_flip_true.size() ? cal.p_flip_true[uq] : kNaN);
      out << line;
    }
    out << "\nestimates (CI: 95% parametric bootstrap)\n";
    std::snprintf(line, sizeof line, "  %-12s %-10s %-10s %9s %9s %21s %9s %21s %9s %9s %9s\n", "estimand",
                  "kind", "estimator", "exact", "robust", "robust CI", "nonrob", "nonrob CI", "dq_NR", "dq_R",
                  "theory");
    out << line;
    for (const auto& r : report.rows) {
      std::snprintf(line, sizeof line,
                    "  %-12.12s %-10s %-10s %9.5f %9.5f [%9.5f,%9.5f] %9.5f [%9.5f,%9.5f] %9.5f %9.5f %9.5f\n",
                    r.estimand.label.c_str(), kind_name(r.estimand.kind).c_str(), r.estimator.c_str(), r.exact,
                    r.robust, r.robust_ci.low, r.robust_ci.high, r.non_robust, r.non_robust_ci.low,
                    r.non_robust_ci.high, std::abs(r.non_robust - r.exact), std::abs(r.robust - r.exact),
                    r.theory_bias);
      out << line;
    }
  }
}

void write_run_meta(const fs::path& dir, const ExperimentConfig& config, const std::string& command) {
  ensure_dir(dir);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  json meta = {{"tool", "rshadow"},
               {"version", version()},
               {"command", command},
               {"created_utc", stamp},
               {"seed", config.seed},
               {"state", state_name(config.state.kind)},
               {"noise", noise_label(config.noise)},
               {"non_robust", config.non_robust},
               {"csv_schema_version", kCsvSchemaVersion},
               {"record_schema_version", kRecordSchemaVersion}};
  open_out(dir / "run_meta.json") << meta.dump(2) << '\n';
}

namespace {

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name, const fs::path& file) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ConfigError(file.string(), "missing column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
  }
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

CsvTable read_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string(), "missing input file");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(file.string(), "empty file");
  t.columns = split_csv(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != t.columns.size()) throw ConfigError(file.string(), "ragged row");
    if (cells[t.col("schema_version", file)] != std::to_string(kCsvSchemaVersion)) {
      throw ConfigError(file.string(), "unsupported schema_version " + cells[0]);
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::string panel_for(const std::string& kind, const std::string& state) {
  if (kind == "fidelity") return "d";
  if (kind == "correlator") return "g";
  return state == "pce" ? "f" : "e";
}

}  // namespace

void report_figures(std::span<const fs::path> run_dirs, const fs::path& out_dir) {
  if (run_dirs.empty()) throw ConfigError("inputs", "no run directories given");
  ensure_dir(out_dir);
  auto a = open_out(out_dir / "panel_a_flip_rates.csv");
  auto b = open_out(out_dir / "panel_b_pair_purities.csv");
  auto c = open_out(out_dir / "panel_c_correlators.csv");
  auto d = open_out(out_dir / "panel_dg_deviations.csv");
  a << "schema_version,noise,qubit,p_flip,ci_low,ci_high,p_flip_true\n";
  const std::string est_cols =
      "exact,robust,robust_ci_low,robust_ci_high,non_robust,non_robust_ci_low,non_robust_ci_high";
  b << "schema_version,state,noise,qubits,estimator," << est_cols << '\n';
  c << "schema_version,state,noise,qubits,paulis,label," << est_cols << '\n';
  d << "schema_version,panel,state,noise,estimand,mode,delta\n";

  for (const auto& dir : run_dirs) {
    const fs::path cal_file = dir / "calibration.csv";
    const CsvTable cal = read_csv(cal_file);
    for (const auto& r : cal.rows) {
      a << kCsvSchemaVersion << ',' << r[cal.col("noise", cal_file)] << ',' << r[cal.col("qubit", cal_file)] << ','
        << r[cal.col("p_flip", cal_file)] << ',' << r[cal.col("p_flip_ci_low", cal_file)] << ','
        << r[cal.col("p_flip_ci_high", cal_file)] << ',' << r[cal.col("p_flip_true", cal_file)] << '\n';
    }
    const fs::path est_file = dir / "estimates.csv";
    if (!fs::exists(est_file)) continue;  // calibration-only run
    const CsvTable est = read_csv(est_file);
    auto cell = [&](const std::vector<std::string>& r, const char* name) { return r[est.col(name, est_file)]; };
    auto tail = [&](const std::vector<std::string>& r) {
      std::string s;
      for (const char* k : {"exact", "robust", "robust_ci_low", "robust_ci_high", "non_robust",
                            "non_robust_ci_low", "non_robust_ci_high"}) {
        s += (s.empty() ? "" : ",") + cell(r, k);
      }
      return s;
    };
    for (const auto& r : est.rows) {
      const std::string kind = cell(r, "kind");
      const std::string qubits = cell(r, "qubits");
      if (kind == "purity" && std::count(qubits.begin(), qubits.end(), '-') == 1) {
        b << kCsvSchemaVersion << ',' << cell(r, "state") << ',' << cell(r, "noise") << ',' << qubits << ','
          << cell(r, "estimator") << ',' << tail(r) << '\n';
      }
      if (kind == "correlator") {
        c << kCsvSchemaVersion << ',' << cell(r, "state") << ',' << cell(r, "noise") << ',' << qubits << ','
          << cell(r, "paulis") << ',' << cell(r, "label") << ',' << tail(r) << '\n';
      }
      const std::string panel = panel_for(kind, cell(r, "state"));
      for (const auto& [mode, column] : {std::pair{"NR", "delta_nr"}, std::pair{"R", "delta_r"}}) {
        d << kCsvSchemaVersion << ',' << panel << ',' << cell(r, "state") << ',' << cell(r, "noise") << ','
          << cell(r, "label") << ',' << mode << ',' << cell(r, column) << '\n';
      }
    }
  }
}

namespace {

fs::path calibration_file(const ExperimentConfig& c) { return c.output / "calibration.jsonl"; }
fs::path shadow_file(const ExperimentConfig& c) { return c.output / "shadows.jsonl"; }

void write_records(const ExperimentConfig& config, const RunData& run, int width, bool shadows) {
  ensure_dir(config.output);
  {
    auto out = open_out(calibration_file(config));
    write_header(out, {kCalibrationSchema, kRecordSchemaVersion, width, config.seed});
    append_records(out, std::span<const CalibrationShot>(run.calibration));
  }
  if (shadows) {
    auto out = open_out(shadow_file(config));
    write_header(out, {kShadowSchema, kRecordSchemaVersion, width, config.seed});
    append_records(out, std::span<const ShadowShot>(run.shadows));
  }
}

}  // namespace

void cmd_calibrate(const ExperimentConfig& config) {
  const int n = state_width(config.state);
  PreparedState dummy;
  dummy.state = StateVector(n);
  dummy.sampler = std::make_unique<DenseSampler>(dummy.state);
  const ExperimentPlan plan = plan_for(config);
  const ReadoutNoiseModel model = build_noise_model(config.noise, n, plan);
  const RunData run = simulate_run(config, dummy, model, true);
  write_records(config, run, n, false);
  write_calibration_outputs(config.output, summarize_calibration(config, run, model));
  write_run_meta(config.output, config, "calibrate");
}

void cmd_acquire(const ExperimentConfig& config) {
  const PreparedState prepared = prepare_state(config.state);
  const int n = prepared.state.n_qubits();
  const ReadoutNoiseModel model = build_noise_model(config.noise, n, plan_for(config));
  const RunData run = simulate_run(config, prepared, model);
  write_records(config, run, n, true);
  write_run_meta(config.output, config, "acquire");
}

void cmd_estimate(const ExperimentConfig& config) {
  const PreparedState prepared = prepare_state(config.state);
  const int n = prepared.state.n_qubits();
  RunData run;
  run.plan = plan_for(config);
  const ReadoutNoiseModel model = build_noise_model(config.noise, n, run.plan);
  if (!fs::exists(calibration_file(config)) && !config.non_robust) {
    throw ConfigError("output", "no calibration records in " + config.output.string() + " (run acquire first)");
  }
  ShadowRecords shadows;
  try {
    if (fs::exists(calibration_file(config))) {
      run.calibration = read_calibration_records(calibration_file(config)).shots;
    }
    shadows = read_shadow_records(shadow_file(config));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("records", e.what());
  }
  if (shadows.header.width != n) throw ConfigError("state", "records were taken on a different register width");
  run.shadows = shadows.shots;
  write_estimate_outputs(config.output, estimate_run(config, prepared, model, run));
  write_run_meta(config.output, config, "estimate");
}

void cmd_run_all(const ExperimentConfig& config) {
  const PreparedState prepared = prepare_state(config.state);
  const int n = prepared.state.n_qubits();
  const ReadoutNoiseModel model = build_noise_model(config.noise, n, plan_for(config));
  const RunData run = simulate_run(config, prepared, model);
  write_records(config, run, n, true);
  write_estimate_outputs(config.output, estimate_run(config, prepared, model, run));
  const fs::path dirs[1] = {config.output};
  report_figures(dirs, config.output / "figures");
  write_run_meta(config.output, config, "run-all");
}

}  // namespace rshadow
