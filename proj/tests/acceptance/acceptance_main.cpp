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
// Acceptance suite: one PASS/FAIL line per criterion. Every run uses fixed
// seeds, so the output is reproducible. Pass criterion numbers as arguments
// to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "enumeration.hpp"
#include "rshadow/calibration.hpp"
#include "rshadow/experiment.hpp"
#include "rshadow/noise.hpp"
#include "rshadow/oracle.hpp"
#include "rshadow/shadows.hpp"
#include "rshadow/states.hpp"
#include "rshadow/stats.hpp"

namespace {

using namespace rshadow;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 for none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double z95() { return normal_quantile(0.975); }
double sd_of(const Interval& ci) { return ci.width() / (2.0 * z95()); }

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// --- 1 -------------------------------------------------------------------

Outcome calibration_correctness() {
  int inside = 0, total = 0;
  double worst = 0.0;
  int k = 0;
  for (double p : {0.0022, 0.0128, 0.0206}) {
    const SimulatedReadout device(ReadoutNoiseModel::symmetric(kPresetQubits, p));
    const auto shots = run_calibration(kPresetQubits, 30000, device, RandomStream(101).split(k++));
    CalibrationOptions opts;
    opts.adjacent_pairs = false;
    opts.bootstrap_resamples = 200;
    const auto est = estimate_f(shots, opts);
    for (int q = 0; q < kPresetQubits; ++q) {
      const double z = std::abs(est.p_flip[static_cast<std::size_t>(q)] - p) /
                       est.sigma->p_flip[static_cast<std::size_t>(q)];
      worst = std::max(worst, z);
      inside += z < 3.0;
      ++total;
    }
  }
  return {inside >= 0.95 * total, fmt("%d/%d qubits within 3 sigma, max |z| = %.2f", inside, total, worst)};
}

// --- 2 -------------------------------------------------------------------

ExperimentConfig haar_config(std::uint64_t seed, PulsePreset preset, std::int64_t shots) {
  ExperimentConfig c;
  c.seed = seed;
  c.state.kind = StateKind::haar_product;
  c.state.n_qubits = kPresetQubits;
  c.state.seed = seed;
  c.noise.preset = preset;
  c.plan.shots = shots;
  c.estimands.all_fidelities = true;
  return c;
}

struct Pipeline {
  PreparedState prepared;
  ReadoutNoiseModel model;
  RunData run;
};

Pipeline simulate(const ExperimentConfig& c) {
  Pipeline p{prepare_state(c.state), {}, {}};
  p.model = build_noise_model(c.noise, p.prepared.state.n_qubits(), plan_for(c));
  p.run = simulate_run(c, p.prepared, p.model);
  return p;
}

Outcome fidelity_bias() {
  struct Target {
    PulsePreset preset;
    double table;
  };
  bool ok = true;
  std::string detail;
  for (const Target t : {Target{PulsePreset::pulse_150us, 0.0206}, Target{PulsePreset::pulse_300us, 0.0128}}) {
    const auto model = make_preset(t.preset);
    double theory = 0.0;
    for (int q = 0; q < kPresetQubits; ++q) theory += oracle::bias_fidelity_1q(oracle::local_coefficient(model, q), 0.5);
    theory /= kPresetQubits;

    auto c = haar_config(202, t.preset, 200000);
    c.estimation.bootstrap_resamples = 50;
    const auto p = simulate(c);
    const auto report = estimate_run(c, p.prepared, p.model, p.run);

    double nr_dev = 0.0, r_dev = 0.0, nr_var = 0.0, r_var = 0.0, sim_theory = 0.0;
    for (const auto& row : report.rows) {
      nr_dev += row.exact - row.non_robust;
      r_dev += row.robust - row.exact;
      nr_var += std::pow(sd_of(row.non_robust_ci), 2);
      r_var += std::pow(sd_of(row.robust_ci), 2);
      sim_theory += row.theory_bias;
    }
    const double m = static_cast<double>(report.rows.size());
    nr_dev /= m;
    r_dev /= m;
    sim_theory /= m;
    const double nr_se = std::sqrt(nr_var) / m, r_se = std::sqrt(r_var) / m;

    const bool theory_ok = std::abs(theory - t.table) <= 0.002;
    const bool sim_ok = std::abs(nr_dev - sim_theory) <= z95() * nr_se;
    const bool robust_ok = std::abs(r_dev) < 3.0 * r_se;
    ok = ok && theory_ok && sim_ok && robust_ok;
    detail += fmt("%s theory %.5f (want %.4f) sim NR %.5f+-%.5f R %+.5f (3se %.5f); ",
                  std::string(preset_info(t.preset).name).c_str(), theory, t.table, nr_dev, z95() * nr_se, r_dev,
                  3.0 * r_se);
  }
  return {ok, detail};
}

// --- 3 -------------------------------------------------------------------

Outcome correlator_bias() {
  const double p = 0.02;
  const auto model = ReadoutNoiseModel::symmetric(2, p);
  const SimulatedReadout device(model);
  const ProductSampler prep({Qubit2(1, 0), Qubit2(1, 0)});
  const RandomStream root(303);
  const auto cal = run_calibration(2, 30000, device, root.split(1));
  const auto shots = run_shadow_acquisition(prep, 200000, device, root.split(2));

  const double f = oracle::local_coefficient(model, 0);
  const double derived = oracle::bias_pauli_2q(f, f, 1.0);

  const RecordEstimator zz = [](std::span<const ShadowShot> s, const LocalCoefficients& c) {
    return estimate_pauli_correlator(s, c, 0, 'Z', 1, 'Z').value;
  };
  const auto nr = estimate_pauli_correlator(shots, LocalCoefficients::noiseless(2), 0, 'Z', 1, 'Z');
  CalibrationOptions copts;
  copts.bootstrap_resamples = 0;
  BootstrapOptions opts;
  opts.resamples = 100;
  opts.calibration = cal;
  const auto r = bootstrap_ci(zz, shots, estimate_f(cal, copts).coefficients(), root.split(3), opts);

  const double nr_dev = 1.0 - nr.value;
  const bool derived_ok = std::abs(derived - 0.0784) < 1e-12;
  const bool nr_ok = std::abs(nr_dev - 0.0784) <= 0.005;
  const bool r_ok = std::abs(r.estimate - 1.0) < 3.0 * r.spread;
  return {derived_ok && nr_ok && r_ok,
          fmt("derived %.6f, NR deviation %.5f (se %.5f), robust %.5f (3se %.5f)", derived, nr_dev, nr.std_error,
              r.estimate, 3.0 * r.spread)};
}

// --- 4 -------------------------------------------------------------------

double pair_expectation(const std::vector<testing::WeightedShot>& a, const std::vector<testing::WeightedShot>& b,
                        const LocalCoefficients& f, std::span<const int> subset, bool same_basis) {
  double sum = 0.0, weight = 0.0;
  for (const auto& s : a) {
    for (const auto& t : b) {
      if (same_basis && !(s.shot.basis == t.shot.basis)) continue;
      const double w = s.probability * t.probability;
      sum += w * (same_basis ? samebasis_pair_value(s.shot, t.shot, f, subset)
                             : naive_pair_value(s.shot, t.shot, f, subset));
      weight += w;
    }
  }
  return sum / weight;
}

Outcome purity_enumeration() {
  RandomStream rng(404);
  double worst = 0.0;
  int cases = 0;
  const std::vector<std::vector<int>> subsets = {{0}, {5}, {11}, {0, 1}, {3, 8}, {10, 11}};
  for (const auto& info : all_presets()) {
    const auto device = make_preset(info.preset);
    for (const auto& subset : subsets) {
      const auto marginal = device.restrict(subset);
      const auto t = transition_matrix(marginal);
      const LocalCoefficients f(oracle::local_coefficients(marginal));
      const int n = static_cast<int>(subset.size());
      const auto rho = testing::random_density(n, rng);
      const auto sigma = testing::random_density(n, rng);
      const auto a = testing::enumerate_shots(rho, t);
      const auto b = testing::enumerate_shots(sigma, t);
      const auto local = iota_vec(n);
      const double truth = testing::trace_product(rho, sigma);
      worst = std::max(worst, std::abs(pair_expectation(a, b, f, local, false) - truth));
      worst = std::max(worst, std::abs(pair_expectation(a, b, f, local, true) - truth));
      ++cases;
    }
  }
  return {worst < 1e-10, fmt("%d preset/subset cases, max |E - Tr(rho sigma)| = %.2e", cases, worst)};
}

// --- 5 -------------------------------------------------------------------

ReadoutNoiseModel skewed(int n, bool pairs) {
  ReadoutNoiseModel m;
  for (int q = 0; q < n; ++q) m.per_qubit.push_back({0.01 + 0.03 * q, 0.05 + 0.02 * q});
  if (pairs && n >= 2) m.pairwise = {{0, n - 1, 0.04}};
  return m;
}

Eigen::MatrixXcd x_string(unsigned mask, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Matrix2 g = ((mask >> (n - 1 - q)) & 1u) ? gates::pauli_x() : gates::identity();
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * g;
    out = next;
  }
  return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Outcome channel_oracle() {
  double recon = 0.0, rate = 0.0, clifford = 0.0, stochastic = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto correlated = skewed(n, true);
    const auto t = transition_matrix(correlated);

    const auto channel = oracle::build_noisy_channel(t);
    const auto f = oracle::expansion_coefficients(channel);
    recon = std::max(recon, max_abs(channel.ptm() - oracle::irrep_reconstruction(n, f).ptm()));

    const auto separable = skewed(n, false);
    for (int q = 0; q < n; ++q) {
      const auto& r = separable.per_qubit[static_cast<std::size_t>(q)];
      rate = std::max(rate, std::abs(oracle::local_coefficient(separable, q) - (1.0 - r.p01 - r.p10) / 3.0));
    }

    const auto full = oracle::expansion_coefficients(oracle::build_noisy_channel(t, oracle::TwirlEnsemble::full_clifford));
    for (std::size_t k = 0; k < f.size(); ++k) clifford = std::max(clifford, std::abs(f[k] - full[k]));

    // X-twirling the readout channel leaves exactly a stochastic X channel.
    const auto raw = oracle::readout_channel_ptm(t);
    const unsigned dim = 1u << n;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(raw.ptm().rows(), raw.ptm().cols());
    for (unsigned a = 0; a < dim; ++a) {
      const auto w = oracle::pauli_transfer_matrix(x_string(a, n));
      acc += (w * raw * w).ptm();
    }
    acc /= static_cast<double>(dim);
    const auto weights = oracle::x_symmetrized_weights(t);
    stochastic = std::max(stochastic, max_abs(acc - oracle::stochastic_x_channel_ptm(weights).ptm()));
  }
  const bool ok = recon < 1e-12 && rate < 1e-12 && clifford < 1e-12 && stochastic < 1e-12;
  return {ok, fmt("reconstruction %.1e, rate formula %.1e, Clifford vs small twirl %.1e, stochastic X %.1e", recon,
                  rate, clifford, stochastic)};
}

// --- 6 -------------------------------------------------------------------

CalibrationEstimate calibrate_all_pairs(const ReadoutNoiseModel& model, std::int64_t shots, std::uint64_t seed) {
  const SimulatedReadout device(model);
  const auto records = run_calibration(model.width(), shots, device, RandomStream(seed));
  CalibrationOptions opts;
  opts.pairs = all_pairs(model.width());
  opts.adjacent_pairs = false;
  opts.bootstrap_resamples = 200;
  opts.bootstrap_seed = seed ^ 0x5eed;
  return estimate_f(records, opts);
}

Outcome crosstalk() {
  const auto& info = preset_info(PulsePreset::pulse_150us);
  const auto base = make_preset(info.preset);

  const auto clean = calibrate_all_pairs(base, info.calibration_shots, 601);
  int quiet = 0, pairs = 0;
  double worst = 0.0;
  for (const auto& [i, j] : all_pairs(kPresetQubits)) {
    const double z = std::abs(crosstalk_statistic(clean, i, j)) / crosstalk_sigma(clean, i, j);
    worst = std::max(worst, z);
    quiet += z < 4.0;
    ++pairs;
  }

  auto injected = base;
  injected.pairwise = {{3, 7, 0.05}};
  const auto dirty = calibrate_all_pairs(injected, info.calibration_shots, 602);
  const double stat = crosstalk_statistic(dirty, 3, 7);
  const double sigma = crosstalk_sigma(dirty, 3, 7);
  const double exact = oracle::non_separability(injected, 3, 7);

  // A correlated flip pushes f_ij above f_i f_j, so the statistic is negative;
  // detection is on its magnitude.
  const bool ok = quiet == pairs && std::abs(stat) > 4.0 * sigma && std::abs(stat - exact) < 3.0 * sigma;
  return {ok, fmt("separable: %d/%d pairs |z| < 4 (max %.2f); injected (3,7): stat %.5f, sigma %.5f, |z| %.1f, "
                  "oracle %.5f",
                  quiet, pairs, worst, stat, sigma, std::abs(stat) / sigma, exact)};
}

// --- 7 -------------------------------------------------------------------

Outcome bias_variance() {
  const auto model = ReadoutNoiseModel::symmetric(2, 0.05);
  const SimulatedReadout device(model);
  CalibrationOptions copts;
  copts.bootstrap_resamples = 0;
  std::vector<double> nr, r;
  for (int rep = 0; rep < 100; ++rep) {
    const auto h = haar_product_state(2, 700 + static_cast<std::uint64_t>(rep));
    const ProductSampler prep(h.qubits);
    const RandomStream root = RandomStream(707).split(static_cast<std::uint64_t>(rep));
    const auto cal = run_calibration(2, 10000, device, root.split(1));
    const auto shots = run_shadow_acquisition(prep, 10000, device, root.split(2));
    nr.push_back(estimate_fidelity_1q(shots, LocalCoefficients::noiseless(2), h.qubits[0], 0).value);
    r.push_back(estimate_fidelity_1q(shots, estimate_f(cal, copts).coefficients(), h.qubits[0], 0).value);
  }
  const double bias_nr = mean(nr) - 1.0, bias_r = mean(r) - 1.0;
  const double var_nr = variance(nr), var_r = variance(r);
  return {var_r > var_nr && std::abs(bias_r) < std::abs(bias_nr),
          fmt("var R %.3e > NR %.3e; |bias| R %.5f < NR %.5f", var_r, var_nr, std::abs(bias_r), std::abs(bias_nr))};
}

// --- 8 -------------------------------------------------------------------

Outcome qaoa_pipeline() {
  bool ok = true;
  std::string detail;
  for (const auto estimator : {PurityEstimator::same_basis, PurityEstimator::naive}) {
    ExperimentConfig c;
    c.seed = 808;
    c.state.kind = StateKind::qaoa;
    c.state.graph_file = resolve_data_file("austria_capitals.json");
    c.state.n_qubits = 9;
    c.noise.preset = PulsePreset::pulse_150us;
    c.plan.shots = 100000;
    c.estimands.all_pair_purities = true;
    c.estimands.purity_estimator = estimator;
    c.estimation.bootstrap_resamples = 50;
    const auto p = simulate(c);
    const auto report = estimate_run(c, p.prepared, p.model, p.run);

    int covered = 0, improved = 0;
    double worst = 0.0;
    for (const auto& row : report.rows) {
      const double z = std::abs(row.robust - row.exact) / sd_of(row.robust_ci);
      worst = std::max(worst, z);
      covered += z <= 3.0;
      improved += std::abs(row.non_robust - row.exact) > std::abs(row.robust - row.exact);
    }
    const int n = static_cast<int>(report.rows.size());
    ok = ok && covered == n && improved >= 0.8 * n;
    detail += fmt("%s: %d/%d within 3 sigma (max %.2f), NR worse on %d/%d; ",
                  estimator == PurityEstimator::naive ? "naive" : "same-basis", covered, n, worst, improved, n);
  }
  return {ok, detail};
}

// --- 9 -------------------------------------------------------------------

Outcome pce_pipeline() {
  const auto graph_file = resolve_data_file("eu_capitals.json");
  const auto problem = PceProblem::from_graph(WeightedGraph::load(graph_file), 5);
  const auto training = train_pce(problem, 1);
  double best = training.objective.front();
  bool monotone = true;
  for (double v : training.objective) {
    const double next = std::max(best, v);
    monotone = monotone && next >= best;
    best = next;
  }
  const bool improved = best > training.objective.front();

  ExperimentConfig c;
  c.seed = 909;
  c.state.kind = StateKind::pce;
  c.state.n_qubits = 5;
  c.state.graph_file = graph_file;
  c.state.train_seed = 1;
  c.state.train_steps = 500;
  c.noise.preset = PulsePreset::pulse_150us;
  c.plan.shots = 160000;
  c.estimands.pce_correlators = true;
  const auto p = simulate(c);
  const auto report = estimate_run(c, p.prepared, p.model, p.run);

  std::map<std::string, double> exact, robust;
  for (const auto& row : report.rows) {
    if (row.estimand.kind != EstimandKind::correlator) continue;
    exact[row.estimand.label] = row.exact;
    robust[row.estimand.label] = row.robust;
  }
  const auto from_exact = pce_decode(*p.prepared.pce, exact);
  const auto from_shadows = pce_decode(*p.prepared.pce, robust);
  int checked = 0, agree = 0;
  for (const auto& [label, value] : exact) {
    if (std::abs(value) <= 0.1) continue;
    ++checked;
    agree += from_exact.at(label) == from_shadows.at(label);
  }
  return {monotone && improved && checked > 0 && agree == checked,
          fmt("objective %.4f -> best %.4f; signs agree on %d/%d correlators with |<P>| > 0.1",
              training.objective.front(), best, agree, checked)};
}

// --- 10 ------------------------------------------------------------------

Outcome drift_batching() {
  std::vector<double> margins;
  CalibrationOptions copts;
  copts.adjacent_pairs = false;
  copts.bootstrap_resamples = 0;
  for (int rep = 0; rep < 20; ++rep) {
    auto c = haar_config(1000 + static_cast<std::uint64_t>(rep), PulsePreset::pulse_150us, 100000);
    c.noise.drift = {{1.0, 2.0}};
    c.estimation.calibration = CalibrationUse::batched;
    c.estimation.bootstrap_resamples = 2;
    c.estimation.refit_calibration = false;
    c.estimation.calibration_bootstrap = 0;
    const auto p = simulate(c);
    const auto report = estimate_run(c, p.prepared, p.model, p.run);

    // Same calibration budget spent once, before the device has drifted.
    const SimulatedReadout start(p.model.at(0));
    const auto upfront = run_calibration(kPresetQubits, static_cast<std::int64_t>(p.run.calibration.size()), start,
                                         RandomStream(c.seed).split(7));
    const auto f_up = estimate_f(upfront, copts).coefficients();

    double err_batched = 0.0, err_upfront = 0.0;
    for (const auto& row : report.rows) {
      const int q = row.estimand.qubits.front();
      err_batched += std::abs(row.robust - row.exact);
      const double up = estimate_fidelity_1q(p.run.shadows, f_up, p.prepared.targets[static_cast<std::size_t>(q)], q).value;
      err_upfront += std::abs(up - row.exact);
    }
    margins.push_back((err_upfront - err_batched) / static_cast<double>(report.rows.size()));
  }
  const double m = mean(margins);
  const double t = m / std::sqrt(variance(margins) / static_cast<double>(margins.size()));
  const auto positive = std::count_if(margins.begin(), margins.end(), [](double x) { return x > 0; });
  return {m > 0.0, fmt("mean error margin %.5f (t = %.1f), batched better in %d/20 repetitions", m, t,
                       static_cast<int>(positive))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "calibration-correctness", 10.0, calibration_correctness},
      {2, "fidelity-bias", 120.0, fidelity_bias},
      {3, "correlator-bias", 0.0, correlator_bias},
      {4, "purity-enumeration", 5.0, purity_enumeration},
      {5, "channel-oracle", 0.0, channel_oracle},
      {6, "crosstalk", 0.0, crosstalk},
      {7, "bias-variance", 0.0, bias_variance},
      {8, "qaoa-pipeline", 0.0, qaoa_pipeline},
      {9, "pce-pipeline", 0.0, pce_pipeline},
      {10, "drift-batching", 0.0, drift_batching},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += fmt(" [over %.0f s limit]", c.time_limit);
    }
    std::printf("%s %d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
