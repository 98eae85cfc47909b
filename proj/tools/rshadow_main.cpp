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
// rshadow: simulate readout-noisy classical-shadow experiments and estimate
// with and without the calibrated (robust) snapshot inverse.
//
// Exit codes: 0 ok, 2 bad config or inputs, 3 runtime failure,
// 4 calibration not invertible.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rshadow/calibration.hpp"
#include "rshadow/experiment.hpp"
#include "rshadow/noise.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kConfig = 2, kRuntime = 3, kNotInvertible = 4 };

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> preset;
  bool non_robust = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "override the master seed");
  cmd->add_option("--out", c.out, "override the output directory");
  cmd->add_option("--preset", c.preset, "override the noise with a named preset");
  cmd->add_flag("--non-robust", c.non_robust, "use the noiseless inverse for the robust column too");
}

rshadow::ExperimentConfig load(const Common& c) {
  auto cfg = rshadow::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.out) cfg.output = *c.out;
  if (c.preset) {
    try {
      cfg.noise = {};
      cfg.noise.preset = rshadow::parse_preset(*c.preset);
    } catch (const std::invalid_argument& e) {
      throw rshadow::ConfigError("--preset", e.what());
    }
  }
  cfg.non_robust = c.non_robust;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Readout-robust classical shadows"};
  app.set_version_flag("--version", std::string(rshadow::version()));
  app.require_subcommand(1);

  Common calib_opts, acquire_opts, estimate_opts, all_opts;
  auto* calibrate = app.add_subcommand("calibrate", "run calibration phases only and fit the noise coefficients");
  add_common(calibrate, calib_opts);
  auto* acquire = app.add_subcommand("acquire", "simulate calibration and shadow records");
  add_common(acquire, acquire_opts);
  auto* estimate = app.add_subcommand("estimate", "estimate from records in the output directory");
  add_common(estimate, estimate_opts);
  auto* run_all = app.add_subcommand("run-all", "acquire, estimate and write figure inputs");
  add_common(run_all, all_opts);

  std::vector<std::string> runs;
  std::string figures_out = "figures";
  auto* figures = app.add_subcommand("report-figures", "collect run outputs into panel CSVs");
  figures->add_option("--runs", runs, "run output directories")->required();
  figures->add_option("--out", figures_out, "destination directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*calibrate) {
      rshadow::cmd_calibrate(load(calib_opts));
    } else if (*acquire) {
      rshadow::cmd_acquire(load(acquire_opts));
    } else if (*estimate) {
      rshadow::cmd_estimate(load(estimate_opts));
    } else if (*run_all) {
      rshadow::cmd_run_all(load(all_opts));
    } else if (*figures) {
      std::vector<fs::path> dirs(runs.begin(), runs.end());
      rshadow::report_figures(dirs, figures_out);
    }
  } catch (const rshadow::ConfigError& e) {
    std::fprintf(stderr, "rshadow: config error: %s\n", e.what());
    return kConfig;
  } catch (const rshadow::NonInvertibleCalibration& e) {
    std::fprintf(stderr, "rshadow: %s\n", e.what());
    return kNotInvertible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rshadow: error: %s\n", e.what());
    return kRuntime;
  }
  return kOk;
}
