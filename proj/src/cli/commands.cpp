//
// Copyright 2026 The dpsurvey Authors
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
//

#include "dpsurvey/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dpsurvey/cli/csv_ingest.hpp"
#include "dpsurvey/cli/output.hpp"
#include "dpsurvey/estimators.hpp"
#include "dpsurvey/experiments.hpp"
#include "dpsurvey/regularization.hpp"
#include "dpsurvey/releases.hpp"

namespace dpsurvey::cli {
namespace {

void require_in_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw ValidationError(std::string(name) + " must lie in (0, 1)");
  }
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw ValidationError(std::string(name) + " must be positive");
  }
}

SurveySample load_sample(RunConfig& config) {
  try {
    config.bounds().validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  std::int64_t clipped = 0;
  SurveySample sample = ingest_csv_file(config.input, config.bounds(),
                                        config.pop_size, config.clip, &clipped);
  if (config.clip) {
    config.clipped_rows = clipped;
  }
  return sample;
}

std::optional<DebugInfo> debug_info(const RunConfig& config,
                                    const SurveySample& sample) {
  if (!config.unsafe_debug) {
    return std::nullopt;
  }
  const SampleSummary summary = summarize(sample);
  DebugInfo debug;
  debug.theta_w = summary.weighted;
  debug.theta_0 = summary.unweighted;
  debug.awd = summary.awd;
  debug.lambda_star =
      optimal_lambda(summarize(sample.canonicalized()),
                     sample.bounds.canonicalized(), sample.population_size,
                     sample.size(), config.rho2)
          .lambda_star;
  return debug;
}

ExperimentConfig experiment_config(const RunConfig& config) {
  ExperimentConfig experiment;
  experiment.population = desk_scale_population();
  experiment.population.pop_size = config.pop_size;
  experiment.population.weights.expected_sample_size = config.expected_n;
  experiment.population.weights.weight_ceiling = config.uw;
  experiment.population.target_corr = config.target_corr;
  experiment.rho1_grid = config.rho1_grid;
  experiment.rho2_grid = config.rho2_grid;
  experiment.rho3_grid = config.rho3_grid;
  experiment.alpha = config.alpha;
  experiment.alpha_v_grid = config.alpha_v_grid;
  experiment.replicates = config.replicates;
  experiment.master_seed = config.seed;
  experiment.lambda_steps = config.lambda_steps;
  experiment.feasibility_n_grid = config.n_grid;
  experiment.feasibility_ratio_grid = config.ratio_grid;
  experiment.feasibility_response_range = config.uy;
  return experiment;
}

void write_table(const RunConfig& config, const Table& table, std::ostream& out) {
  if (config.format == "json") {
    write_table_json(out, config, table);
  } else {
    write_table_csv(out, config, table);
  }
}

}  // namespace

void cmd_estimate(const RunConfig& base_config, std::ostream& out) {
  RunConfig config = base_config;
  require_positive(config.rho1, "--rho1");
  require_positive(config.rho2, "--rho2");
  const DiscrepancySignPolicy policy = config.sign_policy();
  const SurveySample sample = load_sample(config);
  const RandomSource rng(config.seed);
  const DpMeanRelease release =
      dp_estimate_with_policy(sample, config.rho1, config.rho2, policy, rng);
  const std::optional<DebugInfo> debug = debug_info(config, sample);
  if (config.format == "csv") {
    out << release_csv(config, release, std::nullopt, debug);
  } else {
    out << release_json(config, release, std::nullopt, debug);
  }
}

void cmd_interval(const RunConfig& base_config, std::ostream& out) {
  RunConfig config = base_config;
  require_positive(config.rho1, "--rho1");
  require_positive(config.rho2, "--rho2");
  require_positive(config.rho3, "--rho3");
  require_in_unit_interval(config.alpha, "--alpha");
  require_in_unit_interval(config.alpha_v, "--alpha-v");
  const DiscrepancySignPolicy policy = config.sign_policy();
  const SurveySample sample = load_sample(config);
  const RandomSource rng(config.seed);
  const PrivacyBudget budget{config.rho1, config.rho2, config.rho3};
  DpIntervalRelease interval =
      dp_confidence_interval(sample, budget, config.alpha, config.alpha_v, rng);
  // The embedded point release reuses the same source, so rerunning the
  // estimate stage would duplicate draws; derive the plug-in adjustment from
  // the interval's own release instead.
  DpMeanRelease release = interval.release;
  DiscrepancySignPolicy resolved = policy;
  if (policy.mode == DiscrepancySignPolicy::Mode::kDpEstimated) {
    const SurveySample canonical = sample.canonicalized();
    RandomSource sign_rng = rng.child(stage::kSign);
    resolved.resolved_sign =
        dp_sign_estimate(summarize(canonical), canonical.bounds,
                         canonical.population_size, canonical.size(),
                         policy.rho_s, sign_rng);
    interval.rho_spent += policy.rho_s;
  }
  const PluginAdjustment adjustment =
      plugin_bias_adjust(release, sample.bounds, sample.population_size,
                         sample.size(), config.rho2, resolved);
  if (adjustment.applied) {
    release.plugin_adjusted = adjustment.value;
  }
  const std::optional<DebugInfo> debug = debug_info(config, sample);
  if (config.format == "csv") {
    out << release_csv(config, release, interval, debug);
  } else {
    out << release_json(config, release, interval, debug);
  }
}

void cmd_feasibility(const RunConfig& config, std::ostream& out) {
  ExperimentConfig experiment = experiment_config(config);
  // Pure closed form; no population is generated, only its size is used.
  experiment.population.weights.expected_sample_size =
      std::min<double>(1000.0, static_cast<double>(config.pop_size));
  write_table(config, run_feasibility_grid(experiment), out);
}

void cmd_mse_curve(const RunConfig& config, std::ostream& out) {
  write_table(config, run_mse_curves(experiment_config(config)), out);
}

void cmd_simulate(const RunConfig& config, std::ostream& out) {
  const ExperimentConfig experiment = experiment_config(config);
  if (config.experiment == "coverage") {
    write_table(config, run_coverage_experiment(experiment), out);
  } else if (config.experiment == "lambda") {
    write_table(config, run_lambda_distribution(experiment).draws, out);
  } else if (config.experiment == "lambda-summary") {
    write_table(config, run_lambda_distribution(experiment).summary, out);
  } else {
    throw ValidationError("--experiment must be coverage, lambda, or lambda-summary");
  }
}

namespace {

void add_common_flags(CLI::App& sub, RunConfig& config, std::string& config_path) {
  sub.add_option("--seed", config.seed, "Master seed; DPSURVEY_SEED is the fallback");
  sub.add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub.add_flag("--unsafe-debug", config.unsafe_debug,
               "Attach confidential intermediates and stamp dp=false");
  sub.add_option("--config", config_path,
                 "Flat key=value file matching flag names; flags win");
}

// Required-ness is enforced after the config-file merge, so a flat config
// file can satisfy any of these (flags still win on conflict).
void add_release_flags(CLI::App& sub, RunConfig& config, bool interval) {
  sub.add_option("--input", config.input, "CSV file with header y,w (required)");
  sub.add_option("--pop-size", config.pop_size, "Population size N (required)");
  sub.add_option("--ly", config.ly, "Response lower bound");
  sub.add_option("--uy", config.uy, "Response upper bound (required)");
  sub.add_option("--lw", config.lw, "Weight lower bound");
  sub.add_option("--uw", config.uw, "Weight upper bound (required)");
  sub.add_option("--rho1", config.rho1,
                 "zCDP budget for shrinkage selection (required)");
  sub.add_option("--rho2", config.rho2, "zCDP budget for the mean release (required)");
  if (interval) {
    sub.add_option("--rho3", config.rho3,
                   "zCDP budget for the variance release (required)");
    sub.add_option("--alpha", config.alpha, "Interval level");
    sub.add_option("--alpha-v", config.alpha_v,
                   "Level of the DP upper bound on the variance");
  }
  sub.add_option("--sign", config.sign,
                 "Discrepancy sign: pos, neg, unknown, or dp:<rho>");
  sub.add_flag("--clip", config.clip, "Clamp out-of-bounds rows instead of rejecting");
}

// Applies `key=value` lines to any option of the active subcommand that was
// not set on the command line.
void merge_config_file(CLI::App& sub, const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw ValidationError("cannot open config file '" + path + "'");
  }
  std::string line;
  int line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    const std::size_t equals = line.find('=');
    if (equals == std::string::npos) {
      throw ValidationError("config file line " + std::to_string(line_number) +
                            " is not key=value");
    }
    const std::string key = line.substr(0, equals);
    const std::string value = line.substr(equals + 1);
    if (key == "config") {
      throw ValidationError("config files cannot nest");
    }
    CLI::Option* option = sub.get_option_no_throw("--" + key);
    if (option == nullptr) {
      throw ValidationError("unknown config key '" + key + "'");
    }
    if (option->count() > 0) continue;  // flags win
    try {
      option->add_result(value);
      option->run_callback();
    } catch (const CLI::Error& e) {
      throw ValidationError("config key '" + key + "': " + e.what());
    }
  }
}

void require_set(const CLI::App& sub, const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    if (sub.get_option("--" + name)->count() == 0) {
      throw ValidationError("--" + name + " is required");
    }
  }
}

void add_population_flags(CLI::App& sub, RunConfig& config) {
  sub.add_option("--pop-size", config.pop_size, "Synthetic population size");
  sub.add_option("--expected-n", config.expected_n, "Expected Poisson sample size");
  sub.add_option("--uw", config.uw, "Weight upper bound");
  sub.add_option("--target-corr", config.target_corr,
                 "Weight-response rank correlation of the generator");
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  RunConfig config;
  std::string config_path;
  CLI::App app{"Differentially private estimates for survey-weighted means"};
  app.require_subcommand(1);

  CLI::App* estimate = app.add_subcommand(
      "estimate", "DP point estimate of the population mean (JSON release)");
  add_release_flags(*estimate, config, false);
  add_common_flags(*estimate, config, config_path);

  CLI::App* interval = app.add_subcommand(
      "interval", "DP confidence interval for the population mean (JSON release)");
  add_release_flags(*interval, config, true);
  add_common_flags(*interval, config, config_path);

  CLI::App* feasibility = app.add_subcommand(
      "feasibility",
      "Smallest correctable weighting discrepancy per (n, weight ratio, rho); "
      "CSV columns: n, weight_ratio, rho, min_awd");
  feasibility->add_option("--pop-size", config.pop_size, "Population size N");
  feasibility->add_option("--uy", config.uy, "Response upper bound");
  feasibility
      ->add_option("--n-grid", config.n_grid, "Sample sizes (comma separated)")
      ->delimiter(',');
  feasibility
      ->add_option("--ratio-grid", config.ratio_grid,
                   "Weight ratios w_hi/(N/n) (comma separated)")
      ->delimiter(',');
  feasibility
      ->add_option("--rho-grid", config.rho2_grid, "Privacy budgets (comma separated)")
      ->delimiter(',');
  add_common_flags(*feasibility, config, config_path);

  CLI::App* mse = app.add_subcommand(
      "mse-curve",
      "DP mean-squared error against the shrinkage parameter on a synthetic "
      "reference sample; CSV columns: variable, rho2, lambda, loss, "
      "noise_to_signal, signal_is_zero, lambda_star");
  add_population_flags(*mse, config);
  mse->add_option("--rho2-grid", config.rho2_grid, "Mean-release budgets")
      ->delimiter(',');
  mse->add_option("--lambda-steps", config.lambda_steps, "Grid points on [0, 1]");
  add_common_flags(*mse, config, config_path);

  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "Replicated end-to-end experiments on a synthetic population. "
      "coverage columns: rho1, rho2, rho3, alpha_v, alpha, replicates, "
      "coverage, coverage_population, mean_width_ratio, mean_width, "
      "empty_resamples; lambda columns: rho1, rho2, draw, lambda_hat, "
      "implied_awd");
  add_population_flags(*simulate, config);
  simulate->add_option("--experiment", config.experiment,
                       "coverage, lambda, or lambda-summary");
  simulate->add_option("--replicates", config.replicates, "Replicates per cell");
  simulate->add_option("--rho1-grid", config.rho1_grid, "Selection budgets")
      ->delimiter(',');
  simulate->add_option("--rho2-grid", config.rho2_grid, "Mean budgets")
      ->delimiter(',');
  simulate->add_option("--rho3-grid", config.rho3_grid, "Variance budgets")
      ->delimiter(',');
  simulate->add_option("--alpha", config.alpha, "Interval level");
  simulate->add_option("--alpha-v-grid", config.alpha_v_grid, "Variance bound levels")
      ->delimiter(',');
  add_common_flags(*simulate, config, config_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("validation", e.what());
    return 2;
  }

  CLI::App* active = estimate->parsed()    ? estimate
                     : interval->parsed()  ? interval
                     : feasibility->parsed() ? feasibility
                     : mse->parsed()       ? mse
                                           : simulate;
  try {
    if (!config_path.empty()) {
      merge_config_file(*active, config_path);
    }
    // Seed precedence: flag > config file > DPSURVEY_SEED > 0.
    if (active->get_option("--seed")->count() == 0) {
      if (const char* env_seed = std::getenv("DPSURVEY_SEED")) {
        try {
          config.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
          throw ValidationError("DPSURVEY_SEED is not an unsigned integer");
        }
      }
    }
    if (estimate->parsed()) {
      require_set(*active, {"input", "pop-size", "uy", "uw", "rho1", "rho2"});
    } else if (interval->parsed()) {
      require_set(*active,
                  {"input", "pop-size", "uy", "uw", "rho1", "rho2", "rho3"});
    }
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what(), e.row);
    return 2;
  }

  // Grid defaults mirror the desk-scale experiment regimes.
  if (config.rho1_grid.empty()) config.rho1_grid = {1e-3, 1e-2, 1e-1};
  if (config.rho2_grid.empty()) config.rho2_grid = {1e-3, 1e-2, 1e-1};
  if (config.rho3_grid.empty()) config.rho3_grid = {1e-3, 1e-2, 1e-1};
  if (config.alpha_v_grid.empty()) config.alpha_v_grid = {0.5, 0.05, 0.01};
  if (config.n_grid.empty()) config.n_grid = {100, 1000, 10000};
  if (config.ratio_grid.empty()) config.ratio_grid = {10.0, 100.0, 1000.0, 10000.0};
  if (config.expected_n == 0.0) config.expected_n = 1000.0;
  if (feasibility->parsed() && config.pop_size == 0) {
    config.pop_size = 100000000;
  }
  if (simulate->parsed() || mse->parsed()) {
    if (config.pop_size == 0) config.pop_size = 100000;
    if (config.uw == 1.0) config.uw = 6000.0;
  }

  try {
    if (estimate->parsed()) {
      config.command = "estimate";
      cmd_estimate(config, out);
    } else if (interval->parsed()) {
      config.command = "interval";
      cmd_interval(config, out);
    } else if (feasibility->parsed()) {
      config.command = "feasibility";
      cmd_feasibility(config, out);
    } else if (mse->parsed()) {
      config.command = "mse-curve";
      cmd_mse_curve(config, out);
    } else {
      config.command = "simulate";
      cmd_simulate(config, out);
    }
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what(), e.row);
    return 2;
  } catch (const std::invalid_argument& e) {
    err << error_json("validation", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    err << error_json("domain", e.what());
    return 3;
  } catch (const std::exception& e) {
    err << error_json("runtime", e.what());
    return 3;
  }
  return 0;
}

}  // namespace dpsurvey::cli
