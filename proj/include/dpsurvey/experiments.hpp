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

#ifndef DPSURVEY_EXPERIMENTS_HPP_
#define DPSURVEY_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dpsurvey/population.hpp"

namespace dpsurvey {

// Long-format result table; one row per grid cell or draw. The CLI layer
// owns serialization (CSV and JSON schemas live there).
using Cell = std::variant<double, std::int64_t, std::string>;
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// One configuration drives every experiment runner. Each runner is a pure
// function of (config, master_seed): replicate streams are derived by index,
// so results are independent of any execution order.
struct ExperimentConfig {
  PopulationSpec population;

  std::vector<double> rho1_grid;
  std::vector<double> rho2_grid;
  std::vector<double> rho3_grid;
  double alpha = 0.05;
  std::vector<double> alpha_v_grid;

  int replicates = 1000;
  std::uint64_t master_seed = 0;
  int lambda_steps = 101;

  // Closed-form feasibility sweep (no data involved): sample sizes, weight
  // ratios w_hi/(N/n), and the response range of a hypothetical variable.
  std::vector<std::int64_t> feasibility_n_grid;
  std::vector<double> feasibility_ratio_grid;
  double feasibility_response_range = 1.0;

  void validate() const;
};

// DP mean-squared error against the shrinkage parameter for one reference
// sample per variable, per rho2. Emits loss and noise-to-signal (loss over
// the weighted mean; flagged absolute when the signal is zero) on a uniform
// lambda grid plus one flagged row at the optimum per (variable, rho2).
// Columns: variable, rho2, lambda, loss, noise_to_signal, signal_is_zero,
// lambda_star.
Table run_mse_curves(const ExperimentConfig& config);

// Smallest correctable weighting discrepancy across (n, weight ratio, rho).
// Pure closed form at the configured population size.
// Columns: n, weight_ratio, rho, min_awd.
Table run_feasibility_grid(const ExperimentConfig& config);

// Sampling distribution of the selected shrinkage parameter and the implied
// discrepancy proxy on a fixed reference sample.
struct LambdaDistributionResult {
  Table draws;    // rho1, rho2, draw, lambda_hat, implied_awd
  Table summary;  // per (rho1, rho2): moments, quantiles, ground truth
};
LambdaDistributionResult run_lambda_distribution(const ExperimentConfig& config);

// End-to-end interval experiment over replicated Poisson samples from one
// fixed synthetic population. Coverage follows the simulated-truth protocol
// (a truth drawn from the non-DP normal approximation per replicate), with
// coverage of the fixed population mean reported as a stricter secondary
// column. Replicate draws are shared across budget cells and alpha_v values
// (common random numbers), so monotone comparisons across cells are exact.
// Columns: rho1, rho2, rho3, alpha_v, alpha, replicates, coverage,
// coverage_population, coverage_classical, mean_width_ratio, mean_width,
// empty_resamples.
Table run_coverage_experiment(const ExperimentConfig& config);

// Desk-scale default: a psid-like population of 1e5 records with an expected
// sample of 1e3 and weights in [1, 6000].
PopulationSpec desk_scale_population();

}  // namespace dpsurvey

#endif  // DPSURVEY_EXPERIMENTS_HPP_
