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

#include "dpsurvey/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpsurvey/estimators.hpp"
#include "dpsurvey/mechanisms.hpp"
#include "dpsurvey/normal.hpp"
#include "dpsurvey/regularization.hpp"
#include "dpsurvey/releases.hpp"

namespace dpsurvey {
namespace {

// Experiment-level stream keys; per-replicate children hang off these.
constexpr std::uint64_t kPopulationStream = 11;
constexpr std::uint64_t kReferenceStream = 12;
constexpr std::uint64_t kReplicateStream = 13;
constexpr std::uint64_t kTruthStream = 14;
constexpr std::uint64_t kSelectionStream = 15;

void require_positive(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string("ExperimentConfig: empty grid ") + name);
  }
  for (double value : grid) {
    if (!(value > 0.0)) {
      throw std::invalid_argument(std::string("ExperimentConfig: nonpositive ") + name);
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  population.validate();
  if (replicates < 1) {
    throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
  }
  if (lambda_steps < 2) {
    throw std::invalid_argument("ExperimentConfig: lambda_steps must be >= 2");
  }
  for (double a : alpha_v_grid) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("ExperimentConfig: alpha_v must lie in (0, 1)");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ExperimentConfig: alpha must lie in (0, 1)");
  }
}

PopulationSpec desk_scale_population() {
  PopulationSpec spec;
  spec.pop_size = 100000;
  spec.response.kind = ResponseModel::Kind::kPsidLike;
  spec.weights.expected_sample_size = 1000.0;
  // Spread chosen so the noninformative control variable's weighted noise
  // stays below the 0.02 gap budget at E[n] = 1e3.
  spec.weights.log_sigma = 0.6;
  spec.weights.weight_floor = 1.0;
  spec.weights.weight_ceiling = 6000.0;
  spec.target_corr = 0.14;
  return spec;
}

Table run_feasibility_grid(const ExperimentConfig& config) {
  if (config.feasibility_n_grid.empty() || config.feasibility_ratio_grid.empty()) {
    throw std::invalid_argument("run_feasibility_grid: empty grid");
  }
  require_positive(config.rho2_grid, "rho2");
  const std::int64_t population = config.population.pop_size;

  Table table;
  table.columns = {"n", "weight_ratio", "rho", "min_awd"};
  for (std::int64_t n : config.feasibility_n_grid) {
    if (n < 1 || n > population) {
      throw std::invalid_argument("run_feasibility_grid: n outside [1, N]");
    }
    const double uniform_weight =
        static_cast<double>(population) / static_cast<double>(n);
    for (double ratio : config.feasibility_ratio_grid) {
      if (!(ratio >= 1.0)) {
        throw std::invalid_argument("run_feasibility_grid: weight ratio below 1");
      }
      Bounds bounds{0.0, config.feasibility_response_range, 1.0,
                    ratio * uniform_weight};
      for (double rho : config.rho2_grid) {
        table.rows.push_back({static_cast<std::int64_t>(n), ratio, rho,
                              min_feasible_awd(bounds, population, n, rho)});
      }
    }
  }
  return table;
}

Table run_mse_curves(const ExperimentConfig& config) {
  config.validate();
  require_positive(config.rho2_grid, "rho2");
  const RandomSource root(config.master_seed);
  const Population population =
      generate_population(config.population, root.child(kPopulationStream));

  Table table;
  table.columns = {"variable",        "rho2",          "lambda", "loss",
                   "noise_to_signal", "signal_is_zero", "lambda_star"};
  for (std::size_t var = 0; var < population.variables.size(); ++var) {
    RandomSource sample_rng = root.child(kReferenceStream, var);
    const SurveySample sample = poisson_sample(population, var, sample_rng);
    const SampleSummary summary = summarize(sample);
    const std::int64_t n = sample.size();
    const std::string& name = population.variables[var].name;
    const double signal = summary.weighted;

    for (double rho2 : config.rho2_grid) {
      const auto emit = [&](double lambda, std::int64_t star_flag) {
        const double loss = dp_mse_loss(summary, sample.bounds,
                                        population.size, n, lambda, rho2);
        const bool zero_signal = signal == 0.0;
        table.rows.push_back({name, rho2, lambda, loss,
                              zero_signal ? loss : loss / signal,
                              static_cast<std::int64_t>(zero_signal), star_flag});
      };
      for (int k = 0; k < config.lambda_steps; ++k) {
        emit(static_cast<double>(k) / static_cast<double>(config.lambda_steps - 1),
             0);
      }
      emit(optimal_lambda(summary, sample.bounds, population.size, n, rho2)
               .lambda_star,
           1);
    }
  }
  return table;
}

LambdaDistributionResult run_lambda_distribution(const ExperimentConfig& config) {
  config.validate();
  require_positive(config.rho1_grid, "rho1");
  require_positive(config.rho2_grid, "rho2");
  const RandomSource root(config.master_seed);
  const Population population =
      generate_population(config.population, root.child(kPopulationStream));

  RandomSource sample_rng = root.child(kReferenceStream, 0);
  const SurveySample sample = poisson_sample(population, 0, sample_rng);
  const SampleSummary summary = summarize(sample);
  const std::int64_t n = sample.size();

  LambdaDistributionResult result;
  result.draws.columns = {"rho1", "rho2", "draw", "lambda_hat", "implied_awd"};
  result.summary.columns = {"rho1",        "rho2",        "mean_lambda",
                            "q05",         "q50",         "q95",
                            "mean_implied_awd", "lambda_star", "awd"};
  for (double rho1 : config.rho1_grid) {
    for (double rho2 : config.rho2_grid) {
      std::vector<double> draws(static_cast<std::size_t>(config.replicates));
      double lambda_sum = 0.0;
      double implied_sum = 0.0;
      for (int r = 0; r < config.replicates; ++r) {
        RandomSource rng = root.child(kSelectionStream, static_cast<std::uint64_t>(r));
        const double lambda_hat = select_lambda(summary, sample.bounds,
                                                population.size, n, rho1, rho2, rng);
        const double implied =
            lambda_hat > 0.0
                ? implied_awd(lambda_hat, sample.bounds, population.size, n, rho2)
                : std::numeric_limits<double>::infinity();
        draws[static_cast<std::size_t>(r)] = lambda_hat;
        lambda_sum += lambda_hat;
        implied_sum += implied;
        result.draws.rows.push_back({rho1, rho2, static_cast<std::int64_t>(r),
                                     lambda_hat, implied});
      }
      std::sort(draws.begin(), draws.end());
      const auto quantile = [&](double q) {
        const std::size_t index = static_cast<std::size_t>(
            q * static_cast<double>(draws.size() - 1) + 0.5);
        return draws[index];
      };
      const double reps = static_cast<double>(config.replicates);
      result.summary.rows.push_back(
          {rho1, rho2, lambda_sum / reps, quantile(0.05), quantile(0.5),
           quantile(0.95), implied_sum / reps,
           optimal_lambda(summary, sample.bounds, population.size, n, rho2)
               .lambda_star,
           summary.awd});
    }
  }
  return result;
}

Table run_coverage_experiment(const ExperimentConfig& config) {
  config.validate();
  require_positive(config.rho1_grid, "rho1");
  require_positive(config.rho2_grid, "rho2");
  require_positive(config.rho3_grid, "rho3");
  require_positive(config.alpha_v_grid, "alpha_v");

  const RandomSource root(config.master_seed);
  const Population population =
      generate_population(config.population, root.child(kPopulationStream));
  const double population_mean = population.population_mean(0);
  const double z_half = upper_quantile(config.alpha / 2.0);

  // Replicate samples, simulated truths, and the non-DP reference width are
  // drawn once and reused across every cell (common random numbers).
  struct Replicate {
    SurveySample sample;
    double truth = 0.0;
    double classical_half_width = 0.0;
    bool classical_covers = false;
  };
  std::vector<Replicate> replicates(static_cast<std::size_t>(config.replicates));
  std::int64_t empty_resamples = 0;
  std::int64_t classical_covered = 0;
  for (int r = 0; r < config.replicates; ++r) {
    Replicate& rep = replicates[static_cast<std::size_t>(r)];
    int resamples = 0;
    RandomSource sample_rng = root.child(kReplicateStream, static_cast<std::uint64_t>(r));
    rep.sample = poisson_sample(population, 0, sample_rng, &resamples);
    empty_resamples += resamples;
    const double estimate = weighted_mean(rep.sample);
    const double variance = std::max(approx_ht_variance(rep.sample), 0.0);
    RandomSource truth_rng = root.child(kTruthStream, static_cast<std::uint64_t>(r));
    rep.truth = estimate + std::sqrt(variance) * truth_rng.normal();
    rep.classical_half_width = z_half * std::sqrt(variance);
    rep.classical_covers =
        std::fabs(rep.truth - estimate) <= rep.classical_half_width;
    classical_covered += rep.classical_covers;
  }
  const double coverage_classical =
      static_cast<double>(classical_covered) / config.replicates;

  Table table;
  table.columns = {"rho1",     "rho2",
                   "rho3",     "alpha_v",
                   "alpha",    "replicates",
                   "coverage", "coverage_population",
                   "coverage_classical", "mean_width_ratio", "mean_width",
                   "empty_resamples"};
  for (double rho1 : config.rho1_grid) {
    for (double rho2 : config.rho2_grid) {
      for (double rho3 : config.rho3_grid) {
        for (double alpha_v : config.alpha_v_grid) {
          const PrivacyBudget budget{rho1, rho2, rho3};
          std::int64_t covered_truth = 0;
          std::int64_t covered_population = 0;
          double width_ratio_sum = 0.0;
          double width_sum = 0.0;
          for (int r = 0; r < config.replicates; ++r) {
            const Replicate& rep = replicates[static_cast<std::size_t>(r)];
            const RandomSource release_rng =
                root.child(kReplicateStream, static_cast<std::uint64_t>(r))
                    .child(kSelectionStream);
            const DpIntervalRelease interval = dp_confidence_interval(
                rep.sample, budget, config.alpha, alpha_v, release_rng);
            covered_truth += rep.truth >= interval.lower && rep.truth <= interval.upper;
            covered_population += population_mean >= interval.lower &&
                                  population_mean <= interval.upper;
            const double width = interval.upper - interval.lower;
            width_sum += width;
            width_ratio_sum += width / (2.0 * rep.classical_half_width);
          }
          const double reps = static_cast<double>(config.replicates);
          table.rows.push_back({rho1, rho2, rho3, alpha_v, config.alpha,
                                static_cast<std::int64_t>(config.replicates),
                                static_cast<double>(covered_truth) / reps,
                                static_cast<double>(covered_population) / reps,
                                coverage_classical, width_ratio_sum / reps,
                                width_sum / reps, empty_resamples});
        }
      }
    }
  }
  return table;
}

}  // namespace dpsurvey
