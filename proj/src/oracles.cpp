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

#include "dpsurvey/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dpsurvey/estimators.hpp"
#include "dpsurvey/random.hpp"
#include "dpsurvey/regularization.hpp"
#include "dpsurvey/sensitivity.hpp"

namespace dpsurvey {
namespace {

Eigen::VectorXd linspace(double lo, double hi, int steps) {
  Eigen::VectorXd grid(steps);
  for (int k = 0; k < steps; ++k) {
    grid[k] = lo + (hi - lo) * static_cast<double>(k) /
                       static_cast<double>(steps - 1);
  }
  grid[steps - 1] = hi;
  return grid;
}

double evaluate_statistic(SensitivityStatistic statistic,
                          const SurveySample& sample, double lambda) {
  switch (statistic) {
    case SensitivityStatistic::kWeightedMean:
      return weighted_mean(sample);
    case SensitivityStatistic::kRegularizedMean:
      return regularized_mean(sample, lambda);
    case SensitivityStatistic::kApproxVariance:
      return approx_ht_variance(sample);
    case SensitivityStatistic::kAbsDiscrepancy:
      return std::fabs(unweighted_mean(sample) - weighted_mean(sample));
  }
  throw std::invalid_argument("brute_force_sensitivity: unknown statistic");
}

}  // namespace

double brute_force_sensitivity(SensitivityStatistic statistic,
                               const Bounds& bounds,
                               std::int64_t population_size,
                               std::int64_t sample_size, int grid_steps,
                               double lambda) {
  if (sample_size < 1 || sample_size > 8 || grid_steps < 2 || grid_steps > 64) {
    throw std::invalid_argument(
        "brute_force_sensitivity: requires n <= 8 and 2 <= grid_steps <= 64");
  }
  const Eigen::VectorXd y_grid = linspace(bounds.y_lo, bounds.y_hi, grid_steps);
  const Eigen::VectorXd w_grid = linspace(bounds.w_lo, bounds.w_hi, grid_steps);

  // Base samples fix the n-1 untouched records: every constant corner/center
  // pattern plus seeded random fills. The replaced record then sweeps the
  // full grid; for a fixed base the worst adjacent pair is (argmax, argmin).
  struct Base {
    double y;
    double w;
  };
  std::vector<Base> bases;
  const double y_vals[3] = {bounds.y_lo, 0.5 * (bounds.y_lo + bounds.y_hi),
                            bounds.y_hi};
  const double w_vals[3] = {bounds.w_lo, 0.5 * (bounds.w_lo + bounds.w_hi),
                            bounds.w_hi};
  for (double by : y_vals) {
    for (double bw : w_vals) {
      bases.push_back({by, bw});
    }
  }

  SurveySample sample;
  sample.population_size = population_size;
  sample.bounds = bounds;
  sample.y.resize(sample_size);
  sample.w.resize(sample_size);

  RandomSource fill_rng(0x5ca1ab1eULL);
  double worst = 0.0;
  const int random_bases = 16;
  for (std::size_t base_index = 0;
       base_index < bases.size() + random_bases; ++base_index) {
    if (base_index < bases.size()) {
      sample.y.setConstant(bases[base_index].y);
      sample.w.setConstant(bases[base_index].w);
    } else {
      for (Eigen::Index i = 0; i < sample_size; ++i) {
        sample.y[i] = bounds.y_lo + bounds.response_range() * fill_rng.uniform();
        sample.w[i] = bounds.w_lo + (bounds.w_hi - bounds.w_lo) * fill_rng.uniform();
      }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < grid_steps; ++a) {
      for (int b = 0; b < grid_steps; ++b) {
        sample.y[0] = y_grid[a];
        sample.w[0] = w_grid[b];
        const double value = evaluate_statistic(statistic, sample, lambda);
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

double DensityTable::cdf_at(double x) const {
  if (x <= lambda[0]) return 0.0;
  const Eigen::Index last = lambda.size() - 1;
  if (x >= lambda[last]) return 1.0;
  const double step = lambda[1] - lambda[0];
  const Eigen::Index cell = std::min<Eigen::Index>(
      last - 1, static_cast<Eigen::Index>((x - lambda[0]) / step));
  const double frac = (x - lambda[cell]) / step;
  return cdf[cell] + frac * (cdf[cell + 1] - cdf[cell]);
}

DensityTable selection_density_table(const SampleSummary& summary,
                                     const Bounds& bounds,
                                     std::int64_t population_size,
                                     std::int64_t sample_size, double rho1,
                                     double rho2, int grid_points) {
  if (grid_points < 1000) {
    throw std::invalid_argument("selection_density_table: needs >= 1000 points");
  }
  const double loss_sensitivity =
      sensitivity_loss(bounds, population_size, sample_size);
  if (loss_sensitivity == 0.0) {
    throw std::domain_error("selection_density_table: degenerate at w_hi = N/n");
  }
  const double scale = std::sqrt(2.0 * rho1) / (2.0 * loss_sensitivity);

  DensityTable table;
  table.lambda = linspace(0.0, 1.0, grid_points);
  Eigen::VectorXd log_density(grid_points);
  for (int k = 0; k < grid_points; ++k) {
    log_density[k] = -scale * dp_mse_loss(summary, bounds, population_size,
                                          sample_size, table.lambda[k], rho2);
  }
  const double peak = log_density.maxCoeff();
  table.density.resize(grid_points);
  for (int k = 0; k < grid_points; ++k) {
    table.density[k] = std::exp(log_density[k] - peak);
  }
  const double step = 1.0 / static_cast<double>(grid_points - 1);
  double mass = 0.0;
  for (int k = 0; k + 1 < grid_points; ++k) {
    mass += 0.5 * step * (table.density[k] + table.density[k + 1]);
  }
  table.density /= mass;
  table.cdf.resize(grid_points);
  table.cdf[0] = 0.0;
  for (int k = 0; k + 1 < grid_points; ++k) {
    table.cdf[k + 1] =
        table.cdf[k] + 0.5 * step * (table.density[k] + table.density[k + 1]);
  }
  table.cdf[grid_points - 1] = 1.0;
  return table;
}

}  // namespace dpsurvey
