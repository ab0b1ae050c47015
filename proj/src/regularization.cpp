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

#include "dpsurvey/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpsurvey/sensitivity.hpp"

namespace dpsurvey {
namespace {

struct LossShape {
  // loss(lambda) = curvature/2 * lambda^2 + slope0 * lambda + const,
  // with curvature > 0 and slope0 <= 0 when w_hi >= N/n.
  double curvature = 0.0;  // (1/rho) (y_range/N)^2 (w_hi - N/n)^2 + 2 awd^2
  double numerator = 0.0;  // -slope0 = (w_hi/rho) (y_range/N)^2 (w_hi - N/n)
};

LossShape loss_shape(double awd, const Bounds& bounds,
                     std::int64_t population_size, std::int64_t sample_size,
                     double rho) {
  const double range_over_pop =
      bounds.response_range() / static_cast<double>(population_size);
  const double uniform_weight = static_cast<double>(population_size) /
                                static_cast<double>(sample_size);
  const double weight_gap = bounds.w_hi - uniform_weight;
  LossShape shape;
  shape.curvature =
      (range_over_pop * range_over_pop) * (weight_gap * weight_gap) / rho +
      2.0 * awd * awd;
  shape.numerator =
      bounds.w_hi * (range_over_pop * range_over_pop) * weight_gap / rho;
  return shape;
}

}  // namespace

double dp_mse_loss(const SampleSummary& summary, const Bounds& bounds,
                   std::int64_t population_size, std::int64_t sample_size,
                   double lambda, double rho) {
  if (!(rho > 0.0)) {
    throw std::domain_error("dp_mse_loss: rho must be positive");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("dp_mse_loss: lambda must lie in [0, 1]");
  }
  const double sensitivity =
      sensitivity_regularized_mean(bounds, population_size, sample_size, lambda);
  const double bias = lambda * summary.awd;
  return sensitivity * sensitivity / (2.0 * rho) + bias * bias;
}

RegularizationSolution optimal_lambda(const SampleSummary& summary,
                                      const Bounds& bounds,
                                      std::int64_t population_size,
                                      std::int64_t sample_size, double rho) {
  if (!(rho > 0.0)) {
    throw std::domain_error("optimal_lambda: rho must be positive");
  }
  const LossShape shape =
      loss_shape(summary.awd, bounds, population_size, sample_size, rho);
  RegularizationSolution solution;
  // numerator = 0 exactly when w_hi = N/n; every lambda then costs the same
  // noise and any awd favors lambda = 0.
  solution.lambda_crit =
      (shape.numerator == 0.0) ? 0.0 : shape.numerator / shape.curvature;
  solution.lambda_star = std::min(1.0, solution.lambda_crit);
  solution.loss_at_star = dp_mse_loss(summary, bounds, population_size,
                                      sample_size, solution.lambda_star, rho);
  solution.min_feasible_awd =
      min_feasible_awd(bounds, population_size, sample_size, rho);
  return solution;
}

double min_feasible_awd(const Bounds& bounds, std::int64_t population_size,
                        std::int64_t sample_size, double rho) {
  if (!(rho > 0.0)) {
    throw std::domain_error("min_feasible_awd: rho must be positive");
  }
  const double range = bounds.response_range();
  const double uniform_weight = static_cast<double>(population_size) /
                                static_cast<double>(sample_size);
  const double weight_gap = bounds.w_hi - uniform_weight;
  return std::sqrt(range * range * weight_gap /
                   (2.0 * rho * static_cast<double>(population_size) *
                    static_cast<double>(sample_size)));
}

double min_feasible_rho(const Bounds& bounds, std::int64_t population_size,
                        std::int64_t sample_size, double awd) {
  if (awd == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double range = bounds.response_range();
  const double uniform_weight = static_cast<double>(population_size) /
                                static_cast<double>(sample_size);
  const double weight_gap = bounds.w_hi - uniform_weight;
  return range * range * weight_gap /
         (2.0 * awd * awd * static_cast<double>(population_size) *
          static_cast<double>(sample_size));
}

double implied_awd(double lambda, const Bounds& bounds,
                   std::int64_t population_size, std::int64_t sample_size,
                   double rho2) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("implied_awd: lambda must be positive");
  }
  if (!(rho2 > 0.0)) {
    throw std::domain_error("implied_awd: rho2 must be positive");
  }
  const double range_over_pop =
      bounds.response_range() / static_cast<double>(population_size);
  const double uniform_weight = static_cast<double>(population_size) /
                                static_cast<double>(sample_size);
  const double weight_gap = bounds.w_hi - uniform_weight;
  const double scaled = (range_over_pop * range_over_pop) * weight_gap / rho2;
  const double radicand = 0.5 * (bounds.w_hi * scaled / lambda - weight_gap * scaled);
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

}  // namespace dpsurvey
