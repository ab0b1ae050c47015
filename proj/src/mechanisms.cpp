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

#include "dpsurvey/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

#include "dpsurvey/regularization.hpp"
#include "dpsurvey/sensitivity.hpp"
#include "dpsurvey/truncated_normal.hpp"

namespace dpsurvey {

void PrivacyBudget::validate() const {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) {
    throw std::invalid_argument("PrivacyBudget: rho1 and rho2 must be positive");
  }
  if (!(rho3 >= 0.0)) {
    throw std::invalid_argument("PrivacyBudget: rho3 must be nonnegative");
  }
}

double gaussian_noise_sd(double sensitivity, double rho) {
  if (!(sensitivity >= 0.0)) {
    throw std::domain_error("gaussian_noise_sd: sensitivity must be nonnegative");
  }
  if (!(rho > 0.0)) {
    throw std::domain_error("gaussian_noise_sd: rho must be positive");
  }
  return sensitivity / std::sqrt(2.0 * rho);
}

double gaussian_mechanism(double value, double sensitivity, double rho,
                          RandomSource& rng) {
  const double sd = gaussian_noise_sd(sensitivity, rho);
  if (sd == 0.0) {
    return value;
  }
  return value + sd * rng.normal();
}

namespace {

double selection_variance(double awd, const Bounds& bounds,
                          std::int64_t population_size,
                          std::int64_t sample_size, double rho1, double rho2) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) {
    throw std::domain_error("lambda selection: budgets must be positive");
  }
  const double loss_sensitivity =
      sensitivity_loss(bounds, population_size, sample_size);
  if (loss_sensitivity == 0.0) {
    throw std::domain_error(
        "lambda selection: w_hi = N/n makes the selection density degenerate");
  }
  const double range_over_pop =
      bounds.response_range() / static_cast<double>(population_size);
  const double uniform_weight = static_cast<double>(population_size) /
                                static_cast<double>(sample_size);
  const double weight_gap = bounds.w_hi - uniform_weight;
  const double half_curvature =
      (range_over_pop * range_over_pop) * (weight_gap * weight_gap) /
          (2.0 * rho2) +
      awd * awd;
  return loss_sensitivity / (std::sqrt(2.0 * rho1) * half_curvature);
}

}  // namespace

LambdaSelectionDensity lambda_selection_density(const SampleSummary& summary,
                                                const Bounds& bounds,
                                                std::int64_t population_size,
                                                std::int64_t sample_size,
                                                double rho1, double rho2) {
  LambdaSelectionDensity density;
  density.variance = selection_variance(summary.awd, bounds, population_size,
                                        sample_size, rho1, rho2);
  density.mean =
      optimal_lambda(summary, bounds, population_size, sample_size, rho2)
          .lambda_crit;
  return density;
}

double lambda_selection_variance_bound(const Bounds& bounds,
                                       std::int64_t population_size,
                                       std::int64_t sample_size, double rho1,
                                       double rho2) {
  return selection_variance(0.0, bounds, population_size, sample_size, rho1,
                            rho2);
}

double select_lambda(const SampleSummary& summary, const Bounds& bounds,
                     std::int64_t population_size, std::int64_t sample_size,
                     double rho1, double rho2, RandomSource& rng) {
  const LambdaSelectionDensity density = lambda_selection_density(
      summary, bounds, population_size, sample_size, rho1, rho2);
  return sample_truncated_normal(density.mean, std::sqrt(density.variance),
                                 0.0, 1.0, rng);
}

}  // namespace dpsurvey
