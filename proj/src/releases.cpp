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

#include "dpsurvey/releases.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpsurvey/estimators.hpp"
#include "dpsurvey/normal.hpp"
#include "dpsurvey/regularization.hpp"
#include "dpsurvey/sensitivity.hpp"

namespace dpsurvey {

DpMeanRelease dp_regularized_estimate(const SurveySample& sample, double rho1,
                                      double rho2, const RandomSource& rng) {
  sample.validate();
  const SurveySample canonical = sample.canonicalized();
  const SampleSummary summary = summarize(canonical);
  const std::int64_t population = canonical.population_size;
  const std::int64_t n = canonical.size();

  RandomSource lambda_rng = rng.child(stage::kLambda);
  const double lambda_hat = select_lambda(summary, canonical.bounds, population,
                                          n, rho1, rho2, lambda_rng);

  const double sensitivity =
      sensitivity_regularized_mean(canonical.bounds, population, n, lambda_hat);
  RandomSource noise_rng = rng.child(stage::kMeanNoise);
  const double noised = gaussian_mechanism(regularized_mean(canonical, lambda_hat),
                                           sensitivity, rho2, noise_rng);

  DpMeanRelease release;
  release.lambda_hat = lambda_hat;
  release.theta_dp = noised + sample.bounds.y_lo;
  release.noise_sd = gaussian_noise_sd(sensitivity, rho2);
  release.rho_spent = rho1 + rho2;
  return release;
}

int dp_sign_estimate(const SampleSummary& summary, const Bounds& bounds,
                     std::int64_t population_size, std::int64_t sample_size,
                     double rho_s, RandomSource& rng) {
  if (!(rho_s > 0.0)) {
    throw std::domain_error("dp_sign_estimate: rho_s must be positive");
  }
  const double utility_sensitivity =
      sensitivity_weighted_mean(bounds, population_size) +
      sensitivity_unweighted_mean(bounds, sample_size);
  const double gap = summary.weighted - summary.unweighted;
  // Two-point exponential mechanism: P(+1)/P(-1) = exp(sqrt(2 rho_s) * 2 gap
  // / (2 delta_u)). Constant response makes delta_u zero; the gap is then
  // zero as well and the draw is a fair coin.
  double p_positive = 0.5;
  if (utility_sensitivity > 0.0) {
    p_positive =
        1.0 / (1.0 + std::exp(-std::sqrt(2.0 * rho_s) * gap / utility_sensitivity));
  }
  return rng.bernoulli(p_positive) ? +1 : -1;
}

PluginAdjustment plugin_bias_adjust(const DpMeanRelease& release,
                                    const Bounds& bounds,
                                    std::int64_t population_size,
                                    std::int64_t sample_size, double rho2,
                                    const DiscrepancySignPolicy& policy) {
  PluginAdjustment adjustment;
  adjustment.value = release.theta_dp;
  int sign = 0;
  switch (policy.mode) {
    case DiscrepancySignPolicy::Mode::kPublicPositive:
      sign = +1;
      break;
    case DiscrepancySignPolicy::Mode::kPublicNegative:
      sign = -1;
      break;
    case DiscrepancySignPolicy::Mode::kDpEstimated:
      if (policy.resolved_sign == 0) {
        throw std::invalid_argument(
            "plugin_bias_adjust: DP sign policy missing a resolved sign");
      }
      sign = policy.resolved_sign;
      break;
    case DiscrepancySignPolicy::Mode::kUnknown:
      return adjustment;
  }
  if (release.lambda_hat == 0.0) {
    // No shrinkage, no mechanism bias; nothing defined to correct.
    return adjustment;
  }
  const double bias_proxy = implied_awd(release.lambda_hat, bounds,
                                        population_size, sample_size, rho2);
  adjustment.value =
      release.theta_dp + sign * release.lambda_hat * bias_proxy;
  adjustment.applied = true;
  return adjustment;
}

DpMeanRelease dp_estimate_with_policy(const SurveySample& sample, double rho1,
                                      double rho2,
                                      const DiscrepancySignPolicy& policy,
                                      const RandomSource& rng) {
  DpMeanRelease release = dp_regularized_estimate(sample, rho1, rho2, rng);

  DiscrepancySignPolicy resolved = policy;
  if (policy.mode == DiscrepancySignPolicy::Mode::kDpEstimated) {
    const SurveySample canonical = sample.canonicalized();
    RandomSource sign_rng = rng.child(stage::kSign);
    resolved.resolved_sign =
        dp_sign_estimate(summarize(canonical), canonical.bounds,
                         canonical.population_size, canonical.size(),
                         policy.rho_s, sign_rng);
    release.rho_spent = rho1 + rho2 + policy.rho_s;
  }
  const PluginAdjustment adjustment =
      plugin_bias_adjust(release, sample.bounds, sample.population_size,
                         sample.size(), rho2, resolved);
  if (adjustment.applied) {
    release.plugin_adjusted = adjustment.value;
  }
  return release;
}

double release_concentration_bound(double lambda_hat, const Bounds& bounds,
                                   std::int64_t population_size,
                                   std::int64_t sample_size, double rho1,
                                   double rho2, double alpha) {
  if (!(lambda_hat > 0.0 && lambda_hat <= 1.0)) {
    throw std::domain_error(
        "release_concentration_bound: lambda_hat must lie in (0, 1]");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("release_concentration_bound: alpha must lie in (0, 1)");
  }
  const double z = upper_quantile(alpha / 4.0);
  const double spread = std::sqrt(lambda_selection_variance_bound(
      bounds, population_size, sample_size, rho1, rho2));
  const double bias_term =
      implied_awd(lambda_hat + z * spread, bounds, population_size, sample_size,
                  rho2) /
      lambda_hat;
  const double noise_term =
      z * gaussian_noise_sd(sensitivity_regularized_mean(
                                bounds, population_size, sample_size, lambda_hat),
                            rho2);
  return bias_term + noise_term;
}

DpIntervalRelease dp_confidence_interval(const SurveySample& sample,
                                         const PrivacyBudget& budget,
                                         double alpha, double alpha_v,
                                         const RandomSource& rng) {
  budget.validate();
  if (!(budget.rho3 > 0.0)) {
    throw std::invalid_argument("dp_confidence_interval: rho3 must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0) || !(alpha_v > 0.0 && alpha_v < 1.0)) {
    throw std::invalid_argument(
        "dp_confidence_interval: alpha and alpha_v must lie in (0, 1)");
  }
  sample.validate();
  const SurveySample canonical = sample.canonicalized();

  DpIntervalRelease interval;
  interval.release =
      dp_regularized_estimate(sample, budget.rho1, budget.rho2, rng);

  // Variance of the weighted estimator under the original weights; shrunken
  // weights would understate it.
  const double variance_sensitivity =
      sensitivity_variance(canonical.bounds, canonical.population_size);
  RandomSource variance_rng = rng.child(stage::kVarianceNoise);
  interval.v_dp = gaussian_mechanism(approx_ht_variance(canonical),
                                     variance_sensitivity, budget.rho3,
                                     variance_rng);

  const double variance_noise_bound =
      upper_quantile(alpha_v / 2.0) *
      gaussian_noise_sd(variance_sensitivity, budget.rho3);
  const double half_width =
      upper_quantile(alpha / 2.0) *
      std::sqrt(interval.release.noise_sd * interval.release.noise_sd +
                std::max(interval.v_dp, 0.0) + variance_noise_bound);

  interval.lower = interval.release.theta_dp - half_width;
  interval.upper = interval.release.theta_dp + half_width;
  interval.alpha = alpha;
  interval.alpha_v = alpha_v;
  interval.rho_spent = budget.rho1 + budget.rho2 + budget.rho3;
  return interval;
}

}  // namespace dpsurvey
