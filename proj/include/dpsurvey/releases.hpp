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

#ifndef DPSURVEY_RELEASES_HPP_
#define DPSURVEY_RELEASES_HPP_

#include <cstdint>
#include <optional>

#include "dpsurvey/mechanisms.hpp"
#include "dpsurvey/random.hpp"
#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// Stage keys for deriving per-mechanism child streams. Deriving one stream
// per stage keeps every stage's draws invariant to how many uniforms another
// stage consumed, which is what makes common-random-number comparisons and
// parallel replication exact.
namespace stage {
inline constexpr std::uint64_t kLambda = 1;
inline constexpr std::uint64_t kMeanNoise = 2;
inline constexpr std::uint64_t kVarianceNoise = 3;
inline constexpr std::uint64_t kSign = 4;
}  // namespace stage

// Output of the two-stage point release. lambda_hat is part of the release:
// downstream consumers may recompute error bounds from it at no extra
// privacy cost.
struct DpMeanRelease {
  double lambda_hat = 0.0;
  double theta_dp = 0.0;
  double noise_sd = 0.0;  // sensitivity at lambda_hat / sqrt(2 rho2)
  std::optional<double> plugin_adjusted;
  double rho_spent = 0.0;
};

// Interval release wrapping a point release. v_dp is the raw Gaussian
// variance release and may be negative; the interval applies the truncation
// at zero internally.
struct DpIntervalRelease {
  DpMeanRelease release;
  double v_dp = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;
  double alpha_v = 0.0;
  double rho_spent = 0.0;
};

// How the direction of the weighting discrepancy, sign(weighted -
// unweighted), is obtained for the plug-in bias adjustment. Oversampling
// designs often make it public knowledge (a survey oversampling low incomes
// biases the unweighted mean low, so the sign is +1). Otherwise it can be
// bought with rho_s of budget, or left unknown to skip the adjustment.
struct DiscrepancySignPolicy {
  enum class Mode { kPublicPositive, kPublicNegative, kUnknown, kDpEstimated };
  Mode mode = Mode::kUnknown;
  double rho_s = 0.0;      // budget when kDpEstimated
  int resolved_sign = 0;   // filled by the pipeline after a DP sign estimate
};

// Two-stage point release at (rho1 + rho2)-zCDP: select lambda_hat by the
// exponential mechanism, then release the regularized mean via the Gaussian
// mechanism at the correspondingly reduced sensitivity. Pure function of
// (sample, budgets, rng): stage streams are derived from rng, never drawn
// from it, so identical sources reproduce identical releases.
DpMeanRelease dp_regularized_estimate(const SurveySample& sample, double rho1,
                                      double rho2, const RandomSource& rng);

// rho_s-zCDP estimate of sign(weighted - unweighted) by a two-point
// exponential mechanism with utility u(s) = s * (weighted - unweighted) and
// the conservative utility sensitivity
//   delta_u = sensitivity_weighted_mean + sensitivity_unweighted_mean.
// Returns +1 or -1.
int dp_sign_estimate(const SampleSummary& summary, const Bounds& bounds,
                     std::int64_t population_size, std::int64_t sample_size,
                     double rho_s, RandomSource& rng);

struct PluginAdjustment {
  double value = 0.0;   // adjusted estimate, or theta_dp when not applied
  bool applied = false;
};

// Plug-in bias adjustment: theta_dp + s * lambda_hat * implied_awd(lambda_hat)
// where s is the discrepancy sign from the policy (+1 when the weighted mean
// is known to exceed the unweighted one). In expectation this cancels the
// mechanism bias lambda * (unweighted - weighted). Unknown sign or
// lambda_hat = 0 leaves the estimate unchanged with applied = false.
PluginAdjustment plugin_bias_adjust(const DpMeanRelease& release,
                                    const Bounds& bounds,
                                    std::int64_t population_size,
                                    std::int64_t sample_size, double rho2,
                                    const DiscrepancySignPolicy& policy);

// Full point-release pipeline: Algorithm-1 release, optional DP sign
// estimate (spending policy.rho_s extra), plug-in adjustment. rho_spent
// covers every stage actually run.
DpMeanRelease dp_estimate_with_policy(const SurveySample& sample, double rho1,
                                      double rho2,
                                      const DiscrepancySignPolicy& policy,
                                      const RandomSource& rng);

// High-confidence bound on |theta_dp - weighted_mean| recomputable from the
// released lambda_hat alone:
//   implied_awd(lambda_hat + z * sqrt(variance bound)) / lambda_hat
//     + z * sensitivity(lambda_hat) / sqrt(2 rho2),
// with z the upper alpha/4 normal quantile. The implied_awd argument is
// clamped to zero bias beyond w_hi/(w_hi - N/n). Requires lambda_hat in
// (0, 1] and alpha in (0, 1).
double release_concentration_bound(double lambda_hat, const Bounds& bounds,
                                   std::int64_t population_size,
                                   std::int64_t sample_size, double rho1,
                                   double rho2, double alpha);

// Interval release at (rho1 + rho2 + rho3)-zCDP: point release, Gaussian
// release of the approximate variance computed with the ORIGINAL weights
// (shrunken weights would understate the sampling variance), then
//   half-width = z_{alpha/2} * sqrt( noise_sd^2 + max(v_dp, 0)
//                + z_{alpha_v/2} * sqrt(variance_sensitivity^2 / (2 rho3)) ).
// alpha_v sets the confidence of the DP upper bound on the confidential
// variance estimate; lowering it widens the interval.
DpIntervalRelease dp_confidence_interval(const SurveySample& sample,
                                         const PrivacyBudget& budget,
                                         double alpha, double alpha_v,
                                         const RandomSource& rng);

}  // namespace dpsurvey

#endif  // DPSURVEY_RELEASES_HPP_
