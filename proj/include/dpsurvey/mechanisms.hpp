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

#ifndef DPSURVEY_MECHANISMS_HPP_
#define DPSURVEY_MECHANISMS_HPP_

#include <cstdint>

#include "dpsurvey/random.hpp"
#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// zCDP allocations for the three release stages: shrinkage selection (rho1),
// mean release (rho2), variance release (rho3, zero when no interval is
// built). Spending composes additively; total() is the whole privacy cost.
struct PrivacyBudget {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;

  double total() const { return rho1 + rho2 + rho3; }

  // rho1, rho2 > 0; rho3 >= 0 (explicitly zero for point estimates only).
  void validate() const;
};

// Noise scale of the Gaussian mechanism: sensitivity / sqrt(2 rho).
double gaussian_noise_sd(double sensitivity, double rho);

// value + Normal(0, sensitivity^2 / (2 rho)); rho-zCDP for a statistic with
// the given sensitivity. sensitivity = 0 returns the value unchanged.
// Requires sensitivity >= 0 and rho > 0.
double gaussian_mechanism(double value, double sensitivity, double rho,
                          RandomSource& rng);

// The shrinkage-selection density is a normal truncated to [0, 1]: these are
// its location (the unclipped critical point, possibly outside [0, 1]) and
// the variance of the underlying normal.
struct LambdaSelectionDensity {
  double mean = 0.0;
  double variance = 0.0;
};

// Parameters of the selection density at budgets (rho1, rho2):
//   variance = [ sqrt(2 rho1)/loss_sensitivity *
//                ( (y_range/N)^2 (N/n - w_hi)^2 / (2 rho2) + awd^2 ) ]^-1,
// equivalently 2 * loss_sensitivity / (sqrt(2 rho1) * curvature of the loss).
// Requires w_hi > N/n: at equality the loss sensitivity vanishes and the
// density degenerates, which is rejected as a domain error.
LambdaSelectionDensity lambda_selection_density(const SampleSummary& summary,
                                                const Bounds& bounds,
                                                std::int64_t population_size,
                                                std::int64_t sample_size,
                                                double rho1, double rho2);

// Data-independent upper bound on the selection variance over all samples
// with these bounds (the variance evaluated at awd = 0).
double lambda_selection_variance_bound(const Bounds& bounds,
                                       std::int64_t population_size,
                                       std::int64_t sample_size, double rho1,
                                       double rho2);

// One rho1-zCDP draw of the shrinkage parameter from the density
// proportional to exp(-sqrt(2 rho1) / (2 loss_sensitivity) * loss(lambda))
// on [0, 1], realized exactly as the truncated normal above.
double select_lambda(const SampleSummary& summary, const Bounds& bounds,
                     std::int64_t population_size, std::int64_t sample_size,
                     double rho1, double rho2, RandomSource& rng);

}  // namespace dpsurvey

#endif  // DPSURVEY_MECHANISMS_HPP_
