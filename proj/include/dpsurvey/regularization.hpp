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

#ifndef DPSURVEY_REGULARIZATION_HPP_
#define DPSURVEY_REGULARIZATION_HPP_

#include <cstdint>

#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// Closed-form solution of the shrinkage trade-off at a fixed privacy loss.
struct RegularizationSolution {
  double lambda_star = 0.0;        // min(1, lambda_crit), the optimum in [0, 1]
  double lambda_crit = 0.0;        // unclipped critical point, may exceed 1
  double loss_at_star = 0.0;       // DP MSE at lambda_star
  double min_feasible_awd = 0.0;   // threshold below which lambda_star = 1
};

// Mean squared error of the Gaussian release of the regularized mean at
// privacy loss rho, conditional on the sample:
//   sensitivity(lambda)^2 / (2 rho) + mechanism_bias(lambda)^2.
// Strictly convex quadratic in lambda. Evaluated in the expanded form
// with the shrunken weight bound kept as a sum of nonnegative terms, so
// w_hi >> N/n does not cancel catastrophically. Requires rho > 0.
double dp_mse_loss(const SampleSummary& summary, const Bounds& bounds,
                   std::int64_t population_size, std::int64_t sample_size,
                   double lambda, double rho);

// Minimizer of dp_mse_loss over [0, 1]. lambda_star > 0 whenever
// w_hi > N/n: some shrinkage always beats raw weights. Requires rho > 0 and
// w_hi >= N/n.
RegularizationSolution optimal_lambda(const SampleSummary& summary,
                                      const Bounds& bounds,
                                      std::int64_t population_size,
                                      std::int64_t sample_size, double rho);

// Smallest weighting discrepancy for which partial shrinkage wins:
// lambda_star < 1 iff awd strictly exceeds
//   sqrt(y_range^2 (w_hi - N/n) / (2 rho N n)).
double min_feasible_awd(const Bounds& bounds, std::int64_t population_size,
                        std::int64_t sample_size, double rho);

// Inverse of min_feasible_awd in rho: the smallest privacy loss at which a
// given discrepancy is worth correcting. awd = 0 returns +infinity (no
// finite budget suffices); keeps grid sweeps total.
double min_feasible_rho(const Bounds& bounds, std::int64_t population_size,
                        std::int64_t sample_size, double awd);

// Inverts the optimal-shrinkage relation: the weighting discrepancy
// consistent with an interior optimum at the given lambda, under budget
// rho2. implied_awd(lambda_star) recovers the awd that produced it; the
// value at lambda = 1 equals min_feasible_awd. Arguments at or above
// w_hi / (w_hi - N/n), where the radicand turns negative, return 0 (the
// correct limiting bias bound). Requires lambda > 0.
double implied_awd(double lambda, const Bounds& bounds,
                   std::int64_t population_size, std::int64_t sample_size,
                   double rho2);

}  // namespace dpsurvey

#endif  // DPSURVEY_REGULARIZATION_HPP_
