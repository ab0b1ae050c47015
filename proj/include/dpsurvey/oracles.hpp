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

#ifndef DPSURVEY_ORACLES_HPP_
#define DPSURVEY_ORACLES_HPP_

#include <cstdint>

#include <Eigen/Core>

#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// Statistics the brute-force sensitivity oracle can exercise.
enum class SensitivityStatistic {
  kWeightedMean,
  kRegularizedMean,   // needs a lambda
  kApproxVariance,
  kAbsDiscrepancy,    // |unweighted - weighted|; checks the loss-sensitivity bound
};

// Exhaustive adjacent-sample search: over a set of base samples and a
// grid_steps x grid_steps grid of (y, w) values (endpoints included) for the
// replaced record, maximizes |T(sample) - T(sample')| where the two samples
// differ in exactly one record. Approaches the closed-form sensitivities
// from below as the grid refines and must never exceed them.
//
// Guarded at n <= 8 and grid_steps <= 64 to keep the search exhaustive but
// bounded.
double brute_force_sensitivity(SensitivityStatistic statistic,
                               const Bounds& bounds,
                               std::int64_t population_size,
                               std::int64_t sample_size, int grid_steps,
                               double lambda = 0.0);

// Shrinkage-selection density evaluated on a uniform grid over [0, 1],
// normalized by trapezoidal quadrature. The reference distribution for
// Kolmogorov-Smirnov checks of select_lambda. grid_points >= 1000.
struct DensityTable {
  Eigen::VectorXd lambda;
  Eigen::VectorXd density;  // integrates to 1 by the trapezoid rule
  Eigen::VectorXd cdf;      // cdf[0] = 0, cdf[last] = 1

  // Linear interpolation of the tabulated CDF.
  double cdf_at(double x) const;
};

DensityTable selection_density_table(const SampleSummary& summary,
                                     const Bounds& bounds,
                                     std::int64_t population_size,
                                     std::int64_t sample_size, double rho1,
                                     double rho2, int grid_points);

}  // namespace dpsurvey

#endif  // DPSURVEY_ORACLES_HPP_
