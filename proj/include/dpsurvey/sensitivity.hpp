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

#ifndef DPSURVEY_SENSITIVITY_HPP_
#define DPSURVEY_SENSITIVITY_HPP_

#include <cstdint>

#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// Worst-case change of each statistic across samples differing in a single
// record's (y, w). Adjacency keeps n fixed, so every formula depends only on
// the schema bounds and the public sizes. Bounds are canonicalized
// internally: the response enters through its range, the weight through its
// upper bound (a conservative stand-in for the weight range).

// Weighted mean: w_hi * y_range / N.
double sensitivity_weighted_mean(const Bounds& bounds,
                                 std::int64_t population_size);

// Plain mean: y_range / n.
double sensitivity_unweighted_mean(const Bounds& bounds,
                                   std::int64_t sample_size);

// Regularized mean: shrink the weight bound like any weight,
// ((1 - lambda) * w_hi + lambda * N/n) * y_range / N. Nonincreasing in
// lambda whenever w_hi >= N/n. lambda in [0, 1].
double sensitivity_regularized_mean(const Bounds& bounds,
                                    std::int64_t population_size,
                                    std::int64_t sample_size, double lambda);

// DP-MSE loss as a function of lambda: the squared gap between the weighted
// and unweighted mean sensitivities.
double sensitivity_loss(const Bounds& bounds, std::int64_t population_size,
                        std::int64_t sample_size);

// Variance estimator: the square of the weighted-mean sensitivity. Slightly
// conservative; the exact supremum is (w_hi^2 - w_hi) * y_range^2 / N^2.
double sensitivity_variance(const Bounds& bounds,
                            std::int64_t population_size);

}  // namespace dpsurvey

#endif  // DPSURVEY_SENSITIVITY_HPP_
