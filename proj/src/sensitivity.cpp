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

#include "dpsurvey/sensitivity.hpp"

#include <stdexcept>

namespace dpsurvey {

double sensitivity_weighted_mean(const Bounds& bounds,
                                 std::int64_t population_size) {
  return bounds.w_hi * bounds.response_range() /
         static_cast<double>(population_size);
}

double sensitivity_unweighted_mean(const Bounds& bounds,
                                   std::int64_t sample_size) {
  return bounds.response_range() / static_cast<double>(sample_size);
}

double sensitivity_regularized_mean(const Bounds& bounds,
                                    std::int64_t population_size,
                                    std::int64_t sample_size, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("sensitivity_regularized_mean: lambda must lie in [0, 1]");
  }
  const double uniform_weight = static_cast<double>(population_size) /
                                static_cast<double>(sample_size);
  const double shrunk_bound = (1.0 - lambda) * bounds.w_hi + lambda * uniform_weight;
  return shrunk_bound * bounds.response_range() /
         static_cast<double>(population_size);
}

double sensitivity_loss(const Bounds& bounds, std::int64_t population_size,
                        std::int64_t sample_size) {
  const double gap = sensitivity_weighted_mean(bounds, population_size) -
                     sensitivity_unweighted_mean(bounds, sample_size);
  return gap * gap;
}

double sensitivity_variance(const Bounds& bounds,
                            std::int64_t population_size) {
  const double mean_sensitivity =
      sensitivity_weighted_mean(bounds, population_size);
  return mean_sensitivity * mean_sensitivity;
}

}  // namespace dpsurvey
