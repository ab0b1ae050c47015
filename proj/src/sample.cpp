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

#include "dpsurvey/sample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dpsurvey/estimators.hpp"

namespace dpsurvey {

void Bounds::validate() const {
  if (!(y_lo <= y_hi)) {
    throw std::invalid_argument("Bounds: requires y_lo <= y_hi");
  }
  if (!(1.0 <= w_lo && w_lo <= w_hi)) {
    throw std::invalid_argument("Bounds: requires 1 <= w_lo <= w_hi");
  }
  if (!(std::isfinite(y_lo) && std::isfinite(y_hi) && std::isfinite(w_hi))) {
    throw std::invalid_argument("Bounds: bounds must be finite");
  }
}

SurveySample SurveySample::canonicalized() const {
  SurveySample shifted = *this;
  if (bounds.y_lo != 0.0) {
    shifted.y.array() -= bounds.y_lo;
    shifted.bounds = bounds.canonicalized();
  }
  return shifted;
}

void SurveySample::validate() const {
  bounds.validate();
  const Eigen::Index n = y.size();
  if (n < 1) {
    throw std::invalid_argument("SurveySample: requires at least one record");
  }
  if (w.size() != n) {
    throw std::invalid_argument("SurveySample: y and w lengths differ");
  }
  if (population_size < n) {
    throw std::invalid_argument("SurveySample: population size below sample size");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(y[i] >= bounds.y_lo && y[i] <= bounds.y_hi)) {
      throw std::invalid_argument("SurveySample: response outside bounds at record " +
                                  std::to_string(i));
    }
    if (!(w[i] >= bounds.w_lo && w[i] <= bounds.w_hi)) {
      throw std::invalid_argument("SurveySample: weight outside bounds at record " +
                                  std::to_string(i));
    }
  }
  const double uniform_weight =
      static_cast<double>(population_size) / static_cast<double>(n);
  if (!(bounds.w_hi >= uniform_weight)) {
    throw std::invalid_argument("SurveySample: requires w_hi >= N/n");
  }
}

SampleSummary summarize(const SurveySample& sample) {
  SampleSummary summary;
  summary.weighted = weighted_mean(sample);
  summary.unweighted = unweighted_mean(sample);
  summary.awd = std::fabs(summary.unweighted - summary.weighted);
  const double gap = summary.weighted - summary.unweighted;
  summary.disc_sign = (gap > 0.0) - (gap < 0.0);
  return summary;
}

}  // namespace dpsurvey
