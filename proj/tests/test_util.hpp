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

#ifndef DPSURVEY_TESTS_TEST_UTIL_HPP_
#define DPSURVEY_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dpsurvey/sample.hpp"

namespace dpsurvey::testing {

// Kolmogorov-Smirnov distance between draws and a reference CDF.
inline double ks_distance(std::vector<double> draws,
                          const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const double m = static_cast<double>(draws.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double reference = cdf(draws[i]);
    const double above = (static_cast<double>(i) + 1.0) / m - reference;
    const double below = reference - static_cast<double>(i) / m;
    worst = std::max({worst, above, below});
  }
  return worst;
}

inline double mean_of(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

inline double sd_of(const std::vector<double>& values) {
  const double mu = mean_of(values);
  double total = 0.0;
  for (double v : values) total += (v - mu) * (v - mu);
  return std::sqrt(total / (static_cast<double>(values.size()) - 1.0));
}

// |a - b| measured in units in the last place of the larger magnitude.
inline double ulp_distance(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return 0.0;
  const double ulp = std::ldexp(std::numeric_limits<double>::epsilon(),
                                std::ilogb(scale));
  return std::fabs(a - b) / ulp;
}

// The worked reference sample: weighted mean 0.6, unweighted 0.5, awd 0.1,
// weights summing to N with bounds [0,1] x [1,20], N = 100, n = 10.
inline SurveySample toy_sample() {
  SurveySample sample;
  sample.y.resize(10);
  sample.w.resize(10);
  for (int i = 0; i < 5; ++i) {
    sample.y[i] = 1.0;
    sample.w[i] = 12.0;
    sample.y[5 + i] = 0.0;
    sample.w[5 + i] = 8.0;
  }
  sample.population_size = 100;
  sample.bounds = Bounds{0.0, 1.0, 1.0, 20.0};
  return sample;
}

// The toy closed-form configuration used throughout the worked examples.
inline Bounds toy_bounds() { return Bounds{0.0, 1.0, 1.0, 20.0}; }

inline SampleSummary toy_summary(double awd = 0.1) {
  SampleSummary summary;
  summary.weighted = 0.5 + awd;
  summary.unweighted = 0.5;
  summary.awd = awd;
  summary.disc_sign = awd > 0.0 ? 1 : 0;
  return summary;
}

}  // namespace dpsurvey::testing

#endif  // DPSURVEY_TESTS_TEST_UTIL_HPP_
