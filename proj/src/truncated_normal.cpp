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

#include "dpsurvey/truncated_normal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpsurvey/normal.hpp"

namespace dpsurvey {
namespace internal {

namespace {
// Below this standardized distance the central inverse-CDF path keeps full
// accuracy; beyond it the tail probabilities start to lose relative precision
// and the rejection sampler takes over.
constexpr double kTailThreshold = 0.4;
constexpr int kMaxRejectionRounds = 100000;
}  // namespace

// Devroye's rejection for the standard normal restricted to [a, b], a > 0.
// Proposes W ~ Exp truncated to [a^2/2, b^2/2] by inversion (so Z = sqrt(2W)
// has density proportional to z*exp(-z^2/2)) and accepts with probability
// a/z. Acceptance is at least a/b, which stays near one for the narrow
// far-tail intervals this branch handles.
double truncated_standard_normal_tail(double a, double b, RandomSource& rng) {
  const double c = 0.5 * a * a;
  const double f = std::expm1(c - 0.5 * b * b);
  for (int round = 0; round < kMaxRejectionRounds; ++round) {
    const double w = c - std::log1p(rng.uniform() * f);
    const double u = rng.uniform();
    if (u * u * w <= c) {
      return std::sqrt(2.0 * w);
    }
  }
  throw std::runtime_error("truncated normal: rejection failed to accept");
}

}  // namespace internal

double sample_truncated_normal(double mean, double sd, double lo, double hi,
                               RandomSource& rng) {
  if (!(sd > 0.0)) {
    throw std::domain_error("sample_truncated_normal: sd must be positive");
  }
  if (!(lo < hi)) {
    throw std::domain_error("sample_truncated_normal: requires lo < hi");
  }
  const double a = (lo - mean) / sd;
  const double b = (hi - mean) / sd;

  double z;
  if (a >= internal::kTailThreshold) {
    z = internal::truncated_standard_normal_tail(a, b, rng);
  } else if (b <= -internal::kTailThreshold) {
    z = -internal::truncated_standard_normal_tail(-b, -a, rng);
  } else {
    // Central interval: invert the CDF on the upper-tail scale. p_a > p_b are
    // both well away from 0 unless the far endpoint is extreme, in which case
    // the quantile's log-tail branch still resolves it.
    const double p_a = standard_normal_tail(a);
    const double p_b = standard_normal_tail(b);
    const double u = rng.uniform();
    const double p = p_b + (p_a - p_b) * u;
    z = -standard_normal_quantile(p);
  }
  const double x = mean + sd * z;
  return std::clamp(x, lo, hi);
}

}  // namespace dpsurvey
