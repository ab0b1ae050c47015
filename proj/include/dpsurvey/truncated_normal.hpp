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

#ifndef DPSURVEY_TRUNCATED_NORMAL_HPP_
#define DPSURVEY_TRUNCATED_NORMAL_HPP_

#include "dpsurvey/random.hpp"

namespace dpsurvey {

// Exact draw from Normal(mean, sd^2) conditioned to [lo, hi].
//
// Robust when the mean sits many standard deviations outside [lo, hi]:
// intervals in the far tail use Devroye's truncated-exponential rejection,
// everything else uses the inverse CDF through a high-precision tail
// quantile. Plain accept-reject against the untruncated normal is never
// used, so acceptance rates cannot collapse.
//
// Requires sd > 0 and lo < hi.
double sample_truncated_normal(double mean, double sd, double lo, double hi,
                               RandomSource& rng);

namespace internal {
// Standard-normal draw conditioned to [a, b] with 0.4 <= a < b.
// Exposed for direct testing of the tail branch.
double truncated_standard_normal_tail(double a, double b, RandomSource& rng);
}  // namespace internal

}  // namespace dpsurvey

#endif  // DPSURVEY_TRUNCATED_NORMAL_HPP_
