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

#ifndef DPSURVEY_NORMAL_HPP_
#define DPSURVEY_NORMAL_HPP_

namespace dpsurvey {

// P(Z <= x) for a standard normal Z.
double standard_normal_cdf(double x);

// P(Z > x), accurate deep into the upper tail (relative accuracy where
// erfc is, i.e. down to the underflow threshold near x ~ 38).
double standard_normal_tail(double x);

// Inverse of standard_normal_cdf. Wichura's PPND16 (algorithm AS 241),
// relative accuracy about 1e-16 for p in (0, 1) including extreme tails.
// p must lie strictly inside (0, 1).
double standard_normal_quantile(double p);

// z_p with P(Z > z_p) = p, the usual critical value, e.g. upper_quantile(0.025)
// for a two-sided 95% interval. Requires p in (0, 1).
double upper_quantile(double p);

}  // namespace dpsurvey

#endif  // DPSURVEY_NORMAL_HPP_
