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

#ifndef DPSURVEY_SAMPLE_HPP_
#define DPSURVEY_SAMPLE_HPP_

#include <cstdint>

#include <Eigen/Core>

namespace dpsurvey {

// Schema bounds [y_lo, y_hi] x [w_lo, w_hi] for responses and design weights.
// These are public metadata: every sensitivity below is a function of the
// bounds and the public sizes, never of confidential values.
//
// All closed forms assume the canonical form y_lo = 0; canonicalized() shifts
// the response interval accordingly. Point estimates computed on a
// canonicalized sample must be shifted back by +y_lo on output. The shift
// constant is schema metadata, not confidential.
struct Bounds {
  double y_lo = 0.0;
  double y_hi = 1.0;
  double w_lo = 1.0;
  double w_hi = 1.0;

  double response_range() const { return y_hi - y_lo; }
  bool canonical() const { return y_lo == 0.0; }
  Bounds canonicalized() const { return Bounds{0.0, y_hi - y_lo, w_lo, w_hi}; }

  // Enforces y_lo <= y_hi and 1 <= w_lo <= w_hi.
  void validate() const;
};

// The confidential input: paired responses and design weights drawn from a
// probability sample, plus the public population size and schema bounds.
struct SurveySample {
  Eigen::VectorXd y;
  Eigen::VectorXd w;
  std::int64_t population_size = 0;
  Bounds bounds;

  Eigen::Index size() const { return y.size(); }

  // Same sample with responses shifted so the response interval starts at 0.
  SurveySample canonicalized() const;

  // Enforces the sample invariants: equal nonempty lengths, n <= N,
  // all values inside bounds, and w_hi >= N/n.
  void validate() const;
};

// Non-private summary statistics feeding the regularization closed forms.
// These are confidential intermediates and must never be released directly.
struct SampleSummary {
  double weighted = 0.0;    // survey-weighted mean
  double unweighted = 0.0;  // plain mean of the responses
  double awd = 0.0;         // |unweighted - weighted|
  int disc_sign = 0;        // sign(weighted - unweighted), in {-1, 0, +1}
};

SampleSummary summarize(const SurveySample& sample);

}  // namespace dpsurvey

#endif  // DPSURVEY_SAMPLE_HPP_
