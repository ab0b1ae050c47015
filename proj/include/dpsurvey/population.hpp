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

#ifndef DPSURVEY_POPULATION_HPP_
#define DPSURVEY_POPULATION_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dpsurvey/random.hpp"
#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// Inclusion probabilities as a function of a latent size measure:
// pi_i proportional to exp(-log_sigma * z_i) for a standard-normal latent
// z_i, scaled so the probabilities sum to the expected sample size and
// clamped so the implied weights 1/pi_i stay inside
// [weight_floor, weight_ceiling]. log_sigma = 0 gives a constant-probability
// (noninformative) design.
struct WeightModel {
  double expected_sample_size = 0.0;
  double log_sigma = 0.0;
  double weight_floor = 1.0;
  double weight_ceiling = 1.0;
};

struct ResponseModel {
  enum class Kind {
    kBinary,             // Bernoulli(p) on {0, 1}
    kBoundedContinuous,  // scale * Kumaraswamy(shape_a, shape_b) on [0, scale]
    kPsidLike,           // income-like trio: inc3, pov, bern (see below)
  };
  Kind kind = Kind::kBinary;
  double p = 0.5;
  double shape_a = 1.0;
  double shape_b = 1.0;
  double scale = 1.0;
};

// Synthetic finite population. The psid-like mode mimics a survey that
// oversamples low incomes: a cube-root-transformed income variable (gap
// between unweighted and weighted means negative), a poverty flag (gap
// positive), and an independent Bernoulli(.5) control (gap near zero), with
// the weight-response rank correlation tuned to target_corr.
struct PopulationSpec {
  std::int64_t pop_size = 0;
  ResponseModel response;
  WeightModel weights;
  // Desired Spearman correlation between design weights and the (primary)
  // response. Requires an informative weight model (log_sigma > 0) when
  // nonzero; infeasible targets are a domain error.
  double target_corr = 0.0;

  void validate() const;
};

struct ResponseVariable {
  std::string name;
  Eigen::VectorXd values;
  Bounds bounds;
};

struct Population {
  std::int64_t size = 0;
  Eigen::VectorXd inclusion_prob;
  std::vector<ResponseVariable> variables;

  const ResponseVariable& variable(std::string_view name) const;
  double population_mean(std::size_t variable_index) const;
};

// Pure function of (spec, rng): internal streams are derived, not drawn.
Population generate_population(const PopulationSpec& spec,
                               const RandomSource& rng);

// Poisson design: record i enters independently with probability pi_i,
// weights are 1/pi_i and the realized sample size is random. Empty
// realizations (possible at tiny probabilities) are resampled; the retry
// count is reported through *resamples when given.
SurveySample poisson_sample(const Population& population,
                            std::size_t variable_index, RandomSource& rng,
                            int* resamples = nullptr);

// Average-rank Spearman correlation; the tuning target for generators and a
// checkable property in tests.
double spearman_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace dpsurvey

#endif  // DPSURVEY_POPULATION_HPP_
