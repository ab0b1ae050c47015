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

#include "dpsurvey/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsurvey {
namespace {

// Neumaier-compensated sum in a fixed order. Keeps the estimator totals
// correctly rounded independent of SIMD width, which both the cross-platform
// reproducibility contract and the regularized-mean identity rely on.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      carry_ += (sum_ - t) + value;
    } else {
      carry_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double total() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

double weighted_mean(const SurveySample& sample) {
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < sample.size(); ++i) {
    acc.add(sample.y[i] * sample.w[i]);
  }
  return acc.total() / static_cast<double>(sample.population_size);
}

double unweighted_mean(const SurveySample& sample) {
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < sample.size(); ++i) {
    acc.add(sample.y[i]);
  }
  return acc.total() / static_cast<double>(sample.size());
}

Eigen::VectorXd shrink_weights(const Eigen::VectorXd& w, double lambda,
                               std::int64_t population_size,
                               std::int64_t sample_size) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("shrink_weights: lambda must lie in [0, 1]");
  }
  const double uniform_weight =
      static_cast<double>(population_size) / static_cast<double>(sample_size);
  return (1.0 - lambda) * w.array() + lambda * uniform_weight;
}

double regularized_mean(const SurveySample& sample, double lambda) {
  SurveySample shrunk = sample;
  shrunk.w = shrink_weights(sample.w, lambda, sample.population_size, sample.size());
  return weighted_mean(shrunk);
}

double mechanism_bias(const SampleSummary& summary, double lambda) {
  return lambda * (summary.unweighted - summary.weighted);
}

double approx_ht_variance(const SurveySample& sample) {
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < sample.size(); ++i) {
    const double w = sample.w[i];
    acc.add((w * w - w) * sample.y[i] * sample.y[i]);
  }
  const double population = static_cast<double>(sample.population_size);
  return acc.total() / (population * population);
}

SrsworJointInclusion::SrsworJointInclusion(std::int64_t population_size,
                                           std::int64_t sample_size) {
  if (sample_size < 2 || population_size < sample_size) {
    throw std::invalid_argument("SrsworJointInclusion: requires 2 <= n <= N");
  }
  const double pair_draws = static_cast<double>(sample_size) *
                            static_cast<double>(sample_size - 1);
  const double pair_pool = static_cast<double>(population_size) *
                           static_cast<double>(population_size - 1);
  probability_ = pair_draws / pair_pool;
  weight_ = pair_pool / pair_draws;
}

double ht_variance_full(const SurveySample& sample,
                        const JointInclusionProvider& joint_inclusion) {
  const Eigen::Index n = sample.size();
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = sample.w[i];
    acc.add((w * w - w) * sample.y[i] * sample.y[i]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double pi_ij = joint_inclusion.pair_probability(i, j);
      if (!(pi_ij > 0.0 && pi_ij <= 1.0)) {
        throw std::domain_error("ht_variance_full: pair probability outside (0, 1]");
      }
      const double pair_factor =
          sample.w[i] * sample.w[j] - joint_inclusion.pair_weight(i, j);
      acc.add(pair_factor * sample.y[i] * sample.y[j]);
    }
  }
  const double population = static_cast<double>(sample.population_size);
  return acc.total() / (population * population);
}

}  // namespace dpsurvey
