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

#ifndef DPSURVEY_ESTIMATORS_HPP_
#define DPSURVEY_ESTIMATORS_HPP_

#include <cstdint>

#include <Eigen/Core>

#include "dpsurvey/sample.hpp"

namespace dpsurvey {

// Horvitz-Thompson mean: (1/N) * sum_i y_i w_i. Unbiased for the population
// mean under the probability design encoded in the weights.
double weighted_mean(const SurveySample& sample);

// Plain mean of the responses; equals weighted_mean when all w_i = N/n.
double unweighted_mean(const SurveySample& sample);

// Linear shrinkage of the weights toward the uniform weight N/n:
// w -> (1 - lambda) * w + lambda * N/n, elementwise. lambda in [0, 1].
Eigen::VectorXd shrink_weights(const Eigen::VectorXd& w, double lambda,
                               std::int64_t population_size,
                               std::int64_t sample_size);

// Weighted mean under shrunken weights. Algebraically equal to
// lambda * unweighted_mean + (1 - lambda) * weighted_mean.
double regularized_mean(const SurveySample& sample, double lambda);

// Expected gap between the regularized release and the unbiased weighted
// estimator: lambda * (unweighted - weighted). Linear in lambda.
double mechanism_bias(const SampleSummary& summary, double lambda);

// First-term-only variance estimator, (1/N^2) * sum_i (w_i^2 - w_i) y_i^2.
// Conservative for without-replacement designs; exactly unbiased under
// Poisson sampling. Requires all w_i >= 1.
double approx_ht_variance(const SurveySample& sample);

// Joint inclusion probabilities for sampled pairs, indexed by position in the
// sample. pair_weight returns 1/pair_probability; designs whose reciprocal
// has an exact closed form should override it so that algebraic
// cancellations (census, constant response under fixed-size designs) survive
// in binary64.
class JointInclusionProvider {
 public:
  virtual ~JointInclusionProvider() = default;
  virtual double pair_probability(Eigen::Index i, Eigen::Index j) const = 0;
  virtual double pair_weight(Eigen::Index i, Eigen::Index j) const {
    return 1.0 / pair_probability(i, j);
  }
};

// Poisson designs factorize: pi_ij = pi_i * pi_j, so the pair weight is
// w_i * w_j and the full estimator collapses onto approx_ht_variance.
class PoissonJointInclusion : public JointInclusionProvider {
 public:
  explicit PoissonJointInclusion(const SurveySample& sample) : w_(sample.w) {}
  double pair_probability(Eigen::Index i, Eigen::Index j) const override {
    return (1.0 / w_[i]) * (1.0 / w_[j]);
  }
  double pair_weight(Eigen::Index i, Eigen::Index j) const override {
    return w_[i] * w_[j];
  }

 private:
  Eigen::VectorXd w_;
};

// Simple random sampling without replacement of n from N:
// pi_ij = n(n-1) / (N(N-1)) for every pair. Requires n >= 2.
class SrsworJointInclusion : public JointInclusionProvider {
 public:
  SrsworJointInclusion(std::int64_t population_size, std::int64_t sample_size);
  double pair_probability(Eigen::Index, Eigen::Index) const override {
    return probability_;
  }
  double pair_weight(Eigen::Index, Eigen::Index) const override {
    return weight_;
  }

 private:
  double probability_;
  double weight_;
};

// Full variance estimator for an arbitrary design with known pair
// probabilities. Evaluated as
//   (1/N^2) [ sum_i (w_i^2 - w_i) y_i^2
//             + sum_{i != j} (w_i w_j - 1/pi_ij) y_i y_j ],
// an algebraic regrouping of the usual two-term form. Throws on pair
// probabilities outside (0, 1].
double ht_variance_full(const SurveySample& sample,
                        const JointInclusionProvider& joint_inclusion);

}  // namespace dpsurvey

#endif  // DPSURVEY_ESTIMATORS_HPP_
