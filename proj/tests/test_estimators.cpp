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

#include <map>
#include <stdexcept>
#include <utility>

#include <doctest.h>

#include "dpsurvey/random.hpp"
#include "test_util.hpp"

namespace dpsurvey {
namespace {

SurveySample make_sample(std::vector<double> y, std::vector<double> w,
                         std::int64_t population, Bounds bounds) {
  SurveySample sample;
  sample.y = Eigen::Map<const Eigen::VectorXd>(y.data(),
                                               static_cast<Eigen::Index>(y.size()));
  sample.w = Eigen::Map<const Eigen::VectorXd>(w.data(),
                                               static_cast<Eigen::Index>(w.size()));
  sample.population_size = population;
  sample.bounds = bounds;
  return sample;
}

TEST_CASE("weighted mean worked examples") {
  CHECK(weighted_mean(make_sample({0, 1}, {30, 70}, 100, {0, 1, 1, 70})) == 0.7);
  CHECK(weighted_mean(make_sample({1, 1}, {50, 50}, 100, {0, 1, 1, 50})) == 1.0);
  CHECK(weighted_mean(make_sample({0, 0, 0}, {3, 9, 27}, 100, {0, 1, 1, 50})) == 0.0);
}

TEST_CASE("unweighted mean worked examples") {
  CHECK(unweighted_mean(make_sample({0, 1}, {30, 70}, 100, {0, 1, 1, 70})) == 0.5);
  CHECK(unweighted_mean(make_sample({2, 4, 6}, {1, 1, 1}, 3, {0, 6, 1, 1})) == 4.0);
}

TEST_CASE("self-weighting design collapses the two means") {
  auto sample = make_sample({0.2, 0.9, 0.4}, {4, 4, 4}, 12, {0, 1, 1, 4});
  CHECK(weighted_mean(sample) == doctest::Approx(unweighted_mean(sample)).epsilon(1e-15));
}

TEST_CASE("shrink_weights endpoints and midpoint") {
  Eigen::VectorXd w(2);
  w << 2, 4;
  CHECK(shrink_weights(w, 0.0, 30, 10) == w);
  const Eigen::VectorXd full = shrink_weights(w, 1.0, 30, 10);
  CHECK(full[0] == 3.0);
  CHECK(full[1] == 3.0);
  const Eigen::VectorXd half = shrink_weights(w, 0.5, 30, 10);
  CHECK(half[0] == 2.5);
  CHECK(half[1] == 3.5);
  CHECK_THROWS_AS(shrink_weights(w, -0.1, 30, 10), std::domain_error);
  CHECK_THROWS_AS(shrink_weights(w, 1.1, 30, 10), std::domain_error);
}

TEST_CASE("regularized mean worked example") {
  auto sample = make_sample({0, 1}, {30, 70}, 100, {0, 1, 1, 70});
  CHECK(regularized_mean(sample, 0.0) == weighted_mean(sample));
  CHECK(regularized_mean(sample, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(regularized_mean(sample, 0.5) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("regularized mean equals the mean blend within 8 ulp") {
  RandomSource rng(314);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 2000);
    const std::int64_t population =
        n + static_cast<std::int64_t>(rng.uniform() * 1000000);
    Bounds bounds{0.0, 1.0 + 100.0 * rng.uniform(), 1.0, 0.0};
    const double uniform_weight = static_cast<double>(population) / n;
    bounds.w_hi = uniform_weight * (1.0 + 100.0 * rng.uniform());
    SurveySample sample;
    sample.population_size = population;
    sample.bounds = bounds;
    sample.y.resize(n);
    sample.w.resize(n);
    for (int i = 0; i < n; ++i) {
      sample.y[i] = bounds.y_hi * rng.uniform();
      sample.w[i] = 1.0 + (bounds.w_hi - 1.0) * rng.uniform();
    }
    const double lambda = rng.uniform();
    const double via_weights = regularized_mean(sample, lambda);
    const double via_blend = lambda * unweighted_mean(sample) +
                             (1.0 - lambda) * weighted_mean(sample);
    CHECK(testing::ulp_distance(via_weights, via_blend) <= 8.0);
  }
}

TEST_CASE("mechanism bias is linear with the stated endpoints") {
  SampleSummary summary;
  summary.weighted = 0.7;
  summary.unweighted = 0.5;
  CHECK(mechanism_bias(summary, 0.0) == 0.0);
  CHECK(mechanism_bias(summary, 1.0) == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(mechanism_bias(summary, 0.5) == doctest::Approx(-0.1).epsilon(1e-15));
}

TEST_CASE("summarize") {
  const SampleSummary summary = summarize(testing::toy_sample());
  CHECK(summary.weighted == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(summary.unweighted == 0.5);
  CHECK(summary.awd == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(summary.disc_sign == 1);
}

TEST_CASE("sample validation catches each invariant") {
  auto good = testing::toy_sample();
  CHECK_NOTHROW(good.validate());
  auto bad = good;
  bad.population_size = 5;  // below n
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.y[0] = 2.0;  // outside bounds
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.w[3] = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.bounds.w_hi = 9.0;  // below N/n = 10
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = good;
  bad.y.resize(0);
  bad.w.resize(0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("canonicalization shifts responses and bounds") {
  auto sample = make_sample({-1, 1}, {2, 2}, 4, {-1, 1, 1, 2});
  const SurveySample canonical = sample.canonicalized();
  CHECK(canonical.bounds.y_lo == 0.0);
  CHECK(canonical.bounds.y_hi == 2.0);
  CHECK(canonical.y[0] == 0.0);
  CHECK(canonical.y[1] == 2.0);
  CHECK(weighted_mean(canonical) ==
        doctest::Approx(weighted_mean(sample) + 1.0).epsilon(1e-15));
}

TEST_CASE("approximate variance worked examples") {
  CHECK(approx_ht_variance(make_sample({1}, {4}, 10, {0, 1, 1, 10})) ==
        doctest::Approx(0.12).epsilon(1e-15));
  CHECK(approx_ht_variance(make_sample({1, 1}, {1, 1}, 2, {0, 1, 1, 1})) == 0.0);
  CHECK(approx_ht_variance(make_sample({1, 1}, {2, 2}, 4, {0, 1, 1, 2})) == 0.25);
}

TEST_CASE("full variance factorizes exactly under Poisson") {
  const auto sample = testing::toy_sample();
  const PoissonJointInclusion poisson(sample);
  CHECK(ht_variance_full(sample, poisson) == approx_ht_variance(sample));
}

TEST_CASE("constant response under SRSWOR is exactly zero") {
  // n = 2 of N = 3: first and second terms are 1/6 and -1/6.
  auto sample = make_sample({1, 1}, {1.5, 1.5}, 3, {0, 1, 1, 1.5});
  CHECK(ht_variance_full(sample, SrsworJointInclusion(3, 2)) == 0.0);
  auto wider = make_sample({0.7, 0.7, 0.7}, {2, 2, 2}, 6, {0, 1, 1, 2});
  CHECK(ht_variance_full(wider, SrsworJointInclusion(6, 3)) == 0.0);
}

TEST_CASE("single sampled record uses the first term only") {
  auto sample = make_sample({1}, {4}, 10, {0, 1, 1, 10});
  // Any provider works; no pairs are visited.
  const PoissonJointInclusion poisson(sample);
  CHECK(ht_variance_full(sample, poisson) == approx_ht_variance(sample));
}

class PairTable : public JointInclusionProvider {
 public:
  void set(Eigen::Index i, Eigen::Index j, double value) {
    table_[{i, j}] = value;
    table_[{j, i}] = value;
  }
  double pair_probability(Eigen::Index i, Eigen::Index j) const override {
    const auto it = table_.find({i, j});
    return it == table_.end() ? 0.0 : it->second;
  }

 private:
  std::map<std::pair<Eigen::Index, Eigen::Index>, double> table_;
};

TEST_CASE("missing or invalid pair probabilities are domain errors") {
  auto sample = make_sample({1, 1}, {1.5, 1.5}, 3, {0, 1, 1, 1.5});
  PairTable empty_table;
  CHECK_THROWS_AS(ht_variance_full(sample, empty_table), std::domain_error);
  PairTable bad;
  bad.set(0, 1, 1.5);
  CHECK_THROWS_AS(ht_variance_full(sample, bad), std::domain_error);
  PairTable good;
  good.set(0, 1, 1.0 / 3.0);
  CHECK(ht_variance_full(sample, good) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

}  // namespace
}  // namespace dpsurvey
