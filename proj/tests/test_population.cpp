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

#include "dpsurvey/population.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "dpsurvey/estimators.hpp"
#include "dpsurvey/experiments.hpp"
#include "test_util.hpp"

namespace dpsurvey {
namespace {

PopulationSpec binary_spec(std::int64_t pop, double expected_n) {
  PopulationSpec spec;
  spec.pop_size = pop;
  spec.response.kind = ResponseModel::Kind::kBinary;
  spec.response.p = 0.5;
  spec.weights.expected_sample_size = expected_n;
  spec.weights.log_sigma = 0.0;
  spec.weights.weight_ceiling =
      2.0 * static_cast<double>(pop) / expected_n;
  return spec;
}

TEST_CASE("census: all inclusion probabilities one") {
  PopulationSpec spec = binary_spec(50, 50);
  spec.weights.weight_ceiling = 1.0;
  const Population population = generate_population(spec, RandomSource(1));
  CHECK(population.inclusion_prob.minCoeff() == 1.0);
  RandomSource rng(2);
  const SurveySample sample = poisson_sample(population, 0, rng);
  CHECK(sample.size() == 50);
  CHECK(sample.w.maxCoeff() == 1.0);
  CHECK(weighted_mean(sample) ==
        doctest::Approx(population.population_mean(0)).epsilon(1e-12));
}

TEST_CASE("noninformative design: gap vanishes as the population grows") {
  const Population population =
      generate_population(binary_spec(50000, 2000), RandomSource(3));
  RandomSource rng(4);
  double total_gap = 0.0;
  for (int r = 0; r < 50; ++r) {
    const SurveySample sample = poisson_sample(population, 0, rng);
    total_gap += std::fabs(unweighted_mean(sample) - weighted_mean(sample));
  }
  CHECK(total_gap / 50.0 < 0.02);
}

TEST_CASE("expected sample size and HT unbiasedness under Poisson") {
  const Population population =
      generate_population(binary_spec(2000, 400), RandomSource(5));
  CHECK(population.inclusion_prob.sum() == doctest::Approx(400.0).epsilon(1e-9));
  RandomSource rng(6);
  double total_n = 0.0;
  double total_mean = 0.0;
  const int replicates = 10000;
  for (int r = 0; r < replicates; ++r) {
    const SurveySample sample = poisson_sample(population, 0, rng);
    total_n += static_cast<double>(sample.size());
    total_mean += weighted_mean(sample);
  }
  // Binomial-sum standard error of the realized size.
  const double se_n = std::sqrt(400.0 * 0.8 / replicates);
  CHECK(std::fabs(total_n / replicates - 400.0) < 3.0 * se_n);
  const double truth = population.population_mean(0);
  CHECK(std::fabs(total_mean / replicates - truth) < 0.005);
}

TEST_CASE("desk-scale psid-like population hits its calibration targets") {
  const PopulationSpec spec = desk_scale_population();
  const Population population = generate_population(spec, RandomSource(7));
  REQUIRE(population.variables.size() == 3);
  CHECK(population.variable("inc3").bounds.y_hi == 150.0);
  CHECK(population.variable("pov").bounds.y_hi == 1.0);

  Eigen::VectorXd weights(population.inclusion_prob.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    weights[i] = 1.0 / population.inclusion_prob[i];
  }
  CHECK(weights.maxCoeff() <= 6000.0);
  CHECK(weights.minCoeff() >= 1.0);
  // Rank correlation between weights and the income-like response.
  const double corr =
      spearman_correlation(weights, population.variable("inc3").values);
  CHECK(std::fabs(corr - 0.14) < 0.05);

  // Gap directions: oversampled low incomes pull the unweighted income mean
  // down and the unweighted poverty rate up; the independent coin does
  // neither.
  const RandomSource rng(8);
  const int replicates = 100;
  const auto mean_gap = [&](std::size_t var) {
    double total = 0.0;
    for (int r = 0; r < replicates; ++r) {
      RandomSource rep = rng.child(var, static_cast<std::uint64_t>(r));
      const SurveySample sample = poisson_sample(population, var, rep);
      total += unweighted_mean(sample) - weighted_mean(sample);
    }
    return total / replicates;
  };
  CHECK(mean_gap(0) < -0.1);               // inc3: negative gap
  CHECK(mean_gap(1) > 0.002);              // pov: positive gap
  CHECK(std::fabs(mean_gap(2)) < 0.02);    // bern: near zero

  // The independent coin's absolute gap averages below 0.02 as well.
  double bern_abs = 0.0;
  for (int r = 0; r < replicates; ++r) {
    RandomSource rep = rng.child(9000, static_cast<std::uint64_t>(r));
    const SurveySample sample = poisson_sample(population, 2, rep);
    bern_abs += std::fabs(unweighted_mean(sample) - weighted_mean(sample));
  }
  CHECK(bern_abs / replicates < 0.02);
}

TEST_CASE("infeasible association target is rejected") {
  PopulationSpec spec = desk_scale_population();
  spec.pop_size = 2000;
  spec.weights.expected_sample_size = 100;
  spec.target_corr = 0.9999;
  CHECK_THROWS_AS(generate_population(spec, RandomSource(9)), std::domain_error);
  PopulationSpec flat = binary_spec(100, 10);
  flat.target_corr = 0.2;  // constant weights cannot correlate
  CHECK_THROWS_AS(generate_population(flat, RandomSource(9)), std::domain_error);
}

TEST_CASE("empty realizations are resampled and counted") {
  PopulationSpec spec;
  spec.pop_size = 3;
  spec.response.kind = ResponseModel::Kind::kBinary;
  spec.response.p = 0.5;
  spec.weights.log_sigma = 0.0;
  spec.weights.expected_sample_size = 3.0 * 0.02;
  spec.weights.weight_ceiling = 100.0;
  const Population tiny = generate_population(spec, RandomSource(10));
  RandomSource rng(11);
  int resamples = 0;
  int total_draws = 0;
  for (int r = 0; r < 200; ++r) {
    const SurveySample sample = poisson_sample(tiny, 0, rng, &resamples);
    CHECK(sample.size() >= 1);
    ++total_draws;
  }
  CHECK(resamples > 0);  // P(empty) ~ 0.94 per attempt at pi = 0.02
  CHECK(total_draws == 200);
}

TEST_CASE("spearman correlation basics") {
  Eigen::VectorXd a(5);
  Eigen::VectorXd b(5);
  a << 1, 2, 3, 4, 5;
  b << 2, 4, 6, 8, 10;
  CHECK(spearman_correlation(a, b) == doctest::Approx(1.0));
  b << 10, 8, 6, 4, 2;
  CHECK(spearman_correlation(a, b) == doctest::Approx(-1.0));
}

}  // namespace
}  // namespace dpsurvey
