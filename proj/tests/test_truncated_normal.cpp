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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "dpsurvey/normal.hpp"
#include "test_util.hpp"

namespace dpsurvey {
namespace {

std::vector<double> draw(double mean, double sd, double lo, double hi,
                         int count, std::uint64_t seed) {
  RandomSource rng(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& x : out) x = sample_truncated_normal(mean, sd, lo, hi, rng);
  return out;
}

// Grid CDF of the normal density conditioned to [lo, hi], stabilized by
// subtracting the peak exponent; usable arbitrarily far into the tail.
std::function<double(double)> conditioned_cdf(double mean, double sd,
                                              double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  std::vector<double> cdf(static_cast<std::size_t>(points));
  const double step = (hi - lo) / static_cast<double>(points - 1);
  double peak = -1e308;
  for (int k = 0; k < points; ++k) {
    grid[k] = lo + step * k;
    const double z = (grid[k] - mean) / sd;
    cdf[k] = -0.5 * z * z;  // log density for now
    peak = std::max(peak, cdf[k]);
  }
  double mass = 0.0;
  double previous = std::exp(cdf[0] - peak);
  cdf[0] = 0.0;
  for (int k = 1; k < points; ++k) {
    const double current = std::exp(cdf[k] - peak);
    mass += 0.5 * step * (previous + current);
    cdf[k] = mass;
    previous = current;
  }
  return [grid, cdf, mass, lo, hi, step](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const std::size_t cell = std::min(
        cdf.size() - 2, static_cast<std::size_t>((x - grid[0]) / step));
    const double frac = (x - grid[cell]) / step;
    return (cdf[cell] + frac * (cdf[cell + 1] - cdf[cell])) / mass;
  };
}

TEST_CASE("enormous sd flattens to uniform on [0, 1]") {
  const auto draws = draw(0.5, 1e6, 0.0, 1.0, 100000, 21);
  const double ks = testing::ks_distance(draws, [](double x) { return x; });
  CHECK(ks < 0.01);
}

TEST_CASE("tiny sd concentrates at the mean") {
  for (double x : draw(0.5, 1e-6, 0.0, 1.0, 10000, 22)) {
    CHECK(std::fabs(x - 0.5) < 1e-5);
  }
}

TEST_CASE("mean 50 sd below the support still samples exactly") {
  const auto draws = draw(-50.0, 1.0, 0.0, 1.0, 100000, 23);
  for (double x : draws) {
    CHECK(std::isfinite(x));
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  const double ks =
      testing::ks_distance(draws, conditioned_cdf(-50.0, 1.0, 0.0, 1.0, 20001));
  CHECK(ks < 0.01);
}

TEST_CASE("central interval matches the closed-form conditioned CDF") {
  const double mean = 0.3;
  const double sd = 0.8;
  const auto draws = draw(mean, sd, 0.0, 1.0, 100000, 24);
  const double p_lo = standard_normal_cdf((0.0 - mean) / sd);
  const double p_hi = standard_normal_cdf((1.0 - mean) / sd);
  const double ks = testing::ks_distance(draws, [&](double x) {
    return (standard_normal_cdf((x - mean) / sd) - p_lo) / (p_hi - p_lo);
  });
  CHECK(ks < 0.01);
}

TEST_CASE("upper-tail branch agrees with the oracle on both sides") {
  const auto upper = draw(0.0, 1.0, 2.0, 4.0, 100000, 25);
  CHECK(testing::ks_distance(upper, conditioned_cdf(0.0, 1.0, 2.0, 4.0, 20001)) <
        0.01);
  const auto lower = draw(0.0, 1.0, -4.0, -2.0, 100000, 26);
  CHECK(testing::ks_distance(lower, conditioned_cdf(0.0, 1.0, -4.0, -2.0, 20001)) <
        0.01);
}

TEST_CASE("domain errors") {
  RandomSource rng(1);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, 0.0, 0.0, 1.0, rng),
                  std::domain_error);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, -1.0, 0.0, 1.0, rng),
                  std::domain_error);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, 1.0, 1.0, 1.0, rng),
                  std::domain_error);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, 1.0, 2.0, 1.0, rng),
                  std::domain_error);
}

}  // namespace
}  // namespace dpsurvey
