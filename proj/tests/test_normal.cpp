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

#include "dpsurvey/normal.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

namespace dpsurvey {
namespace {

// Independent oracle: invert the erfc-based CDF in long double by bisection.
long double quantile_by_bisection(long double p) {
  long double lo = -40.0L;
  long double hi = 40.0L;
  for (int iter = 0; iter < 200; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    const long double cdf = 0.5L * erfcl(-mid / 1.41421356237309504880L);
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

TEST_CASE("quantile matches bisection oracle within 1e-9 on [1e-6, 0.5]") {
  for (double p = 1e-6; p <= 0.5; p *= 1.37) {
    const double expected = static_cast<double>(quantile_by_bisection(p));
    CHECK(std::fabs(standard_normal_quantile(p) - expected) < 1e-9);
  }
  CHECK(std::fabs(standard_normal_quantile(0.5)) < 1e-15);
}

TEST_CASE("quantile/cdf round trip across the support") {
  // Probabilities near 1 cannot carry tail precision in a double, so the
  // upper half round-trips through the tail representation.
  for (double x = -8.0; x <= 0.0; x += 0.25) {
    CHECK(standard_normal_quantile(standard_normal_cdf(x)) ==
          doctest::Approx(x).epsilon(1e-12));
  }
  for (double x = 0.25; x <= 8.0; x += 0.25) {
    CHECK(upper_quantile(standard_normal_tail(x)) ==
          doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("known critical values") {
  CHECK(upper_quantile(0.025) == doctest::Approx(1.9599639845400545).epsilon(1e-12));
  CHECK(upper_quantile(0.05) == doctest::Approx(1.6448536269514722).epsilon(1e-12));
  CHECK(upper_quantile(0.005) == doctest::Approx(2.5758293035489004).epsilon(1e-12));
  // Theorem-style alpha/4 split at alpha = 0.05.
  CHECK(upper_quantile(0.0125) == doctest::Approx(2.2414027276049454).epsilon(1e-12));
}

TEST_CASE("deep tail stays finite and monotone") {
  double previous = 0.0;
  for (double p = 1e-10; p > 1e-300; p *= 1e-10) {
    const double z = standard_normal_quantile(p);
    CHECK(std::isfinite(z));
    CHECK(z < previous);
    previous = z;
  }
  CHECK(standard_normal_tail(40.0) == 0.0);  // underflow, not NaN
  CHECK(standard_normal_tail(-40.0) == 1.0);
}

TEST_CASE("quantile rejects endpoints") {
  CHECK_THROWS_AS(standard_normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(standard_normal_quantile(1.0), std::domain_error);
}

}  // namespace
}  // namespace dpsurvey
