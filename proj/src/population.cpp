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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dpsurvey/normal.hpp"

namespace dpsurvey {
namespace {

// Stream keys for the generator's internal draws.
constexpr std::uint64_t kLatentStream = 1;
constexpr std::uint64_t kResponseNoiseStream = 2;
constexpr std::uint64_t kBernoulliStream = 3;

// Income model behind the psid-like variables. The cube root of a log-normal
// income is clamped to [0, kIncomeCubeRootCap]; the poverty flag marks the
// bottom kPovertyRate of realized incomes.
constexpr double kIncomeLogMean = 10.8;
constexpr double kIncomeLogSd = 0.9;
constexpr double kIncomeCubeRootCap = 150.0;
constexpr double kPovertyRate = 0.15;

Eigen::VectorXd standard_normal_vector(Eigen::Index n, RandomSource rng) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z[i] = rng.normal();
  }
  return z;
}

Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return v[a] < v[b]; });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) {
      ranks[order[k]] = shared_rank;
    }
    i = j + 1;
  }
  return ranks;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double ma = a.mean();
  const double mb = b.mean();
  const Eigen::ArrayXd da = a.array() - ma;
  const Eigen::ArrayXd db = b.array() - mb;
  const double denom = std::sqrt(da.square().sum() * db.square().sum());
  if (denom == 0.0) {
    throw std::domain_error("correlation undefined for a constant vector");
  }
  return (da * db).sum() / denom;
}

// Scales pi proportional to exp(-log_sigma * z) so the clamped probabilities
// sum to the expected sample size. Monotone in the scale factor, solved by
// bisection.
Eigen::VectorXd solve_inclusion_probs(const Eigen::VectorXd& z,
                                      const WeightModel& model) {
  const Eigen::Index n = z.size();
  const double pi_lo = 1.0 / model.weight_ceiling;
  const double pi_hi = std::min(1.0, 1.0 / model.weight_floor);
  Eigen::ArrayXd shape(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    shape[i] = std::exp(-model.log_sigma * z[i]);
  }
  const auto total_at = [&](double c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      total += std::clamp(c * shape[i], pi_lo, pi_hi);
    }
    return total;
  };
  const double target = model.expected_sample_size;
  if (target < static_cast<double>(n) * pi_lo ||
      target > static_cast<double>(n) * pi_hi) {
    throw std::domain_error(
        "WeightModel: expected sample size unreachable inside the weight bounds");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (total_at(hi) < target) hi *= 2.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (total_at(mid) < target ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);
  Eigen::VectorXd pi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    pi[i] = std::clamp(c * shape[i], pi_lo, pi_hi);
  }
  return pi;
}

Eigen::VectorXd mixed_latent(const Eigen::VectorXd& z,
                             const Eigen::VectorXd& eps, double alpha) {
  return alpha * z + std::sqrt(std::max(0.0, 1.0 - alpha * alpha)) * eps;
}

// Finds the mixing coefficient so the realized Spearman correlation between
// the weights (monotone in z) and the mixed latent hits the target.
double solve_mixing(const Eigen::VectorXd& z, const Eigen::VectorXd& eps,
                    const Eigen::VectorXd& weights, double target_corr) {
  const Eigen::VectorXd weight_ranks = average_ranks(weights);
  const auto corr_at = [&](double alpha) {
    return pearson(weight_ranks, average_ranks(mixed_latent(z, eps, alpha)));
  };
  double lo = -0.9999;
  double hi = 0.9999;
  if (target_corr <= corr_at(lo) || target_corr >= corr_at(hi)) {
    throw std::domain_error(
        "PopulationSpec: target_corr infeasible for this weight model");
  }
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (corr_at(mid) < target_corr ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double kumaraswamy_quantile(double u, double a, double b) {
  return std::pow(1.0 - std::pow(1.0 - u, 1.0 / b), 1.0 / a);
}

}  // namespace

void PopulationSpec::validate() const {
  if (pop_size < 1) {
    throw std::invalid_argument("PopulationSpec: pop_size must be positive");
  }
  if (!(weights.expected_sample_size > 0.0 &&
        weights.expected_sample_size <= static_cast<double>(pop_size))) {
    throw std::invalid_argument(
        "PopulationSpec: expected sample size must lie in (0, pop_size]");
  }
  if (!(weights.log_sigma >= 0.0)) {
    throw std::invalid_argument("PopulationSpec: log_sigma must be nonnegative");
  }
  if (!(1.0 <= weights.weight_floor &&
        weights.weight_floor <= weights.weight_ceiling)) {
    throw std::invalid_argument(
        "PopulationSpec: requires 1 <= weight_floor <= weight_ceiling");
  }
  if (target_corr != 0.0 && weights.log_sigma == 0.0) {
    throw std::domain_error(
        "PopulationSpec: nonzero target_corr needs an informative weight model");
  }
  if (!(target_corr > -1.0 && target_corr < 1.0)) {
    throw std::invalid_argument("PopulationSpec: target_corr must lie in (-1, 1)");
  }
  if (response.kind == ResponseModel::Kind::kBinary &&
      !(response.p >= 0.0 && response.p <= 1.0)) {
    throw std::invalid_argument("PopulationSpec: binary p must lie in [0, 1]");
  }
  if (response.kind == ResponseModel::Kind::kBoundedContinuous &&
      !(response.shape_a > 0.0 && response.shape_b > 0.0 && response.scale > 0.0)) {
    throw std::invalid_argument(
        "PopulationSpec: continuous shapes and scale must be positive");
  }
}

const ResponseVariable& Population::variable(std::string_view name) const {
  for (const ResponseVariable& var : variables) {
    if (var.name == name) return var;
  }
  throw std::invalid_argument("Population: no variable named " + std::string(name));
}

double Population::population_mean(std::size_t variable_index) const {
  return variables.at(variable_index).values.mean();
}

Population generate_population(const PopulationSpec& spec,
                               const RandomSource& rng) {
  spec.validate();
  const Eigen::Index n = static_cast<Eigen::Index>(spec.pop_size);

  const Eigen::VectorXd z = standard_normal_vector(n, rng.child(kLatentStream));
  const Eigen::VectorXd eps =
      standard_normal_vector(n, rng.child(kResponseNoiseStream));

  Population population;
  population.size = spec.pop_size;
  population.inclusion_prob = solve_inclusion_probs(z, spec.weights);

  Eigen::VectorXd weights(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    weights[i] = 1.0 / population.inclusion_prob[i];
  }
  double alpha = 0.0;
  if (spec.target_corr != 0.0) {
    alpha = solve_mixing(z, eps, weights, spec.target_corr);
  }
  const Eigen::VectorXd latent = mixed_latent(z, eps, alpha);
  const Bounds weight_bounds{0.0, 1.0, spec.weights.weight_floor,
                             spec.weights.weight_ceiling};

  switch (spec.response.kind) {
    case ResponseModel::Kind::kBinary: {
      // 1 on the upper p-tail of the latent keeps corr(w, y) >= 0 for
      // positive mixing.
      const double cut = standard_normal_quantile(
          std::clamp(1.0 - spec.response.p, 1e-15, 1.0 - 1e-15));
      Eigen::VectorXd values(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        values[i] = latent[i] > cut ? 1.0 : 0.0;
      }
      Bounds bounds = weight_bounds;
      bounds.y_lo = 0.0;
      bounds.y_hi = 1.0;
      population.variables.push_back({"y", std::move(values), bounds});
      break;
    }
    case ResponseModel::Kind::kBoundedContinuous: {
      Eigen::VectorXd values(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double u = standard_normal_cdf(latent[i]);
        values[i] = spec.response.scale *
                    kumaraswamy_quantile(u, spec.response.shape_a,
                                         spec.response.shape_b);
      }
      Bounds bounds = weight_bounds;
      bounds.y_lo = 0.0;
      bounds.y_hi = spec.response.scale;
      population.variables.push_back({"y", std::move(values), bounds});
      break;
    }
    case ResponseModel::Kind::kPsidLike: {
      Eigen::VectorXd income(n);
      Eigen::VectorXd inc3(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        income[i] = std::exp(kIncomeLogMean + kIncomeLogSd * latent[i]);
        inc3[i] = std::min(std::cbrt(income[i]), kIncomeCubeRootCap);
      }
      // Poverty line at a fixed rate of the realized income distribution.
      Eigen::VectorXd sorted = income;
      const Eigen::Index cut_index =
          std::min<Eigen::Index>(n - 1, static_cast<Eigen::Index>(
                                            kPovertyRate * static_cast<double>(n)));
      std::nth_element(sorted.data(), sorted.data() + cut_index,
                       sorted.data() + n);
      const double poverty_line = sorted[cut_index];
      Eigen::VectorXd pov(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        pov[i] = income[i] < poverty_line ? 1.0 : 0.0;
      }
      RandomSource bern_rng = rng.child(kBernoulliStream);
      Eigen::VectorXd bern(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        bern[i] = bern_rng.bernoulli(0.5) ? 1.0 : 0.0;
      }
      Bounds inc3_bounds = weight_bounds;
      inc3_bounds.y_lo = 0.0;
      inc3_bounds.y_hi = kIncomeCubeRootCap;
      Bounds unit_bounds = weight_bounds;
      unit_bounds.y_lo = 0.0;
      unit_bounds.y_hi = 1.0;
      population.variables.push_back({"inc3", std::move(inc3), inc3_bounds});
      population.variables.push_back({"pov", std::move(pov), unit_bounds});
      population.variables.push_back({"bern", std::move(bern), unit_bounds});
      break;
    }
  }
  return population;
}

SurveySample poisson_sample(const Population& population,
                            std::size_t variable_index, RandomSource& rng,
                            int* resamples) {
  const ResponseVariable& variable = population.variables.at(variable_index);
  const Eigen::Index n = population.inclusion_prob.size();
  std::vector<Eigen::Index> included;
  included.reserve(static_cast<std::size_t>(population.inclusion_prob.sum()) + 64);
  int retries = 0;
  for (;;) {
    included.clear();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (rng.uniform() < population.inclusion_prob[i]) {
        included.push_back(i);
      }
    }
    if (!included.empty()) break;
    ++retries;
    if (retries > 1000000) {
      throw std::runtime_error("poisson_sample: cannot realize a nonempty sample");
    }
  }
  if (resamples != nullptr) {
    *resamples += retries;
  }
  SurveySample sample;
  sample.population_size = population.size;
  sample.bounds = variable.bounds;
  const Eigen::Index m = static_cast<Eigen::Index>(included.size());
  sample.y.resize(m);
  sample.w.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    sample.y[k] = variable.values[included[static_cast<std::size_t>(k)]];
    sample.w[k] = 1.0 / population.inclusion_prob[included[static_cast<std::size_t>(k)]];
  }
  return sample;
}

double spearman_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return pearson(average_ranks(a), average_ranks(b));
}

}  // namespace dpsurvey
