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

#include "dpsurvey/cli/config.hpp"

#include <charconv>

#include "dpsurvey/cli/output.hpp"

namespace dpsurvey::cli {

DiscrepancySignPolicy RunConfig::sign_policy() const {
  DiscrepancySignPolicy policy;
  if (sign == "pos") {
    policy.mode = DiscrepancySignPolicy::Mode::kPublicPositive;
  } else if (sign == "neg") {
    policy.mode = DiscrepancySignPolicy::Mode::kPublicNegative;
  } else if (sign == "unknown") {
    policy.mode = DiscrepancySignPolicy::Mode::kUnknown;
  } else if (sign.rfind("dp:", 0) == 0) {
    policy.mode = DiscrepancySignPolicy::Mode::kDpEstimated;
    const std::string budget = sign.substr(3);
    const char* first = budget.data();
    const char* last = first + budget.size();
    auto [ptr, ec] = std::from_chars(first, last, policy.rho_s);
    if (ec != std::errc() || ptr != last || !(policy.rho_s > 0.0)) {
      throw ValidationError("--sign dp:<rho> needs a positive budget, got '" +
                            sign + "'");
    }
  } else {
    throw ValidationError("--sign must be pos, neg, unknown, or dp:<rho>, got '" +
                          sign + "'");
  }
  return policy;
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += format_number(values[i]);
  }
  return joined;
}

std::string join_ints(const std::vector<std::int64_t>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += std::to_string(values[i]);
  }
  return joined;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> entries;
  entries.emplace_back("command", command);
  const bool release_command = command == "estimate" || command == "interval";
  if (release_command) {
    entries.emplace_back("input", input);
    entries.emplace_back("pop_size", std::to_string(pop_size));
    entries.emplace_back("ly", format_number(ly));
    entries.emplace_back("uy", format_number(uy));
    entries.emplace_back("lw", format_number(lw));
    entries.emplace_back("uw", format_number(uw));
    entries.emplace_back("rho1", format_number(rho1));
    entries.emplace_back("rho2", format_number(rho2));
    if (command == "interval") {
      entries.emplace_back("rho3", format_number(rho3));
      entries.emplace_back("alpha", format_number(alpha));
      entries.emplace_back("alpha_v", format_number(alpha_v));
    }
    entries.emplace_back("sign", sign);
    entries.emplace_back("clip", clip ? "true" : "false");
    if (clipped_rows >= 0) {
      entries.emplace_back("clipped_rows", std::to_string(clipped_rows));
    }
  } else if (command == "feasibility") {
    entries.emplace_back("pop_size", std::to_string(pop_size));
    entries.emplace_back("uy", format_number(uy));
    entries.emplace_back("n_grid", join_ints(n_grid));
    entries.emplace_back("ratio_grid", join_doubles(ratio_grid));
    entries.emplace_back("rho_grid", join_doubles(rho2_grid));
  } else {
    entries.emplace_back("pop_size", std::to_string(pop_size));
    entries.emplace_back("expected_n", format_number(expected_n));
    entries.emplace_back("uw", format_number(uw));
    entries.emplace_back("target_corr", format_number(target_corr));
    entries.emplace_back("replicates", std::to_string(replicates));
    if (command == "simulate") {
      entries.emplace_back("experiment", experiment);
      entries.emplace_back("rho1_grid", join_doubles(rho1_grid));
      entries.emplace_back("rho2_grid", join_doubles(rho2_grid));
      entries.emplace_back("rho3_grid", join_doubles(rho3_grid));
      entries.emplace_back("alpha", format_number(alpha));
      entries.emplace_back("alpha_v_grid", join_doubles(alpha_v_grid));
    } else {
      entries.emplace_back("rho2_grid", join_doubles(rho2_grid));
      entries.emplace_back("lambda_steps", std::to_string(lambda_steps));
    }
  }
  entries.emplace_back("seed", std::to_string(seed));
  entries.emplace_back("format", format);
  entries.emplace_back("unsafe_debug", unsafe_debug ? "true" : "false");
  return entries;
}

}  // namespace dpsurvey::cli
