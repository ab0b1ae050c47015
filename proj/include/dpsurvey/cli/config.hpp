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

#ifndef DPSURVEY_CLI_CONFIG_HPP_
#define DPSURVEY_CLI_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpsurvey/releases.hpp"
#include "dpsurvey/sample.hpp"

namespace dpsurvey::cli {

// Fully resolved run configuration. Sources, in increasing precedence:
// defaults < DPSURVEY_SEED env (seed only) < config file (--config,
// flat key=value lines matching flag names) < command-line flags. Every
// command echoes the resolved configuration into its output so results are
// re-derivable from the output alone.
struct RunConfig {
  std::string command;
  std::string input;
  std::int64_t pop_size = 0;
  double ly = 0.0;
  double uy = 1.0;
  double lw = 1.0;
  double uw = 1.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  double alpha = 0.05;
  double alpha_v = 0.05;
  std::string sign = "unknown";  // pos | neg | unknown | dp:<rho>
  std::uint64_t seed = 0;
  bool clip = false;
  std::string format = "json";  // json | csv
  bool unsafe_debug = false;

  // Table commands.
  std::vector<double> rho1_grid;
  std::vector<double> rho2_grid;
  std::vector<double> rho3_grid;
  std::vector<double> alpha_v_grid;
  std::vector<std::int64_t> n_grid;
  std::vector<double> ratio_grid;
  double expected_n = 0.0;
  int replicates = 1000;
  int lambda_steps = 101;
  std::string experiment = "coverage";  // coverage | lambda | lambda-summary
  double target_corr = 0.14;

  // Filled by the ingest step when --clip is active; echoed into output.
  std::int64_t clipped_rows = -1;

  Bounds bounds() const { return Bounds{ly, uy, lw, uw}; }
  DiscrepancySignPolicy sign_policy() const;  // parses the sign string

  // Ordered key/value view of the effective configuration for echoing.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Raised for malformed input (flags, config files, CSV): exit code 2.
// Library domain errors keep their own types and map to exit code 3.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& message, std::int64_t row = -1)
      : std::runtime_error(message), row(row) {}
  std::int64_t row;  // first offending data row, 1-based; -1 when global
};

}  // namespace dpsurvey::cli

#endif  // DPSURVEY_CLI_CONFIG_HPP_
