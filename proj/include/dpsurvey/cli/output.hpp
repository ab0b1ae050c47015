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

#ifndef DPSURVEY_CLI_OUTPUT_HPP_
#define DPSURVEY_CLI_OUTPUT_HPP_

#include <optional>
#include <ostream>
#include <string>

#include "dpsurvey/cli/config.hpp"
#include "dpsurvey/experiments.hpp"
#include "dpsurvey/releases.hpp"
#include "dpsurvey/sample.hpp"

namespace dpsurvey::cli {

// Deterministic serialization, byte-identical across runs for equal inputs.
// Numbers carry 17 significant digits so every double round-trips exactly;
// that precision contract is why this is a hand-rolled emitter.
std::string format_number(double value);
std::string json_escape(const std::string& text);

// Confidential intermediates attached only under --unsafe-debug, which also
// stamps "dp": false on the output.
struct DebugInfo {
  double theta_w = 0.0;
  double theta_0 = 0.0;
  double awd = 0.0;
  double lambda_star = 0.0;
};

std::string release_json(const RunConfig& config, const DpMeanRelease& release,
                         const std::optional<DpIntervalRelease>& interval,
                         const std::optional<DebugInfo>& debug);
std::string release_csv(const RunConfig& config, const DpMeanRelease& release,
                        const std::optional<DpIntervalRelease>& interval,
                        const std::optional<DebugInfo>& debug);

// Tables: CSV with `# key=value` comment lines echoing the configuration,
// then a header row; or a JSON object {config_echo, columns, rows}.
void write_table_csv(std::ostream& out, const RunConfig& config, const Table& table);
void write_table_json(std::ostream& out, const RunConfig& config, const Table& table);

// Machine-readable error object for stderr.
std::string error_json(const std::string& type, const std::string& message,
                       std::int64_t row = -1);

}  // namespace dpsurvey::cli

#endif  // DPSURVEY_CLI_OUTPUT_HPP_
