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

#ifndef DPSURVEY_CLI_COMMANDS_HPP_
#define DPSURVEY_CLI_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "dpsurvey/cli/config.hpp"

namespace dpsurvey::cli {

// Full command-line entry point, in-process so tests can drive it directly.
// args excludes the program name. Returns the exit code: 0 success,
// 2 validation error, 3 runtime/domain error; errors are written to err as a
// machine-readable JSON object.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Individual commands on a resolved configuration; each writes the complete
// command output. They throw (ValidationError or the library's domain
// errors); cli_main does the exit-code mapping.
void cmd_estimate(const RunConfig& config, std::ostream& out);
void cmd_interval(const RunConfig& config, std::ostream& out);
void cmd_feasibility(const RunConfig& config, std::ostream& out);
void cmd_mse_curve(const RunConfig& config, std::ostream& out);
void cmd_simulate(const RunConfig& config, std::ostream& out);

}  // namespace dpsurvey::cli

#endif  // DPSURVEY_CLI_COMMANDS_HPP_
