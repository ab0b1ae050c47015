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

#ifndef DPSURVEY_CLI_CSV_INGEST_HPP_
#define DPSURVEY_CLI_CSV_INGEST_HPP_

#include <cstdint>
#include <istream>
#include <string>

#include "dpsurvey/sample.hpp"

namespace dpsurvey::cli {

// Reads a `y,w` CSV (UTF-8, LF or CRLF, decimal point, no quoting) into a
// validated SurveySample. Rows violating the bounds are rejected with their
// 1-based data row number unless clip is set, in which case values are
// clamped into bounds and the count is reported through *clipped_rows.
// Throws ValidationError on malformed input.
SurveySample ingest_csv(std::istream& in, const Bounds& bounds,
                        std::int64_t pop_size, bool clip,
                        std::int64_t* clipped_rows = nullptr);

SurveySample ingest_csv_file(const std::string& path, const Bounds& bounds,
                             std::int64_t pop_size, bool clip,
                             std::int64_t* clipped_rows = nullptr);

}  // namespace dpsurvey::cli

#endif  // DPSURVEY_CLI_CSV_INGEST_HPP_
