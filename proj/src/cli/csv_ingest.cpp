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

#include "dpsurvey/cli/csv_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <vector>

#include "dpsurvey/cli/config.hpp"

namespace dpsurvey::cli {
namespace {

std::string strip(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.pop_back();
  }
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) {
    ++start;
  }
  return line.substr(start);
}

double parse_field(const std::string& field, std::int64_t row, const char* column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("non-numeric " + std::string(column) + " field '" +
                              field + "' at row " + std::to_string(row),
                          row);
  }
  return value;
}

}  // namespace

SurveySample ingest_csv(std::istream& in, const Bounds& bounds,
                        std::int64_t pop_size, bool clip,
                        std::int64_t* clipped_rows) {
  bounds.validate();
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("empty input: missing 'y,w' header");
  }
  // Tolerate a UTF-8 byte-order mark at the very start.
  if (line.size() >= 3 && line[0] == '\xef' && line[1] == '\xbb' && line[2] == '\xbf') {
    line.erase(0, 3);
  }
  if (strip(line) != "y,w") {
    throw ValidationError("expected header 'y,w', got '" + strip(line) + "'");
  }

  std::vector<double> ys;
  std::vector<double> ws;
  std::int64_t clipped = 0;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    ++row;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ValidationError("expected exactly two columns at row " +
                                std::to_string(row),
                            row);
    }
    double y = parse_field(line.substr(0, comma), row, "y");
    double w = parse_field(line.substr(comma + 1), row, "w");
    const bool inside = y >= bounds.y_lo && y <= bounds.y_hi &&
                        w >= bounds.w_lo && w <= bounds.w_hi;
    if (!inside) {
      if (!clip) {
        throw ValidationError("value outside bounds at row " + std::to_string(row) +
                                  " (pass --clip to clamp)",
                              row);
      }
      y = std::clamp(y, bounds.y_lo, bounds.y_hi);
      w = std::clamp(w, bounds.w_lo, bounds.w_hi);
      ++clipped;
    }
    ys.push_back(y);
    ws.push_back(w);
  }
  if (ys.empty()) {
    throw ValidationError("no records");
  }
  if (static_cast<std::int64_t>(ys.size()) > pop_size) {
    throw ValidationError("sample size " + std::to_string(ys.size()) +
                          " exceeds population size " + std::to_string(pop_size));
  }
  if (clipped_rows != nullptr) {
    *clipped_rows = clipped;
  }

  SurveySample sample;
  sample.y = Eigen::Map<const Eigen::VectorXd>(ys.data(),
                                               static_cast<Eigen::Index>(ys.size()));
  sample.w = Eigen::Map<const Eigen::VectorXd>(ws.data(),
                                               static_cast<Eigen::Index>(ws.size()));
  sample.population_size = pop_size;
  sample.bounds = bounds;
  try {
    sample.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  return sample;
}

SurveySample ingest_csv_file(const std::string& path, const Bounds& bounds,
                             std::int64_t pop_size, bool clip,
                             std::int64_t* clipped_rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open input file '" + path + "'");
  }
  return ingest_csv(in, bounds, pop_size, clip, clipped_rows);
}

}  // namespace dpsurvey::cli
