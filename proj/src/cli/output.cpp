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

#include "dpsurvey/cli/output.hpp"

#include <cstdio>

namespace dpsurvey::cli {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string json_escape(const std::string& text) {
  std::string escaped;
  escaped.reserve(text.size() + 8);
  for (char c : text) {
    switch (c) {
      case '"': escaped += "\\\""; break;
      case '\\': escaped += "\\\\"; break;
      case '\n': escaped += "\\n"; break;
      case '\r': escaped += "\\r"; break;
      case '\t': escaped += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
          escaped += buffer;
        } else {
          escaped += c;
        }
    }
  }
  return escaped;
}

namespace {

std::string config_echo_json(const RunConfig& config) {
  std::string json = "{";
  bool first = true;
  for (const auto& [key, value] : config.echo()) {
    if (!first) json += ", ";
    first = false;
    json += "\"" + json_escape(key) + "\": \"" + json_escape(value) + "\"";
  }
  json += "}";
  return json;
}

// Flat key/value list shared by the JSON and CSV release writers; keeps the
// two formats carrying identical fields in identical order.
struct Field {
  std::string key;
  std::string value;   // preformatted
  bool quoted = false;
};

std::vector<Field> release_fields(const RunConfig& config,
                                  const DpMeanRelease& release,
                                  const std::optional<DpIntervalRelease>& interval,
                                  const std::optional<DebugInfo>& debug) {
  std::vector<Field> fields;
  if (debug.has_value()) {
    fields.push_back({"dp", "false", false});
  }
  fields.push_back({"lambda_hat", format_number(release.lambda_hat)});
  fields.push_back({"theta_dp", format_number(release.theta_dp)});
  fields.push_back({"noise_sd", format_number(release.noise_sd)});
  if (release.plugin_adjusted.has_value()) {
    fields.push_back({"plugin_adjusted", format_number(*release.plugin_adjusted)});
  }
  if (interval.has_value()) {
    fields.push_back({"v_dp", format_number(interval->v_dp)});
    fields.push_back({"lower", format_number(interval->lower)});
    fields.push_back({"upper", format_number(interval->upper)});
    fields.push_back({"alpha", format_number(interval->alpha)});
    fields.push_back({"alpha_v", format_number(interval->alpha_v)});
  }
  const double rho_spent =
      interval.has_value() ? interval->rho_spent : release.rho_spent;
  fields.push_back({"rho_spent", format_number(rho_spent)});
  fields.push_back({"seed", std::to_string(config.seed)});
  if (debug.has_value()) {
    fields.push_back({"debug_theta_w", format_number(debug->theta_w)});
    fields.push_back({"debug_theta_0", format_number(debug->theta_0)});
    fields.push_back({"debug_awd", format_number(debug->awd)});
    fields.push_back({"debug_lambda_star", format_number(debug->lambda_star)});
  }
  return fields;
}

}  // namespace

std::string release_json(const RunConfig& config, const DpMeanRelease& release,
                         const std::optional<DpIntervalRelease>& interval,
                         const std::optional<DebugInfo>& debug) {
  std::string json = "{";
  for (const Field& field : release_fields(config, release, interval, debug)) {
    json += "\"" + field.key + "\": " + field.value + ", ";
  }
  json += "\"config_echo\": " + config_echo_json(config) + "}\n";
  return json;
}

std::string release_csv(const RunConfig& config, const DpMeanRelease& release,
                        const std::optional<DpIntervalRelease>& interval,
                        const std::optional<DebugInfo>& debug) {
  std::string header;
  std::string row;
  for (const Field& field : release_fields(config, release, interval, debug)) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += field.key;
    row += field.value;
  }
  for (const auto& [key, value] : config.echo()) {
    header += ",config_" + key;
    row += ',' + value;
  }
  return header + "\n" + row + "\n";
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    return format_number(*d);
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(cell);
}

}  // namespace

void write_table_csv(std::ostream& out, const RunConfig& config, const Table& table) {
  for (const auto& [key, value] : config.echo()) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << cell_text(row[c]);
    }
    out << "\n";
  }
}

void write_table_json(std::ostream& out, const RunConfig& config, const Table& table) {
  out << "{\"config_echo\": " << config_echo_json(config) << ", \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ", ";
    out << '"' << json_escape(table.columns[c]) << '"';
  }
  out << "], \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (r > 0) out << ", ";
    out << '[';
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ", ";
      if (std::holds_alternative<std::string>(row[c])) {
        out << '"' << json_escape(std::get<std::string>(row[c])) << '"';
      } else {
        out << cell_text(row[c]);
      }
    }
    out << ']';
  }
  out << "]}\n";
}

std::string error_json(const std::string& type, const std::string& message,
                       std::int64_t row) {
  std::string json = "{\"error\": {\"type\": \"" + json_escape(type) +
                     "\", \"message\": \"" + json_escape(message) + "\"";
  if (row >= 0) {
    json += ", \"row\": " + std::to_string(row);
  }
  json += "}}\n";
  return json;
}

}  // namespace dpsurvey::cli
