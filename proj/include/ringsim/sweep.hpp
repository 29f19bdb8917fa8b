/*
 * Copyright 2026 The ringsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ringsim {

enum class SweepMode {
  single_bus,
  langevin_compare,
  attenuation_chain,
  add_drop,
  homm_grid,
  critical_dip,
  entropy_grid,
};

enum class OutputFormat { csv, json };

SweepMode parse_mode(std::string_view name);
std::string mode_name(SweepMode mode);
OutputFormat parse_format(std::string_view name);
std::vector<std::string> mode_names();

/// Flat parameter document for one mode.  Ranges are [start, stop, count]
/// arrays, lists are arrays of numbers, everything else is a scalar.
struct SweepConfig {
  SweepMode mode = SweepMode::single_bus;
  nlohmann::json values = nlohmann::json::object();
};

nlohmann::json default_values(SweepMode mode);

/// Defaults, then the config file (if any), then each "key=value" override.
/// Override values are parsed as JSON and fall back to plain strings.
/// Unknown keys and out-of-domain values throw ConfigError naming the field.
SweepConfig load_config(SweepMode mode, const std::optional<std::string>& config_path,
                        const std::vector<std::string>& overrides);

void validate_config(const SweepConfig& config);

struct SweepTable {
  std::vector<std::string> columns;  // names carry units
  std::vector<std::vector<double>> rows;
  nlohmann::json summary = nlohmann::json::object();
};

SweepTable run_sweep(const SweepConfig& config, std::size_t workers);

/// CSV: "# config: <sorted JSON>", the header line, then one line per row.
std::string render_csv(const nlohmann::json& config_echo, const SweepTable& table);

/// {"config", "columns", "rows", "summary"}; non-finite cells become null.
std::string render_json(const nlohmann::json& config_echo, const SweepTable& table);

nlohmann::json config_echo(const SweepConfig& config);

/// Writes the whole string or throws IoError.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ringsim
