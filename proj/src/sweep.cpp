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

#include "ringsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "ringsim/add_drop.hpp"
#include "ringsim/attenuation.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/format.hpp"
#include "ringsim/hom.hpp"
#include "ringsim/single_bus.hpp"

namespace ringsim {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPhaseSlack = 1e-12;

enum class Kind { number, range, list, text, flag };

struct Field {
  Kind kind;
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool integer = false;
};

const std::map<std::string, Field>& schema(SweepMode mode) {
  static const Field unit{Kind::number, 0.0, 1.0};
  static const Field alpha{Kind::number, 0.0, 1.0, true};
  static const Field phase_range{Kind::range, -kPi - kPhaseSlack, kPi + kPhaseSlack};
  static const Field unit_range{Kind::range, 0.0, 1.0};
  static const Field alpha_list{Kind::list, 0.0, 1.0, true};
  static const Field positive{Kind::number, 0.0, kInf, true};
  static const Field finite{Kind::number};

  static const std::map<SweepMode, std::map<std::string, Field>> table{
      {SweepMode::single_bus,
       {{"tau", unit}, {"tau_phase", finite}, {"alpha", alpha}, {"theta", phase_range}}},
      {SweepMode::langevin_compare,
       {{"tau", {Kind::number, 0.0, 1.0, true}},
        {"tau_phase", finite},
        {"alpha", alpha},
        {"round_trip_time", positive},
        {"dtr", {Kind::range, 0.0, kPi + kPhaseSlack, true}},
        {"symmetric", {Kind::flag}}}},
      {SweepMode::attenuation_chain,
       {{"gamma", {Kind::number, 0.0, kInf}},
        {"length", positive},
        {"beta", finite},
        {"n", {Kind::range, 1.0, 1e9, false, true}}}},
      {SweepMode::add_drop,
       {{"tau", unit}, {"eta", unit}, {"alpha", alpha}, {"theta", phase_range}}},
      {SweepMode::homm_grid,
       {{"alpha", alpha},
        {"threshold", {Kind::number, 0.0, 1.0}},
        {"tau", unit_range},
        {"eta", unit_range},
        {"theta", phase_range},
        {"p11_route", {Kind::text}}}},
      {SweepMode::critical_dip,
       {{"tau", unit}, {"eta", unit}, {"alphas", alpha_list}, {"theta", phase_range}}},
      {SweepMode::entropy_grid,
       {{"alphas", alpha_list},
        {"tau", unit_range},
        {"eta", unit_range},
        {"theta", phase_range},
        {"levels", {Kind::list, 0.0, 1.0}}}},
  };
  return table.at(mode);
}

const std::map<std::string, SweepMode>& mode_table() {
  static const std::map<std::string, SweepMode> modes{
      {"single-bus", SweepMode::single_bus},
      {"langevin-compare", SweepMode::langevin_compare},
      {"attenuation-chain", SweepMode::attenuation_chain},
      {"add-drop", SweepMode::add_drop},
      {"homm-grid", SweepMode::homm_grid},
      {"critical-dip", SweepMode::critical_dip},
      {"entropy-grid", SweepMode::entropy_grid},
  };
  return modes;
}

void check_bounds(const std::string& key, const Field& field, double value) {
  if (!std::isfinite(value)) {
    throw ConfigError("field '" + key + "': value must be finite");
  }
  const bool below = field.lo_open ? value <= field.lo : value < field.lo;
  if (below || value > field.hi) {
    throw ConfigError("field '" + key + "': value " + format_double(value) +
                      " outside the allowed domain");
  }
  if (field.integer && value != std::floor(value)) {
    throw ConfigError("field '" + key + "': value must be an integer");
  }
}

void check_field(const std::string& key, const Field& field, const json& value) {
  switch (field.kind) {
    case Kind::number:
      if (!value.is_number()) throw ConfigError("field '" + key + "': expected a number");
      check_bounds(key, field, value.get<double>());
      break;
    case Kind::range: {
      if (!value.is_array() || value.size() != 3 || !value[0].is_number() ||
          !value[1].is_number() || !value[2].is_number()) {
        throw ConfigError("field '" + key + "': expected [start, stop, count]");
      }
      check_bounds(key, field, value[0].get<double>());
      check_bounds(key, field, value[1].get<double>());
      const double count = value[2].get<double>();
      if (!(count >= 1.0) || count != std::floor(count) || count > 1e8) {
        throw ConfigError("field '" + key + "': count must be an integer >= 1");
      }
      if (value[1].get<double>() < value[0].get<double>()) {
        throw ConfigError("field '" + key + "': stop must not be below start");
      }
      break;
    }
    case Kind::list:
      if (!value.is_array() || value.empty()) {
        throw ConfigError("field '" + key + "': expected a non-empty list of numbers");
      }
      for (const auto& item : value) {
        if (!item.is_number()) throw ConfigError("field '" + key + "': list items must be numbers");
        check_bounds(key, field, item.get<double>());
      }
      break;
    case Kind::text:
      if (!value.is_string()) throw ConfigError("field '" + key + "': expected a string");
      break;
    case Kind::flag:
      if (!value.is_boolean()) throw ConfigError("field '" + key + "': expected true or false");
      break;
  }
}

void merge(SweepConfig& config, const json& overrides, const std::string& origin) {
  const auto& fields = schema(config.mode);
  for (const auto& [key, value] : overrides.items()) {
    if (key == "mode") {
      if (!value.is_string() || value.get<std::string>() != mode_name(config.mode)) {
        throw ConfigError(origin + ": field 'mode' does not match the requested mode");
      }
      continue;
    }
    if (fields.find(key) == fields.end()) {
      throw ConfigError(origin + ": unknown field '" + key + "' for mode " +
                        mode_name(config.mode));
    }
    config.values[key] = value;
  }
}

double number(const SweepConfig& config, const char* key) {
  return config.values.at(key).get<double>();
}

GridAxis axis(const SweepConfig& config, const char* key) {
  const json& r = config.values.at(key);
  return {r[0].get<double>(), r[1].get<double>(), r[2].get<std::size_t>()};
}

std::vector<double> linear_values(const GridAxis& a) {
  std::vector<double> values(a.count);
  for (std::size_t i = 0; i < a.count; ++i) values[i] = a.at(i);
  return values;
}

std::vector<double> log_values(const GridAxis& a) {
  std::vector<double> values(a.count);
  const double lo = std::log(a.start);
  const double hi = std::log(a.stop);
  for (std::size_t i = 0; i < a.count; ++i) {
    if (a.count == 1) {
      values[i] = a.start;
    } else if (i + 1 == a.count) {
      values[i] = a.stop;
    } else {
      values[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.count - 1));
    }
  }
  return values;
}

std::vector<double> list(const SweepConfig& config, const char* key) {
  return config.values.at(key).get<std::vector<double>>();
}

SweepTable single_bus_sweep(const SweepConfig& config) {
  const CouplerParams coupler =
      CouplerParams::from_through(number(config, "tau"), number(config, "tau_phase"));
  const double alpha = number(config, "alpha");
  SweepTable table;
  table.columns = {"theta_rad", "transfer_re", "transfer_im", "through_power", "noise_power"};
  for (double theta : linear_values(axis(config, "theta"))) {
    try {
      const auto response = ovpa_transfer(coupler, RingParams::from_alpha(alpha, theta));
      table.rows.push_back({theta, response.transfer.real(), response.transfer.imag(),
                            std::norm(response.transfer), response.noise_power});
    } catch (const ResonantDivergenceError&) {
      table.rows.push_back({theta, kNaN, kNaN, kNaN, kNaN});
    }
  }
  return table;
}

SweepTable langevin_sweep(const SweepConfig& config) {
  const CouplerParams coupler =
      CouplerParams::from_through(number(config, "tau"), number(config, "tau_phase"));
  const RingParams ring = RingParams::from_alpha(number(config, "alpha"), 0.0);
  const double round_trip = number(config, "round_trip_time");

  const std::vector<double> magnitudes = log_values(axis(config, "dtr"));
  std::vector<double> detunings;
  if (config.values.at("symmetric").get<bool>()) {
    for (auto it = magnitudes.rbegin(); it != magnitudes.rend(); ++it) {
      detunings.push_back(-*it / round_trip);
    }
  }
  for (double m : magnitudes) detunings.push_back(m / round_trip);

  SweepTable table;
  table.columns = {"delta_rad_per_s", "delta_tr_rad", "p_ovpa", "p_langevin",
                   "relative_difference"};
  const auto rows = power_ratio_comparison(coupler, ring, round_trip, detunings);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : rows) {
    const double dtr = row.detuning * round_trip;
    table.rows.push_back({row.detuning, dtr, row.ovpa, row.langevin, row.relative_difference});
    const double residual = std::abs(row.ovpa - row.langevin);
    if (dtr >= 1e-4 * (1 - 1e-12) && dtr <= 1e-2 * (1 + 1e-12) && residual > 0.0) {
      xs.push_back(std::log(dtr));
      ys.push_back(std::log(residual));
    }
  }
  const LangevinRates rates =
      match_rates(coupler.through_magnitude(), ring.alpha(), round_trip);
  table.summary["gamma_c_per_s"] = rates.gamma_c;
  table.summary["gamma_int_per_s"] = rates.gamma_int;
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    table.summary["residual_loglog_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return table;
}

SweepTable attenuation_sweep(const SweepConfig& config) {
  const double gamma = number(config, "gamma");
  const double length = number(config, "length");
  const double beta = number(config, "beta");
  const double continuum = std::exp(-gamma * length);
  SweepTable table;
  table.columns = {"splitters", "chain_power", "continuum_power", "abs_difference",
                   "commutator_coefficient"};
  for (double n : log_values(axis(config, "n"))) {
    const auto splitters = static_cast<std::size_t>(std::llround(n));
    const BeamSplitterChain chain{splitters, gamma, length, beta};
    try {
      const double power = std::norm(discrete_transmission(chain));
      table.rows.push_back({static_cast<double>(splitters), power, continuum,
                            std::abs(power - continuum), discrete_commutator_coefficient(chain)});
    } catch (const ReflectivityRangeError&) {
      table.rows.push_back({static_cast<double>(splitters), kNaN, continuum, kNaN, kNaN});
    }
  }
  const auto coefficient = continuum_commutator_coefficient(gamma, length);
  table.summary["continuum_commutator_analytic"] = coefficient.analytic;
  table.summary["continuum_commutator_quadrature"] = coefficient.quadrature;
  return table;
}

SweepTable add_drop_sweep(const SweepConfig& config) {
  const double tau = number(config, "tau");
  const double eta = number(config, "eta");
  const double alpha = number(config, "alpha");
  SweepTable table;
  table.columns = {"theta_rad",   "power_a_to_c", "power_b_to_c", "power_a_to_d",
                   "power_b_to_d", "comm_cc",      "comm_dd",      "comm_cd_re",
                   "comm_cd_im"};
  for (double theta : linear_values(axis(config, "theta"))) {
    try {
      const TransferMatrix2 m = transfer_matrix(make_add_drop(tau, eta, alpha, theta));
      const NoiseCommutatorMatrix c = noise_commutators(m);
      table.rows.push_back({theta, std::norm(m.a_to_c()), std::norm(m.b_to_c()),
                            std::norm(m.a_to_d()), std::norm(m.b_to_d()), c.comm(0, 0).real(),
                            c.comm(1, 1).real(), c.comm(0, 1).real(), c.comm(0, 1).imag()});
    } catch (const Error&) {
      std::vector<double> row(table.columns.size(), kNaN);
      row[0] = theta;
      table.rows.push_back(row);
    }
  }
  return table;
}

CouplingGrid coupling_grid(const SweepConfig& config) {
  return {axis(config, "tau"), axis(config, "eta"), axis(config, "theta")};
}

SweepTable homm_sweep(const SweepConfig& config, std::size_t workers) {
  const std::string route_name = config.values.at("p11_route").get<std::string>();
  const P11Route route = route_name == "closed" ? P11Route::closed : P11Route::state;
  const HommRegion region = homm_region(coupling_grid(config), number(config, "alpha"),
                                        number(config, "threshold"), route, workers);
  SweepTable table;
  table.columns = {"tau", "eta", "theta_rad", "p11"};
  table.rows.reserve(region.points.size());
  for (const auto& p : region.points) table.rows.push_back({p.tau, p.eta, p.theta, p.value});
  table.summary["grid_points"] = region.grid_points;
  table.summary["undefined_points"] = region.undefined_points;
  table.summary["region_points"] = region.points.size();
  table.summary["fraction"] = region.fraction();
  return table;
}

template <typename F>
double or_nan(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return kNaN;
  }
}

SweepTable critical_dip_sweep(const SweepConfig& config) {
  const double tau = number(config, "tau");
  const double eta = number(config, "eta");
  SweepTable table;
  table.columns = {"alpha", "theta_rad", "p11_state", "p11_closed", "coincidence_probability"};
  const auto thetas = linear_values(axis(config, "theta"));
  for (double alpha : list(config, "alphas")) {
    for (double theta : thetas) {
      const AddDropParams params = make_add_drop(tau, eta, alpha, theta);
      table.rows.push_back({alpha, theta, or_nan([&] { return p11_from_state(params); }),
                            or_nan([&] { return p11_closed(params); }),
                            or_nan([&] { return coincidence_probability(params); })});
    }
  }
  return table;
}

SweepTable entropy_sweep(const SweepConfig& config, std::size_t workers) {
  const CouplingGrid grid = coupling_grid(config);
  const std::vector<double> levels = list(config, "levels");
  SweepTable table;
  table.columns = {"alpha", "tau", "eta", "theta_rad", "s1_bits"};
  json level_sets = json::array();
  const std::size_t per_tau = grid.eta.count * grid.theta.count;
  for (double alpha : list(config, "alphas")) {
    const auto values = entropy_grid(grid, alpha, workers);
    for (std::size_t index = 0; index < values.size(); ++index) {
      table.rows.push_back({alpha, grid.tau.at(index / per_tau),
                            grid.eta.at((index / grid.theta.count) % grid.eta.count),
                            grid.theta.at(index % grid.theta.count),
                            values[index] ? *values[index] : kNaN});
    }
    const auto sets = entropy_level_sets(values, alpha, levels);
    level_sets.push_back({{"alpha", alpha},
                          {"defined_points", sets.defined_points},
                          {"undefined_points", sets.undefined_points},
                          {"levels", sets.levels},
                          {"fractions", sets.fractions}});
  }
  table.summary["level_sets"] = level_sets;
  return table;
}

}  // namespace

SweepMode parse_mode(std::string_view name) {
  const auto& modes = mode_table();
  const auto it = modes.find(std::string(name));
  if (it == modes.end()) throw ConfigError("unknown mode '" + std::string(name) + "'");
  return it->second;
}

std::string mode_name(SweepMode mode) {
  for (const auto& [name, value] : mode_table()) {
    if (value == mode) return name;
  }
  return "unknown";
}

std::vector<std::string> mode_names() {
  std::vector<std::string> names;
  for (const auto& [name, value] : mode_table()) names.push_back(name);
  return names;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(name) + "' (csv or json)");
}

json default_values(SweepMode mode) {
  const double pi = kPi;
  switch (mode) {
    case SweepMode::single_bus:
      return {{"tau", 0.8}, {"tau_phase", 0.0}, {"alpha", 0.9}, {"theta", {-pi, pi, 201}}};
    case SweepMode::langevin_compare:
      return {{"tau", 0.99},
              {"tau_phase", 0.0},
              {"alpha", 0.99},
              {"round_trip_time", 1e-12},
              {"dtr", {1e-4, pi, 41}},
              {"symmetric", true}};
    case SweepMode::attenuation_chain:
      return {{"gamma", 1.0}, {"length", 1.0}, {"beta", 0.0}, {"n", {100, 1000000, 5}}};
    case SweepMode::add_drop:
      return {{"tau", 0.7}, {"eta", 0.7}, {"alpha", 0.95}, {"theta", {-pi, pi, 201}}};
    case SweepMode::homm_grid:
      return {{"alpha", 1.0},
              {"threshold", 1e-3},
              {"tau", {0.0, 1.0, 101}},
              {"eta", {0.0, 1.0, 101}},
              {"theta", {-pi, pi, 201}},
              {"p11_route", "state"}};
    case SweepMode::critical_dip: {
      const double s = std::sqrt(0.5);
      return {{"tau", s},
              {"eta", s},
              {"alphas", {1.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.5}},
              {"theta", {-pi, pi, 401}}};
    }
    case SweepMode::entropy_grid:
      return {{"alphas", {0.95, 0.75, 0.5, 0.25}},
              {"tau", {0.0, 1.0, 21}},
              {"eta", {0.0, 1.0, 21}},
              {"theta", {-pi, pi, 41}},
              {"levels", {0.99, 0.95, 0.75, 0.5, 0.25, 0.1}}};
  }
  throw ConfigError("unknown mode");
}

void validate_config(const SweepConfig& config) {
  const auto& fields = schema(config.mode);
  for (const auto& [key, field] : fields) {
    if (!config.values.contains(key)) throw ConfigError("missing field '" + key + "'");
    check_field(key, field, config.values.at(key));
  }
  if (config.mode == SweepMode::homm_grid) {
    const auto route = config.values.at("p11_route").get<std::string>();
    if (route != "state" && route != "closed") {
      throw ConfigError("field 'p11_route': expected \"state\" or \"closed\"");
    }
  }
}

SweepConfig load_config(SweepMode mode, const std::optional<std::string>& config_path,
                        const std::vector<std::string>& overrides) {
  SweepConfig config{mode, default_values(mode)};
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw IoError("cannot read config file '" + *config_path + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file '" + *config_path + "': " + e.what());
    }
    if (!file.is_object()) {
      throw ConfigError("config file '" + *config_path + "' must hold a JSON object");
    }
    merge(config, file, "config file '" + *config_path + "'");
  }
  for (const auto& assignment : overrides) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
      value = json::parse(text);
    } catch (const json::parse_error&) {
      value = text;
    }
    merge(config, json{{key, value}}, "--set");
  }
  validate_config(config);
  return config;
}

SweepTable run_sweep(const SweepConfig& config, std::size_t workers) {
  validate_config(config);
  switch (config.mode) {
    case SweepMode::single_bus:
      return single_bus_sweep(config);
    case SweepMode::langevin_compare:
      return langevin_sweep(config);
    case SweepMode::attenuation_chain:
      return attenuation_sweep(config);
    case SweepMode::add_drop:
      return add_drop_sweep(config);
    case SweepMode::homm_grid:
      return homm_sweep(config, workers);
    case SweepMode::critical_dip:
      return critical_dip_sweep(config);
    case SweepMode::entropy_grid:
      return entropy_sweep(config, workers);
  }
  throw ConfigError("unknown mode");
}

json config_echo(const SweepConfig& config) {
  json echo = config.values;
  echo["mode"] = mode_name(config.mode);
  return echo;
}

std::string render_csv(const json& echo, const SweepTable& table) {
  std::string out = "# config: " + echo.dump() + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const json& echo, const SweepTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json cells = json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        cells.push_back(v);
      } else {
        cells.push_back(nullptr);
      }
    }
    rows.push_back(std::move(cells));
  }
  json doc{{"config", echo}, {"columns", table.columns}, {"rows", rows}, {"summary", table.summary}};
  return doc.dump(1) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace ringsim
