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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringsim/audit.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/parallel.hpp"
#include "ringsim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAudit = 2;
constexpr int kExitIo = 3;

struct SweepOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out;
  std::string format = "csv";
};

int run_sweep_command(ringsim::SweepMode mode, const SweepOptions& options) {
  const auto config = ringsim::load_config(
      mode, options.config_path.empty() ? std::nullopt : std::optional(options.config_path),
      options.sets);
  const auto format = ringsim::parse_format(options.format);
  const auto table = ringsim::run_sweep(config, ringsim::worker_count());
  const auto echo = ringsim::config_echo(config);
  ringsim::write_text_file(options.out, format == ringsim::OutputFormat::csv
                                            ? ringsim::render_csv(echo, table)
                                            : ringsim::render_json(echo, table));
  return kExitOk;
}

int run_audit_command(std::uint64_t seed, std::size_t samples, const std::string& out) {
  const auto report = ringsim::run_audit(seed, samples);
  const std::string text = ringsim::render_audit_csv(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    ringsim::write_text_file(out, text);
    for (const auto& record : report.records) {
      if (!record.passed()) std::cerr << "audit failure: " << record.identity << '\n';
    }
  }
  return report.passed() ? kExitOk : kExitAudit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringsim: lossy ring-resonator transfer, noise and two-photon sweeps"};
  app.require_subcommand(1);

  std::vector<std::pair<ringsim::SweepMode, CLI::App*>> sweeps;
  std::vector<SweepOptions> options(ringsim::mode_names().size());
  std::size_t slot = 0;
  for (const auto& name : ringsim::mode_names()) {
    const ringsim::SweepMode mode = ringsim::parse_mode(name);
    CLI::App* sub = app.add_subcommand(name, "parameter sweep: " + name);
    SweepOptions& o = options[slot++];
    sub->add_option("--config", o.config_path, "flat JSON parameter file");
    sub->add_option("--set", o.sets, "override key=value (value parsed as JSON)")
        ->allow_extra_args(false);
    sub->add_option("--out", o.out, "output path")->required();
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweeps.emplace_back(mode, sub);
  }

  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::string audit_out;
  CLI::App* audit = app.add_subcommand("audit", "evaluate every shipped identity");
  audit->add_option("--seed", seed, "random seed");
  audit->add_option("--samples", samples, "points per identity")->check(CLI::PositiveNumber);
  audit->add_option("--out", audit_out, "report path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (audit->parsed()) return run_audit_command(seed, samples, audit_out);
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      if (sweeps[i].second->parsed()) return run_sweep_command(sweeps[i].first, options[i]);
    }
  } catch (const ringsim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ringsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ringsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
