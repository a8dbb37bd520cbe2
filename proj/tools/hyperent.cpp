// Copyright 2026 The hyperent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hyperent: run absorption scenarios, parameter sweeps and the built-in
// reproduction checks.
//
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 numerical guard.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hyperent/checks.hpp"
#include "hyperent/config.hpp"
#include "hyperent/report.hpp"

namespace {

using namespace hyperent;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string config_path;
  std::string output;
  std::optional<double> tolerance;
  bool quiet = false;
  std::string inject = "none";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

OutputFormat pick_format(const Options& opt, const RunConfig& rc) {
  if (!opt.output.empty()) return *parse_output_format(opt.output);
  return rc.output.value_or(OutputFormat::Table);
}

double pick_tolerance(const Options& opt, const RunConfig& rc) {
  return opt.tolerance.value_or(rc.tolerance.value_or(kProductTolerance));
}

void write_metadata(std::ostream& os, const char* command, const std::string& path) {
  os << "# hyperent " << kVersion << " " << command << "\n# config: " << path << "\n";
}

int cmd_run(const Options& opt) {
  RunConfig rc;
  Scenario sc;
  try {
    rc = parse_run_config(read_file(opt.config_path));
    sc = resolve_scenario(rc.scenario);
  } catch (const ConfigError& e) {
    std::cerr << opt.config_path << ": " << e.what() << "\n";
    return kExitConfig;
  }

  ScenarioReport r;
  try {
    r = run_scenario(sc, pick_tolerance(opt, rc));
  } catch (const NumericalGuard& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << opt.config_path << ": " << e.what() << "\n";
    return kExitConfig;
  }
  if (r.linear_regime_warning && !opt.quiet)
    std::cerr << "warning: |alpha|^2 or |gamma|^2 exceeds " << kLinearRegimeLimit
              << "; single-absorption model is outside its linear regime\n";

  switch (pick_format(opt, rc)) {
    case OutputFormat::Table:
      write_table(std::cout, r);
      break;
    case OutputFormat::Csv:
      write_metadata(std::cout, "run", opt.config_path);
      std::cout << csv_header({}) << "\n" << csv_row(r) << "\n";
      break;
    case OutputFormat::JsonLines:
      std::cout << to_json(r).dump() << "\n";
      break;
  }
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  SweepConfig cfg;
  try {
    cfg = parse_sweep_config(read_file(opt.config_path));
  } catch (const ConfigError& e) {
    std::cerr << opt.config_path << ": " << e.what() << "\n";
    return kExitConfig;
  }
  const auto records = run_sweep(cfg, pick_tolerance(opt, cfg.base));

  int status = kExitOk;
  for (const auto& r : records) {
    if (r.status == "ok") continue;
    status = std::max(status, r.error_code.value_or(kExitConfig));
    if (!opt.quiet) std::cerr << "sweep point failed: " << r.message << "\n";
  }

  std::vector<std::string> swept;
  for (const auto& ax : cfg.axes) swept.push_back(ax.parameter);
  switch (pick_format(opt, cfg.base)) {
    case OutputFormat::Table:
      for (std::size_t i = 0; i < records.size(); ++i) {
        std::cout << "--- point " << i << "\n";
        write_table(std::cout, records[i]);
      }
      break;
    case OutputFormat::Csv:
      write_metadata(std::cout, "sweep", opt.config_path);
      std::cout << csv_header(swept) << "\n";
      for (const auto& r : records) std::cout << csv_row(r) << "\n";
      break;
    case OutputFormat::JsonLines:
      for (const auto& r : records) std::cout << to_json(r).dump() << "\n";
      break;
  }
  return status;
}

int cmd_check(const Options& opt) {
  Perturbation p = Perturbation::None;
  for (auto candidate : kAllPerturbations)
    if (opt.inject == to_string(candidate)) p = candidate;
  if (opt.inject != "none" && p == Perturbation::None) {
    std::cerr << "unknown perturbation '" << opt.inject << "'\n";
    return kExitConfig;
  }
  const auto results = run_checks(p);
  for (const auto& r : results) {
    if (opt.quiet && r.passed) continue;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": "
              << r.measured << " [" << r.expected << "]\n";
  }
  const bool ok = all_passed(results);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  std::cout << passed << "/" << results.size() << " checks passed\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom light absorption: entanglement, recoil and hyperentanglement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "table | csv | json-lines")
        ->check(CLI::IsMember({"table", "csv", "json-lines"}));
    sub->add_option("--tolerance", opt.tolerance, "relative tolerance of product tests")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_flag("--quiet", opt.quiet, "suppress diagnostics on stderr");
  };

  auto* run = app.add_subcommand("run", "evaluate one scenario");
  run->add_option("config", opt.config_path, "scenario config file")->required();
  add_common(run);

  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
  sweep->add_option("config", opt.config_path, "sweep config file")->required();
  add_common(sweep);

  auto* check = app.add_subcommand("check", "run the built-in reproduction checks");
  check->add_flag("--quiet", opt.quiet, "print failing checks and the summary only");
  check->add_option("--inject", opt.inject,
                    "corrupt one ingredient to demonstrate detection: flip-lambda-entry, "
                    "drop-recoil-complement, halve-gaussian-exponent, natural-log-entropy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(opt);
    if (*sweep) return cmd_sweep(opt);
    return cmd_check(opt);
  } catch (const NumericalGuard& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
