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

// Scenario and sweep configuration files (YAML; JSON is accepted too).
//
//   scenario:
//     kind: entangled            # entangled | mixture | product
//     alpha: 0.1                 # real, or [re, im]
//     beta: auto                 # auto = +sqrt(1 - |alpha|^2)
//     gamma: 0.1
//     delta: auto
//     overlaps: {a: 0.9, c: 0.9}                 # direct overlaps, or
//     # overlaps: {sigma_x: 1.0, k_recoil: 0.3}  # Gaussian recoil model (both atoms)
//   output: table                # table | csv | json-lines (optional)
//   tolerance: 1.0e-8            # product-test tolerance (optional)
//   sweep:                       # sweep files only
//     - {parameter: alpha, start: 0.05, stop: 0.3, count: 6}
//
// Sweepable parameters: alpha, beta, gamma, delta, overlaps.a, overlaps.c,
// overlaps.sigma_x, overlaps.k_recoil.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "hyperent/absorption.hpp"
#include "hyperent/errors.hpp"
#include "hyperent/overlap.hpp"
#include "hyperent/report.hpp"

namespace hyperent {

/// Allowed deviation of |alpha|^2 + |beta|^2 from 1 in a config file.
inline constexpr double kConfigNormTolerance = 1e-9;

/// Configuration rejected; `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class OutputFormat { Table, Csv, JsonLines };

inline std::optional<OutputFormat> parse_output_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json-lines") return OutputFormat::JsonLines;
  return std::nullopt;
}

struct AmplitudeSpec {
  bool automatic = false;
  Complex value{};
  int line = 0;
};

struct DirectOverlaps {
  double a = 1.0;
  double c = 1.0;
};

struct OverlapSpec {
  std::variant<DirectOverlaps, GaussianRecoilModel> model;
  int line = 0;
};

struct ScenarioSpec {
  InitialStateKind kind = InitialStateKind::Entangled;
  AmplitudeSpec alpha, beta, gamma, delta;
  OverlapSpec overlaps;
  int line = 0;
};

struct RunConfig {
  ScenarioSpec scenario;
  std::optional<OutputFormat> output;
  std::optional<double> tolerance;
};

struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  int line = 0;
};

struct SweepConfig {
  RunConfig base;
  std::vector<SweepAxis> axes;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

inline double as_real(const YAML::Node& n, const std::string& what) {
  try {
    if (n.IsScalar()) return n.as<double>();
  } catch (const YAML::Exception&) {
  }
  throw ConfigError(line_of(n), what + " must be a real number");
}

inline const YAML::Node require(const YAML::Node& parent, const char* key, const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) throw ConfigError(line_of(parent), where + ": missing required key '" + key + "'");
  return n;
}

inline void reject_unknown(const YAML::Node& map, std::initializer_list<const char*> known,
                           const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(line_of(kv.first), where + ": unknown key '" + key + "'");
  }
}

inline AmplitudeSpec parse_amplitude(const YAML::Node& n, const std::string& name,
                                     bool auto_allowed) {
  AmplitudeSpec a;
  a.line = line_of(n);
  if (n.IsScalar() && n.Scalar() == "auto") {
    if (!auto_allowed) throw ConfigError(a.line, name + " cannot be 'auto'");
    a.automatic = true;
    return a;
  }
  if (n.IsSequence()) {
    if (n.size() != 2) throw ConfigError(a.line, name + " as a pair must be [re, im]");
    a.value = {as_real(n[0], name + "[0]"), as_real(n[1], name + "[1]")};
    return a;
  }
  a.value = {as_real(n, name), 0.0};
  return a;
}

inline OverlapSpec parse_overlaps(const YAML::Node& n) {
  OverlapSpec o;
  o.line = line_of(n);
  if (!n.IsMap()) throw ConfigError(o.line, "overlaps must be a mapping");
  const bool direct = n["a"] || n["c"];
  const bool gaussian = n["sigma_x"] || n["k_recoil"];
  if (direct == gaussian)
    throw ConfigError(o.line,
                      "overlaps: specify exactly one of {a, c} (direct) or "
                      "{sigma_x, k_recoil} (Gaussian recoil model)");
  if (direct) {
    reject_unknown(n, {"a", "c"}, "overlaps");
    DirectOverlaps d;
    d.a = as_real(require(n, "a", "overlaps"), "overlaps.a");
    d.c = as_real(require(n, "c", "overlaps"), "overlaps.c");
    o.model = d;
  } else {
    reject_unknown(n, {"sigma_x", "k_recoil"}, "overlaps");
    GaussianRecoilModel g;
    g.sigma_x = as_real(require(n, "sigma_x", "overlaps"), "overlaps.sigma_x");
    g.k_recoil = as_real(require(n, "k_recoil", "overlaps"), "overlaps.k_recoil");
    o.model = g;
  }
  return o;
}

inline InitialStateKind parse_kind(const YAML::Node& n) {
  const std::string s = n.IsScalar() ? n.Scalar() : "";
  if (s == "entangled") return InitialStateKind::Entangled;
  if (s == "mixture") return InitialStateKind::EqualMixture;
  if (s == "product") return InitialStateKind::Product;
  throw ConfigError(line_of(n), "kind must be one of entangled, mixture, product");
}

inline ScenarioSpec parse_scenario(const YAML::Node& n) {
  ScenarioSpec s;
  s.line = line_of(n);
  if (!n.IsMap()) throw ConfigError(s.line, "scenario must be a mapping");
  reject_unknown(n, {"kind", "alpha", "beta", "gamma", "delta", "overlaps"}, "scenario");
  s.kind = parse_kind(require(n, "kind", "scenario"));
  s.alpha = parse_amplitude(require(n, "alpha", "scenario"), "alpha", false);
  s.beta = n["beta"] ? parse_amplitude(n["beta"], "beta", true) : AmplitudeSpec{true, {}, s.line};
  s.gamma = parse_amplitude(require(n, "gamma", "scenario"), "gamma", false);
  s.delta = n["delta"] ? parse_amplitude(n["delta"], "delta", true) : AmplitudeSpec{true, {}, s.line};
  s.overlaps = parse_overlaps(require(n, "overlaps", "scenario"));
  return s;
}

inline RunConfig parse_run(const YAML::Node& root, bool allow_sweep) {
  if (!root.IsMap()) throw ConfigError(line_of(root), "configuration must be a mapping");
  if (allow_sweep)
    reject_unknown(root, {"scenario", "output", "tolerance", "sweep"}, "configuration");
  else
    reject_unknown(root, {"scenario", "output", "tolerance"}, "configuration");
  RunConfig rc;
  rc.scenario = parse_scenario(require(root, "scenario", "configuration"));
  if (const auto o = root["output"]) {
    rc.output = o.IsScalar() ? parse_output_format(o.Scalar()) : std::nullopt;
    if (!rc.output) throw ConfigError(line_of(o), "output must be table, csv or json-lines");
  }
  if (const auto t = root["tolerance"]) {
    rc.tolerance = as_real(t, "tolerance");
    if (!(*rc.tolerance > 0.0 && *rc.tolerance < 1.0))
      throw ConfigError(line_of(t), "tolerance must lie in (0, 1)");
  }
  return rc;
}

inline YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.mark.line + 1, "parse error: " + e.msg);
  }
}

// Completes an (excite, stay) pair: auto fills +sqrt(1 - |excite|^2); an
// explicit pair must satisfy the normalization within kConfigNormTolerance
// and is then rescaled onto the unit circle exactly.
inline std::pair<Complex, Complex> resolve_pair(const AmplitudeSpec& excite, const AmplitudeSpec& stay,
                                                const std::string& excite_name,
                                                const std::string& stay_name) {
  const double pe = std::norm(excite.value);
  if (!std::isfinite(pe) || pe > 1.0 + kConfigNormTolerance)
    throw ConfigError(excite.line, "|" + excite_name + "|^2 + |" + stay_name +
                                       "|^2 = 1 cannot hold: |" + excite_name + "|^2 = " +
                                       format_number(pe) + " exceeds 1");
  if (stay.automatic) return {excite.value, Complex{std::sqrt(std::max(0.0, 1.0 - pe)), 0.0}};
  const double total = pe + std::norm(stay.value);
  if (!std::isfinite(total) || std::abs(total - 1.0) > kConfigNormTolerance)
    throw ConfigError(stay.line, "normalization |" + excite_name + "|^2 + |" + stay_name +
                                     "|^2 = 1 violated (got " + format_number(total) + ")");
  const double s = 1.0 / std::sqrt(total);
  return {excite.value * s, stay.value * s};
}

}  // namespace detail

inline RunConfig parse_run_config(const std::string& text) {
  return detail::parse_run(detail::load_yaml(text), false);
}

inline SweepConfig parse_sweep_config(const std::string& text) {
  const YAML::Node root = detail::load_yaml(text);
  SweepConfig sc;
  sc.base = detail::parse_run(root, true);
  const YAML::Node axes = detail::require(root, "sweep", "configuration");
  if (!axes.IsSequence() || axes.size() == 0)
    throw ConfigError(detail::line_of(axes), "sweep must be a non-empty list of axes");
  static const char* const known[] = {"alpha", "beta", "gamma", "delta", "overlaps.a",
                                      "overlaps.c", "overlaps.sigma_x", "overlaps.k_recoil"};
  for (const auto& n : axes) {
    SweepAxis ax;
    ax.line = detail::line_of(n);
    if (!n.IsMap()) throw ConfigError(ax.line, "sweep axis must be a mapping");
    detail::reject_unknown(n, {"parameter", "start", "stop", "count"}, "sweep axis");
    ax.parameter = detail::require(n, "parameter", "sweep axis").as<std::string>();
    bool ok = false;
    for (const char* k : known) ok = ok || ax.parameter == k;
    if (!ok) throw ConfigError(ax.line, "sweep axis: unknown parameter '" + ax.parameter + "'");
    ax.start = detail::as_real(detail::require(n, "start", "sweep axis"), "start");
    ax.stop = detail::as_real(detail::require(n, "stop", "sweep axis"), "stop");
    const YAML::Node cnt = detail::require(n, "count", "sweep axis");
    try {
      ax.count = cnt.as<int>();
    } catch (const YAML::Exception&) {
      throw ConfigError(detail::line_of(cnt), "count must be an integer");
    }
    if (ax.count < 2) throw ConfigError(detail::line_of(cnt), "count must be >= 2");

    const bool gaussian = std::holds_alternative<GaussianRecoilModel>(sc.base.scenario.overlaps.model);
    const bool wants_gaussian = ax.parameter == "overlaps.sigma_x" || ax.parameter == "overlaps.k_recoil";
    const bool wants_direct = ax.parameter == "overlaps.a" || ax.parameter == "overlaps.c";
    if ((wants_gaussian && !gaussian) || (wants_direct && gaussian))
      throw ConfigError(ax.line, "sweep axis '" + ax.parameter +
                                     "' does not match the overlap specification of the scenario");
    sc.axes.push_back(ax);
  }
  return sc;
}

/// Turns a spec into a validated Scenario. Throws ConfigError naming the line.
inline Scenario resolve_scenario(const ScenarioSpec& spec) {
  Scenario sc;
  sc.kind = spec.kind;
  const auto [alpha, beta] = detail::resolve_pair(spec.alpha, spec.beta, "alpha", "beta");
  const auto [gamma, delta] = detail::resolve_pair(spec.gamma, spec.delta, "gamma", "delta");
  sc.amplitudes = {alpha, beta, gamma, delta};
  try {
    if (const auto* d = std::get_if<DirectOverlaps>(&spec.overlaps.model)) {
      sc.overlaps = RecoilOverlaps::from_overlaps(d->a, d->c);
    } else {
      const double s = gaussian_recoil_overlap(std::get<GaussianRecoilModel>(spec.overlaps.model));
      sc.overlaps = RecoilOverlaps::from_overlaps(s, s);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(spec.overlaps.line, std::string("overlaps: ") + e.what());
  }
  return sc;
}

/// Copy of `spec` with one swept parameter set.
inline ScenarioSpec with_parameter(ScenarioSpec spec, const std::string& parameter, double value) {
  auto set_amp = [&](AmplitudeSpec& a) { a.value = {value, 0.0}, a.automatic = false; };
  if (parameter == "alpha") set_amp(spec.alpha);
  else if (parameter == "beta") set_amp(spec.beta);
  else if (parameter == "gamma") set_amp(spec.gamma);
  else if (parameter == "delta") set_amp(spec.delta);
  else if (auto* d = std::get_if<DirectOverlaps>(&spec.overlaps.model)) {
    if (parameter == "overlaps.a") d->a = value;
    else if (parameter == "overlaps.c") d->c = value;
  } else if (auto* g = std::get_if<GaussianRecoilModel>(&spec.overlaps.model)) {
    if (parameter == "overlaps.sigma_x") g->sigma_x = value;
    else if (parameter == "overlaps.k_recoil") g->k_recoil = value;
  }
  return spec;
}

/// Grid points in row-major order (first axis outermost).
inline std::vector<std::vector<std::pair<std::string, double>>> sweep_grid(
    const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<std::pair<std::string, double>>> grid{{}};
  for (const auto& ax : axes) {
    std::vector<std::vector<std::pair<std::string, double>>> next;
    for (const auto& prefix : grid)
      for (int i = 0; i < ax.count; ++i) {
        auto p = prefix;
        const double t = static_cast<double>(i) / (ax.count - 1);
        p.emplace_back(ax.parameter, i + 1 == ax.count ? ax.stop : ax.start + (ax.stop - ax.start) * t);
        next.push_back(std::move(p));
      }
    grid = std::move(next);
  }
  return grid;
}

/// Exit status of a single evaluation: 0 ok, 2 config, 3 numerical guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Evaluates one point of a sweep; failures become error records.
inline ScenarioReport evaluate_point(const ScenarioSpec& spec,
                                     const std::vector<std::pair<std::string, double>>& coords,
                                     double product_tol) {
  try {
    ScenarioSpec s = spec;
    for (const auto& [name, value] : coords) s = with_parameter(std::move(s), name, value);
    ScenarioReport r = run_scenario(resolve_scenario(s), product_tol);
    r.coordinates = coords;
    return r;
  } catch (const NumericalGuard& e) {
    return error_report(kExitNumerical, e.what(), coords);
  } catch (const Error& e) {
    return error_report(kExitConfig, e.what(), coords);
  }
}

/// All grid points in deterministic order.
inline std::vector<ScenarioReport> run_sweep(const SweepConfig& cfg, double product_tol) {
  std::vector<ScenarioReport> out;
  for (const auto& coords : sweep_grid(cfg.axes))
    out.push_back(evaluate_point(cfg.base.scenario, coords, product_tol));
  return out;
}

}  // namespace hyperent
