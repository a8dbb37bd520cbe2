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

// End-to-end evaluation of one scenario and its serialized forms.
//
// CSV column order (fixed, see kCsvColumns):
//   status, error_code, message, <swept coordinates...>, kind,
//   alpha_re, alpha_im, beta_re, beta_im, gamma_re, gamma_im, delta_re, delta_im,
//   a, b, c, d, p_double, p_a_only, p_b_only, p_none,
//   entropy_initial, entropy_final, eigen_route_entropy, k_value,
//   lambda_verdict, spatial_internal_product, classification, linear_regime_warning
//
// Quantities that do not apply to a record are empty in CSV and null in JSON.

#pragma once

#include <cstdio>
#include <iomanip>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hyperent/absorption.hpp"
#include "hyperent/entanglement.hpp"

namespace hyperent {

struct ScenarioReport {
  std::string status = "ok";  // "ok" or "error"
  std::optional<int> error_code;
  std::string message;
  /// Swept coordinates in axis order; empty for single runs.
  std::vector<std::pair<std::string, double>> coordinates;

  std::string kind;
  Complex alpha, beta, gamma, delta;
  double a = 1.0, b = 0.0, c = 1.0, d = 0.0;
  OutcomeProbabilities probabilities;
  std::optional<double> entropy_initial;
  std::optional<double> entropy_final;
  std::optional<double> eigen_route_entropy;
  std::optional<double> k_value;
  std::optional<bool> lambda_verdict;
  std::optional<bool> spatial_internal_product;
  std::optional<std::string> classification;
  bool linear_regime_warning = false;

  friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

/// Runs preparation, channel, probabilities, entropies, the lambda checks and
/// the hyperentanglement classification. Throws NumericalGuard subclasses.
inline ScenarioReport run_scenario(const Scenario& sc, double product_tol = kProductTolerance) {
  sc.validate();
  ScenarioReport r;
  r.kind = std::string(to_string(sc.kind));
  r.alpha = sc.amplitudes.alpha;
  r.beta = sc.amplitudes.beta;
  r.gamma = sc.amplitudes.gamma;
  r.delta = sc.amplitudes.delta;
  r.a = sc.overlaps.a;
  r.b = sc.overlaps.b;
  r.c = sc.overlaps.c;
  r.d = sc.overlaps.d;
  r.linear_regime_warning = sc.amplitudes.linear_regime_exceeded();

  const PreparedState initial = build_initial(sc.kind);
  const PreparedState final = apply_absorption(initial, sc.amplitudes, sc.overlaps);
  r.probabilities = outcome_probabilities(final);

  if (const auto* f = std::get_if<Ket>(&final)) {
    const auto& i = std::get<Ket>(initial);
    r.entropy_initial = schmidt_decompose(i, Bipartition::ParticleSplit).entropy_bits;
    r.entropy_final = schmidt_decompose(*f, Bipartition::ParticleSplit).entropy_bits;
    const auto rep = hyperentanglement_report(*f, product_tol);
    r.spatial_internal_product = rep.spatial_internal_product;
    r.classification = std::string(to_string(rep.classification));
    if (sc.kind == InitialStateKind::Entangled && sc.amplitudes.is_real()) {
      const auto lm = build_lambda(sc.amplitudes, sc.overlaps);
      r.k_value = lm.k_value;
      r.lambda_verdict = lambda_spectrum_check(lm).verdict;
      r.eigen_route_entropy = eigen_schmidt_route(lm).entropy_bits;
    }
  } else {
    // A mixture of A|B product branches is separable; anything else is left
    // unclassified since mixed-state measures are out of scope.
    const auto& mix = std::get<MixedState>(final);
    bool all_product = true;
    for (const auto& br : mix.branches())
      all_product = all_product && is_product_across(br.ket, Bipartition::ParticleSplit, product_tol);
    if (all_product) r.classification = std::string(to_string(EntanglementClass::Separable));
  }
  return r;
}

inline ScenarioReport error_report(int code, std::string message,
                                   std::vector<std::pair<std::string, double>> coordinates = {}) {
  ScenarioReport r;
  r.status = "error";
  r.error_code = code;
  r.message = std::move(message);
  r.coordinates = std::move(coordinates);
  return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> json_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline nlohmann::json to_json(const ScenarioReport& r) {
  nlohmann::json j = nlohmann::json::object();
  j["status"] = r.status;
  j["error_code"] = detail::optional_json(r.error_code);
  j["message"] = r.message;
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& [name, value] : r.coordinates) coords.push_back({{"parameter", name}, {"value", value}});
  j["coordinates"] = coords;
  if (r.status != "ok") return j;

  j["kind"] = r.kind;
  j["alpha"] = {r.alpha.real(), r.alpha.imag()};
  j["beta"] = {r.beta.real(), r.beta.imag()};
  j["gamma"] = {r.gamma.real(), r.gamma.imag()};
  j["delta"] = {r.delta.real(), r.delta.imag()};
  j["a"] = r.a;
  j["b"] = r.b;
  j["c"] = r.c;
  j["d"] = r.d;
  j["p_double"] = r.probabilities.p_double;
  j["p_a_only"] = r.probabilities.p_a_only;
  j["p_b_only"] = r.probabilities.p_b_only;
  j["p_none"] = r.probabilities.p_none;
  j["entropy_initial"] = detail::optional_json(r.entropy_initial);
  j["entropy_final"] = detail::optional_json(r.entropy_final);
  j["eigen_route_entropy"] = detail::optional_json(r.eigen_route_entropy);
  j["k_value"] = detail::optional_json(r.k_value);
  j["lambda_verdict"] = detail::optional_json(r.lambda_verdict);
  j["spatial_internal_product"] = detail::optional_json(r.spatial_internal_product);
  j["classification"] = detail::optional_json(r.classification);
  j["linear_regime_warning"] = r.linear_regime_warning;
  return j;
}

inline ScenarioReport report_from_json(const nlohmann::json& j) {
  ScenarioReport r;
  r.status = j.at("status").get<std::string>();
  r.error_code = detail::json_optional<int>(j, "error_code");
  r.message = j.at("message").get<std::string>();
  for (const auto& c : j.at("coordinates"))
    r.coordinates.emplace_back(c.at("parameter").get<std::string>(), c.at("value").get<double>());
  if (r.status != "ok") return r;

  auto cx = [&](const char* key) {
    const auto& v = j.at(key);
    return Complex{v.at(0).get<double>(), v.at(1).get<double>()};
  };
  r.kind = j.at("kind").get<std::string>();
  r.alpha = cx("alpha");
  r.beta = cx("beta");
  r.gamma = cx("gamma");
  r.delta = cx("delta");
  r.a = j.at("a").get<double>();
  r.b = j.at("b").get<double>();
  r.c = j.at("c").get<double>();
  r.d = j.at("d").get<double>();
  r.probabilities = {j.at("p_double").get<double>(), j.at("p_a_only").get<double>(),
                     j.at("p_b_only").get<double>(), j.at("p_none").get<double>()};
  r.entropy_initial = detail::json_optional<double>(j, "entropy_initial");
  r.entropy_final = detail::json_optional<double>(j, "entropy_final");
  r.eigen_route_entropy = detail::json_optional<double>(j, "eigen_route_entropy");
  r.k_value = detail::json_optional<double>(j, "k_value");
  r.lambda_verdict = detail::json_optional<bool>(j, "lambda_verdict");
  r.spatial_internal_product = detail::json_optional<bool>(j, "spatial_internal_product");
  r.classification = detail::json_optional<std::string>(j, "classification");
  r.linear_regime_warning = j.at("linear_regime_warning").get<bool>();
  return r;
}

// ---------------------------------------------------------------------------
// CSV and table

inline constexpr const char* kCsvColumns[] = {
    "kind", "alpha_re", "alpha_im", "beta_re", "beta_im", "gamma_re", "gamma_im",
    "delta_re", "delta_im", "a", "b", "c", "d", "p_double", "p_a_only", "p_b_only",
    "p_none", "entropy_initial", "entropy_final", "eigen_route_entropy", "k_value",
    "lambda_verdict", "spatial_internal_product", "classification", "linear_regime_warning"};

/// 17 significant digits: enough to round-trip any double.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_header(const std::vector<std::string>& swept) {
  std::string h = "status,error_code,message";
  for (const auto& s : swept) h += "," + s;
  for (const char* c : kCsvColumns) h += std::string(",") + c;
  return h;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string csv_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

inline std::string csv_optional(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : std::string();
}

}  // namespace detail

inline std::string csv_row(const ScenarioReport& r) {
  std::vector<std::string> f;
  f.push_back(r.status);
  f.push_back(r.error_code ? std::to_string(*r.error_code) : "");
  f.push_back(detail::csv_escape(r.message));
  for (const auto& [name, value] : r.coordinates) f.push_back(format_number(value));
  if (r.status == "ok") {
    f.push_back(r.kind);
    for (const Complex& z : {r.alpha, r.beta, r.gamma, r.delta}) {
      f.push_back(format_number(z.real()));
      f.push_back(format_number(z.imag()));
    }
    for (double x : {r.a, r.b, r.c, r.d}) f.push_back(format_number(x));
    const auto& p = r.probabilities;
    for (double x : {p.p_double, p.p_a_only, p.p_b_only, p.p_none}) f.push_back(format_number(x));
    f.push_back(detail::csv_optional(r.entropy_initial));
    f.push_back(detail::csv_optional(r.entropy_final));
    f.push_back(detail::csv_optional(r.eigen_route_entropy));
    f.push_back(detail::csv_optional(r.k_value));
    f.push_back(detail::csv_optional(r.lambda_verdict));
    f.push_back(detail::csv_optional(r.spatial_internal_product));
    f.push_back(r.classification.value_or(""));
    f.push_back(r.linear_regime_warning ? "true" : "false");
  } else {
    f.resize(f.size() + std::size(kCsvColumns));
  }
  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) line += (i ? "," : "") + f[i];
  return line;
}

/// Human-readable block for a single record.
inline void write_table(std::ostream& os, const ScenarioReport& r) {
  auto num = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("n/a"); };
  auto flag = [](const std::optional<bool>& v) {
    return v ? std::string(*v ? "yes" : "no") : std::string("n/a");
  };
  auto cx = [](Complex z) {
    std::ostringstream s;
    s << std::setprecision(10) << z.real();
    if (z.imag() != 0.0) s << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
  };
  const int w = 28;
  auto row = [&](const std::string& k, const std::string& v) {
    os << std::left << std::setw(w) << k << v << "\n";
  };
  for (const auto& [name, value] : r.coordinates) row(name, format_number(value));
  if (r.status != "ok") {
    row("status", "error (code " + std::to_string(r.error_code.value_or(0)) + ")");
    row("message", r.message);
    return;
  }
  row("kind", r.kind);
  row("alpha", cx(r.alpha));
  row("beta", cx(r.beta));
  row("gamma", cx(r.gamma));
  row("delta", cx(r.delta));
  row("overlaps (a, b)", format_number(r.a) + ", " + format_number(r.b));
  row("overlaps (c, d)", format_number(r.c) + ", " + format_number(r.d));
  row("p_double", format_number(r.probabilities.p_double));
  row("p_a_only", format_number(r.probabilities.p_a_only));
  row("p_b_only", format_number(r.probabilities.p_b_only));
  row("p_none", format_number(r.probabilities.p_none));
  row("entropy_initial [bits]", num(r.entropy_initial));
  row("entropy_final [bits]", num(r.entropy_final));
  row("eigen_route_entropy [bits]", num(r.eigen_route_entropy));
  row("k_value", num(r.k_value));
  row("lambda_verdict", flag(r.lambda_verdict));
  row("spatial_internal_product", flag(r.spatial_internal_product));
  row("classification", r.classification.value_or("n/a"));
  row("linear_regime_warning", r.linear_regime_warning ? "yes" : "no");
}

}  // namespace hyperent
