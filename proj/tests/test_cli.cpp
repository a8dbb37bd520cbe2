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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

#include "process.hpp"

namespace hyperent {
namespace {

using test::data_path;
using test::run_cli;
using test::sample_path;

std::vector<nlohmann::json> json_lines(const std::string& out) {
  std::vector<nlohmann::json> v;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

TEST(Cli, RunSucceeds) {
  for (const char* f : {"entangled.yaml", "mixture.yaml", "product.yaml", "gaussian.yaml"}) {
    const auto r = run_cli("run " + sample_path(f));
    EXPECT_EQ(r.status, 0) << f;
    EXPECT_NE(r.out.find("p_double"), std::string::npos) << r.out;
  }
}

TEST(Cli, RunJsonLines) {
  const auto r = run_cli("run " + sample_path("entangled.yaml") + " --output json-lines");
  ASSERT_EQ(r.status, 0);
  const auto recs = json_lines(r.out);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0]["status"], "ok");
  EXPECT_EQ(recs[0]["classification"], "non-product hyperentangled");
  EXPECT_NEAR(recs[0]["k_value"].get<double>(), 1.0, 1e-15);
}

TEST(Cli, BadNormalizationIsConfigError) {
  const auto r = run_cli("run " + data_path("bad_norm.yaml"), true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("|alpha|^2 + |beta|^2 = 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("line 18"), std::string::npos) << r.out;
}

TEST(Cli, EmptySweepAxisIsConfigError) {
  EXPECT_EQ(run_cli("sweep " + data_path("empty_axis.yaml")).status, 2);
}

TEST(Cli, MissingFileAndBadFlagsAreConfigErrors) {
  EXPECT_EQ(run_cli("run " + data_path("no_such_file.yaml")).status, 2);
  EXPECT_EQ(run_cli("run " + sample_path("entangled.yaml") + " --output xml").status, 2);
  EXPECT_EQ(run_cli("run " + sample_path("entangled.yaml") + " --tolerance 2").status, 2);
  EXPECT_EQ(run_cli("frobnicate").status, 2);
  EXPECT_EQ(run_cli("check --inject nonsense").status, 2);
}

TEST(Cli, DegenerateSpectrumIsNumericalGuard) {
  EXPECT_EQ(run_cli("run " + data_path("degenerate.yaml")).status, 3);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* fmt : {"csv", "json-lines"}) {
    const std::string args = "sweep " + sample_path("sweep_alpha.yaml") + " --output " + fmt;
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    ASSERT_EQ(first.status, 0);
    EXPECT_EQ(first.out, second.out) << fmt;
  }
}

TEST(Cli, AlphaSweepEmitsOneRecordPerPoint) {
  const auto r = run_cli("sweep " + sample_path("sweep_alpha.yaml") + " --output json-lines");
  ASSERT_EQ(r.status, 0);
  const auto recs = json_lines(r.out);
  ASSERT_EQ(recs.size(), 5u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_NEAR(recs[i]["coordinates"][0]["value"].get<double>(), 0.05 + 0.05 * i, 1e-15);
    double total = 0.0;
    for (const char* k : {"p_double", "p_a_only", "p_b_only", "p_none"}) total += recs[i][k].get<double>();
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Cli, CsvHasMetadataHeaderAndRows) {
  const auto r = run_cli("sweep " + sample_path("sweep_alpha.yaml"));
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 8u);
  EXPECT_EQ(lines[0].rfind("# hyperent ", 0), 0u);
  EXPECT_EQ(lines[1].rfind("# config: ", 0), 0u);
  EXPECT_EQ(lines[2].rfind("status,error_code,message,alpha,kind,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("ok,,,0.050000000000000003,entangled,", 0), 0u);
}

TEST(Cli, RecoilSweepChangesClassification) {
  const auto r = run_cli("sweep " + sample_path("sweep_recoil.yaml") + " --output json-lines");
  ASSERT_EQ(r.status, 0);
  const auto recs = json_lines(r.out);
  ASSERT_EQ(recs.size(), 5u);
  EXPECT_EQ(recs[0]["classification"], "single-dof entangled");
  EXPECT_EQ(recs[0]["spatial_internal_product"], true);
  for (std::size_t i = 1; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i]["classification"], "non-product hyperentangled");
    EXPECT_NEAR(recs[i]["entropy_final"].get<double>(), 1.0, 1e-9);
  }
}

TEST(Cli, InjectedPerturbationFailsCheck) {
  for (const char* p : {"flip-lambda-entry", "drop-recoil-complement", "halve-gaussian-exponent",
                        "natural-log-entropy"})
    EXPECT_EQ(run_cli(std::string("check --quiet --inject ") + p).status, 1) << p;
}

}  // namespace
}  // namespace hyperent
