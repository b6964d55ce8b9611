// Copyright 2026 The gpqe authors
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

#include "gpqe/driver.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace gpqe;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& rel) { return gpqe::test::data_path(rel); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("gpqe_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, MissingFcidumpNamesKey) {
  try {
    parse_run_config("{\"method\":\"PQE-SD\"}");
    FAIL() << "expected config error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("fcidump"), std::string::npos);
  }
}

TEST(Config, GpqeRequiresCso) {
  const std::string text =
      "{\"fcidump\":\"" + data("h4/h4_1.500.fcidump") + "\",\"method\":\"GPQE\"}";
  try {
    parse_run_config(text);
    FAIL() << "expected config error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cso"), std::string::npos);
  }
}

TEST(Config, UnknownMethodAndBadNoise) {
  const std::string base =
      "\"fcidump\":\"" + data("h2/h2_0.735.fcidump") + "\"";
  EXPECT_THROW(parse_run_config("{" + base + ",\"method\":\"CCSD\"}"),
               std::invalid_argument);
  EXPECT_THROW(
      parse_run_config("{" + base + ",\"noise\":{\"p1\":2.0}}"),
      std::invalid_argument);
  EXPECT_THROW(parse_run_config("not json"), std::invalid_argument);
}

TEST(Run, H2TwoElectronExactness) {
  RunConfig config;
  config.fcidump = data("h2/h2_0.735.fcidump");
  config.method = "PQE-SD";
  const RunOutcome out = run_config(config);
  EXPECT_EQ(out.exit_code, kExitOk);
  EXPECT_TRUE(out.row.converged);
  EXPECT_LT(out.row.abs_error, 1e-8);
  EXPECT_TRUE(out.row.within_chem_acc);
}

TEST(Run, WritesAllArtifacts) {
  const fs::path dir = temp_dir("run");
  RunConfig config;
  config.fcidump = data("h2/h2_0.735.fcidump");
  config.method = "PQE-SD";
  config.out_dir = dir.string();
  EXPECT_EQ(run_and_write(config), kExitOk);
  EXPECT_TRUE(fs::exists(dir / "results.csv"));
  EXPECT_TRUE(fs::exists(dir / "trace.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));

  const std::string csv = slurp(dir / "results.csv");
  EXPECT_EQ(csv.rfind(results_csv_header(), 0), 0u);  // header first
  EXPECT_NE(csv.find("schema_version"), std::string::npos);
  EXPECT_NE(csv.find("PQE-SD"), std::string::npos);

  const std::string trace = slurp(dir / "trace.jsonl");
  EXPECT_NE(trace.find("\"residual_norm\""), std::string::npos);
  EXPECT_NE(trace.find("\"gershgorin_radius\""), std::string::npos);
}

TEST(Run, NonConvergenceExitCode) {
  RunConfig config;
  config.fcidump = data("h4/h4_2.000.fcidump");
  config.method = "PQE-SD";
  config.solver.max_sweeps = 2;
  const RunOutcome out = run_config(config);
  EXPECT_EQ(out.exit_code, kExitNotConverged);
  EXPECT_FALSE(out.row.converged);
}

TEST(Run, MissingFixtureFileFails) {
  RunConfig config;
  config.fcidump = data("h4/nonexistent.fcidump");
  EXPECT_THROW(run_config(config), std::runtime_error);
}

TEST(Scan, EmptyListGivesHeaderOnlyCsv) {
  const fs::path dir = temp_dir("scan_empty");
  ScanConfig scan;
  scan.base.out_dir = dir.string();
  EXPECT_EQ(scan_and_write(scan, 1), kExitOk);
  const std::string csv = slurp(dir / "results.csv");
  EXPECT_EQ(csv, results_csv_header() + "\n");
}

TEST(Scan, ParsesPointsAndMergesRows) {
  const fs::path dir = temp_dir("scan_h4");
  std::ostringstream text;
  text << "{\"method\":\"PQE-SD\",\"output\":\"" << dir.string() << "\","
       << "\"fcidump\":\"\",\"points\":["
       << "{\"fcidump\":\"" << data("h4/h4_0.750.fcidump")
       << "\",\"label\":\"0.75\"},"
       << "{\"fcidump\":\"" << data("h4/h4_1.000.fcidump")
       << "\",\"label\":\"1.00\"}]}";
  const ScanConfig scan = parse_scan_config(text.str());
  ASSERT_EQ(scan.points.size(), 2u);
  EXPECT_EQ(scan.points[0].label, "0.75");
  EXPECT_EQ(scan_and_write(scan, 2), kExitOk);

  std::ifstream csv(dir / "results.csv");
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[1].find("1,0.75"), 0u);  // geometry order preserved
  EXPECT_EQ(lines[2].find("1,1.00"), 0u);
  EXPECT_TRUE(fs::exists(dir / "trace_0.75.jsonl"));
}

TEST(Scan, PartialFailureIsRecordedNotFatal) {
  const fs::path dir = temp_dir("scan_fail");
  ScanConfig scan;
  RunConfig good;
  good.fcidump = data("h2/h2_0.735.fcidump");
  good.method = "PQE-SD";
  good.out_dir = dir.string();
  RunConfig bad = good;
  bad.fcidump = data("h2/missing.fcidump");
  bad.label = "broken";
  scan.base = good;
  scan.points = {good, bad};
  EXPECT_EQ(scan_and_write(scan, 1), kExitNotConverged);
  std::ifstream csv(dir / "results.csv");
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[2].find("broken"), std::string::npos);
  EXPECT_NE(lines[2].find("nan"), std::string::npos);
}

TEST(Scan, RerunWithSameSeedsIsByteIdentical) {
  const fs::path dir1 = temp_dir("det1");
  const fs::path dir2 = temp_dir("det2");
  RunConfig point;
  point.fcidump = data("h4/h4_1.500.fcidump");
  point.method = "GPQE";
  point.cso = {2, 3, 4, 5};
  point.seed = 7;
  ScanConfig scan;
  scan.base = point;
  scan.points = {point};
  scan.base.out_dir = dir1.string();
  ASSERT_EQ(scan_and_write(scan, 1), kExitOk);
  scan.base.out_dir = dir2.string();
  ASSERT_EQ(scan_and_write(scan, 1), kExitOk);
  EXPECT_EQ(slurp(dir1 / "results.csv"), slurp(dir2 / "results.csv"));
}

TEST(Reports, GatesAndFci) {
  RunConfig config;
  config.fcidump = data("h4/h4_1.500.fcidump");
  config.method = "GPQE";
  config.cso = {2, 3, 4, 5};
  const std::string gates = gates_report(config);
  EXPECT_NE(gates.find("cnot count"), std::string::npos);
  EXPECT_NE(gates.find("scatterers"), std::string::npos);
  const std::string fci = fci_report(config);
  EXPECT_NE(fci.find("e_fci"), std::string::npos);
}

TEST(Run, EnvOverridesOutputDir) {
  const fs::path dir = temp_dir("env_out");
  setenv("GPQE_OUT_DIR", dir.string().c_str(), 1);
  RunConfig config;
  config.fcidump = data("h2/h2_0.735.fcidump");
  config.method = "PQE-SD";
  config.out_dir = (dir / "ignored").string();
  EXPECT_EQ(run_and_write(config), kExitOk);
  unsetenv("GPQE_OUT_DIR");
  EXPECT_TRUE(fs::exists(dir / "results.csv"));
  EXPECT_FALSE(fs::exists(dir / "ignored" / "results.csv"));
}
