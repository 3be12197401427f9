// Copyright 2026 The qpm Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string output;
};

Run qpm(const std::string& args) {
  const std::string cmd = std::string(QPM_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qpm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path out(const std::string& sub = "") const { return sub.empty() ? dir_ : dir_ / sub; }
  std::string out_flag(const std::string& sub = "") const { return "--out " + out(sub).string(); }

  fs::path write_config(const nlohmann::json& j, const std::string& name = "cfg.json") const {
    const auto p = dir_ / name;
    std::ofstream(p) << j.dump();
    return p;
  }

  fs::path dir_;
};

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(qpm("").code, 2);
  EXPECT_EQ(qpm("frobnicate").code, 2);
  EXPECT_EQ(qpm("match " + out_flag()).code, 2);  // missing --query
  EXPECT_EQ(qpm("match --query 0h --format xml " + out_flag()).code, 2);
  EXPECT_EQ(qpm("match --query 0h --shots 0 " + out_flag()).code, 2);
  EXPECT_EQ(qpm("match --query 0h --exact --shots 10 " + out_flag()).code, 2);
  EXPECT_EQ(qpm("match --query 0h --t 3 --auto-m 1 " + out_flag()).code, 2);
  EXPECT_EQ(qpm("match --query 0h --dataset mnist " + out_flag()).code, 2);
  EXPECT_EQ(qpm("match --query 0h --no-such-flag").code, 2);
  EXPECT_EQ(qpm("grover-scan --query 0h --t-min 5 --t-max 2 " + out_flag()).code, 2);
  EXPECT_EQ(qpm("train-aae --target both " + out_flag()).code, 2);
  EXPECT_EQ(qpm("noise-study " + out_flag()).code, 2);  // no --digits
}

TEST_F(Cli, HelpExitsZero) {
  const auto r = qpm("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* sub : {"encode", "train-aae", "match", "grover-scan", "noise-study"})
    EXPECT_NE(r.output.find(sub), std::string::npos) << sub;
  EXPECT_EQ(qpm("match --help").code, 0);
}

TEST_F(Cli, RuntimeErrorsExitOne) {
  EXPECT_EQ(qpm("noise-study --digits /nonexistent/digits.csv " + out_flag()).code, 1);
  EXPECT_EQ(qpm("match --query 0h --prep aae --database-params /nonexistent.json " + out_flag()).code, 1);
  std::ofstream(out("bad.json")) << "{\"n_qubits\": 6}";
  EXPECT_EQ(qpm("match --query 0h --prep aae --database-params " + out("bad.json").string() + " " + out_flag()).code,
            1);
  EXPECT_EQ(qpm("match --query 0h --out /proc/forbidden/dir").code, 1);
}

TEST_F(Cli, ConfigValidation) {
  EXPECT_EQ(qpm("match --config " + write_config({{"query", "0h"}}).string()).code, 2);
  EXPECT_EQ(qpm("match --config " + write_config({{"schema_version", 99}, {"query", "0h"}}).string()).code, 2);
  EXPECT_EQ(qpm("match --config " + write_config({{"schema_version", 1}, {"qeury", "0h"}}).string()).code, 2);
  EXPECT_EQ(qpm("match --config " + write_config({{"schema_version", 1}, {"t", "five"}}).string()).code, 2);
  EXPECT_EQ(
      qpm("match --config " + write_config({{"schema_version", 1}, {"command", "encode"}, {"query", "0h"}}).string())
          .code,
      2);
  std::ofstream(out("broken.json")) << "{";
  EXPECT_EQ(qpm("match --config " + out("broken.json").string()).code, 1);
}

TEST_F(Cli, ConfigMatchesFlagsAndFlagsWin) {
  ASSERT_EQ(qpm("match --query 4h --t 3 --format csv " + out_flag("flags")).code, 0);
  const auto cfg = write_config({{"schema_version", 1},
                                 {"command", "match"},
                                 {"query", "4h"},
                                 {"t", 3},
                                 {"format", "csv"},
                                 {"out", out("cfg").string()}});
  ASSERT_EQ(qpm("match --config " + cfg.string()).code, 0);
  EXPECT_EQ(slurp(out("flags") / "match_4h_t3.csv"), slurp(out("cfg") / "match_4h_t3.csv"));
  ASSERT_EQ(qpm("match --config " + cfg.string() + " --t 1").code, 0);
  EXPECT_TRUE(fs::exists(out("cfg") / "match_4h_t1.csv"));
}

TEST_F(Cli, MatchOutputsAndDeterminism) {
  ASSERT_EQ(qpm("match --query 0h --t 5 --format csv,json,svg " + out_flag("a")).code, 0);
  ASSERT_EQ(qpm("match --query 0h --t 5 --format csv,json,svg " + out_flag("b")).code, 0);
  for (const char* f : {"match_0h_t5.csv", "match_0h_t5.json", "match_0h_t5.svg"}) {
    ASSERT_TRUE(fs::exists(out("a") / f)) << f;
    EXPECT_EQ(slurp(out("a") / f), slurp(out("b") / f)) << f;
  }
  const auto rows = parse_csv(slurp(out("a") / "match_0h_t5.csv"));
  ASSERT_EQ(rows.size(), 10u);
  double total = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][2]);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.283084, 1e-6);
  const auto j = nlohmann::json::parse(slurp(out("a") / "match_0h_t5.json"));
  EXPECT_EQ(j["match_index"], 0);
  EXPECT_NEAR(j["beta"].get<double>(), 0.661438, 1e-6);
}

TEST_F(Cli, SampledMatchIsSeedDeterministic) {
  const std::string args = "match --query 6h --shots 512 --seed 11 --format csv ";
  ASSERT_EQ(qpm(args + out_flag("a")).code, 0);
  ASSERT_EQ(qpm(args + out_flag("b")).code, 0);
  ASSERT_EQ(qpm("match --query 6h --shots 512 --seed 12 --format csv " + out_flag("c")).code, 0);
  const auto a = slurp(out("a") / "match_6h_t0.csv");
  EXPECT_EQ(a, slurp(out("b") / "match_6h_t0.csv"));
  EXPECT_NE(a, slurp(out("c") / "match_6h_t0.csv"));
  const auto rows = parse_csv(a);
  double total = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][2]);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST_F(Cli, AutoIterationsPicksFive) {
  const auto r = qpm("match --query 0h --auto-m 1 --format csv " + out_flag());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(out() / "match_0h_t5.csv"));
}

TEST_F(Cli, GroverScanColumnsSumToOne) {
  ASSERT_EQ(qpm("grover-scan --query 1h --t-max 20 --format csv,json,svg " + out_flag()).code, 0);
  const auto rows = parse_csv(slurp(out() / "grover_scan_1h.csv"));
  ASSERT_EQ(rows[0], (std::vector<std::string>{"t", "index", "label", "simulated", "analytic", "hamming_distance"}));
  std::map<std::string, std::pair<double, double>> sums;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    sums[rows[i][0]].first += std::stod(rows[i][3]);
    sums[rows[i][0]].second += std::stod(rows[i][4]);
    if (rows[i][1] != "others") {
      EXPECT_NEAR(std::stod(rows[i][3]), std::stod(rows[i][4]), 1e-10);
    }
  }
  EXPECT_EQ(sums.size(), 21u);
  for (const auto& [t, s] : sums) {
    EXPECT_NEAR(s.first, 1.0, 1e-12) << t;
    EXPECT_NEAR(s.second, 1.0, 1e-12) << t;
  }
  const auto j = nlohmann::json::parse(slurp(out() / "grover_scan_1h.json"));
  EXPECT_EQ(j["hamming_groups"].size(), 4u);
}

TEST_F(Cli, EncodeProducesUnitVector) {
  ASSERT_EQ(qpm("encode --image Ah --scheme neqr " + out_flag()).code, 0);
  const auto rows = parse_csv(slurp(out() / "encode_toy16_Ah_neqr.csv"));
  double n2 = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) n2 += std::pow(std::stod(rows[i][1]), 2);
  EXPECT_NEAR(n2, 1.0, 1e-12);
  ASSERT_EQ(qpm("encode --database --format json " + out_flag()).code, 0);
  const auto j = nlohmann::json::parse(slurp(out() / "encode_toy16_database_frqi.json"));
  EXPECT_EQ(j["n_qubits"], 6);
  EXPECT_EQ(qpm("encode " + out_flag()).code, 2);
  const std::string digits = std::string("--dataset digits --digits ") + QPM_DATA_DIR + "/digits_head.csv ";
  ASSERT_EQ(qpm("encode --image 7 " + digits + out_flag()).code, 0);
  EXPECT_EQ(parse_csv(slurp(out() / "encode_digits_7_frqi.csv")).size(), 129u);
  EXPECT_EQ(qpm("encode --image seven " + digits + out_flag()).code, 2);
}

TEST_F(Cli, TrainAaeWritesParametersAndLoss) {
  ASSERT_EQ(qpm("train-aae --target query --query 6h --restarts 3 " + out_flag()).code, 0);
  const auto j = nlohmann::json::parse(slurp(out() / "aae_6h_params.json"));
  EXPECT_EQ(j["n_qubits"], 3);
  EXPECT_EQ(j["n_layers"], 3);
  EXPECT_EQ(j["theta"].size(), 12u);
  EXPECT_GE(j["final_fidelity"].get<double>(), 0.99);
  EXPECT_FALSE(j.contains("wall_seconds"));
  EXPECT_EQ(parse_csv(slurp(out() / "aae_6h_loss.csv")).size(), 301u);
  // Reusing the trained query ansatz in the matcher.
  ASSERT_EQ(qpm("match --query 6h --prep aae --query-params " + (out() / "aae_6h_params.json").string() +
                " --database-params " + QPM_DATA_DIR + "/toy16_database_params.json --format csv " + out_flag("m"))
                .code,
            0);
  const auto rows = parse_csv(slurp(out("m") / "match_6h_t0.csv"));
  EXPECT_NEAR(std::stod(rows[4][2]), 0.125, 0.05);
}

TEST_F(Cli, NoiseStudyOutputs) {
  const std::string args = std::string("noise-study --digits ") + QPM_DATA_DIR +
                           "/digits_head.csv --seeds 2 --sigma0 0.1,0.5 --format csv,json ";
  ASSERT_EQ(qpm(args + out_flag("a")).code, 0);
  ASSERT_EQ(qpm(args + out_flag("b")).code, 0);
  for (const char* f : {"noise_frqi.csv", "noise_neqr.csv", "noise_summary.csv"})
    EXPECT_EQ(slurp(out("a") / f), slurp(out("b") / f)) << f;
  const auto summary = parse_csv(slurp(out("a") / "noise_summary.csv"));
  ASSERT_EQ(summary.size(), 5u);
  EXPECT_EQ(summary[0], (std::vector<std::string>{"scheme", "sigma0", "mean_fidelity", "argmax_accuracy"}));
  EXPECT_EQ(parse_csv(slurp(out("a") / "noise_frqi.csv")).size(), 1u + 2 * 2 * 64);
  EXPECT_TRUE(fs::exists(out("a") / "noise_neqr.json"));
}

}  // namespace
