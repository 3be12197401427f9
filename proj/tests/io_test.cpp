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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qpm/io.hpp"
#include "qpm/svg.hpp"

namespace {
using nlohmann::json;
}

namespace qpm {
namespace {

TEST(Format, SeventeenSignificantDigits) {
  EXPECT_EQ(io::fmt_double(0.125), "0.125");
  EXPECT_EQ(io::fmt_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(io::fmt_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(io::fmt_double(-2.0), "-2");
}

TEST(Csv, HeaderRowsAndLineEndings) {
  io::CsvWriter w({"a", "b", "c"});
  w.add(1, 0.5, std::string("x")).add(std::size_t{2}, -1e-20, "y");
  EXPECT_EQ(w.str(), "a,b,c\n1,0.5,x\n2,-9.9999999999999995e-21,y\n");
  EXPECT_EQ(w.str().find('\r'), std::string::npos);
  EXPECT_THROW(w.add(1, 2), std::logic_error);
}

TEST(Json, TrainedParametersRoundTrip) {
  TrainResult r;
  r.ansatz = Ansatz{3, 1, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}};
  r.seed = 42;
  r.report.final_fidelity = 0.995;
  const auto j = io::trained_params_json(r);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["n_qubits"], 3);
  const auto back = io::ansatz_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.theta, r.ansatz.theta);
  EXPECT_EQ(back.n_layers, 1u);
  EXPECT_THROW(io::ansatz_from_json(json{{"n_qubits", 3}}), std::runtime_error);
  EXPECT_THROW(io::ansatz_from_json(json{{"n_qubits", 3}, {"n_layers", 1}, {"theta", {1.0}}}), std::invalid_argument);
}

TEST(Json, FileErrors) {
  EXPECT_THROW(io::read_json_file("/nonexistent/x.json"), std::runtime_error);
  const auto p = std::filesystem::temp_directory_path() / "qpm_io_test_bad.json";
  io::write_file(p.string(), "{not json");
  EXPECT_THROW(io::read_json_file(p.string()), std::runtime_error);
  std::filesystem::remove(p);
  EXPECT_THROW(io::write_file("/nonexistent/dir/out.csv", "x"), std::runtime_error);
}

TEST(Json, ShippedDatabaseParameters) {
  const auto a = io::ansatz_from_json(io::read_json_file(std::string(QPM_DATA_DIR) + "/toy16_database_params.json"));
  EXPECT_EQ(a.n_qubits, 6u);
  EXPECT_EQ(a.theta.size(), Ansatz::param_count(6, a.n_layers));
}

TEST(MatchCsv, ColumnsAndOthersRow) {
  const auto db = toy16_database();
  const auto psi = build_matching_state(database_state(db, EncodingScheme::kFrqi),
                                        HouseholderPrep(frqi_amplitudes(binary_image(0))));
  const auto r = index_distribution(Preparation::from_state(psi), 3, 0);
  const auto csv = io::match_csv(r, db.labels(), io::hamming_column(binary_image(0), db));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,label,probability,similarity,hamming_distance,group");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0h," + io::fmt_double(r.probability[0]) + ",1,0,0");
  double total = 0;
  int rows = 0;
  in.seekg(0);
  std::getline(in, line);
  while (std::getline(in, line)) {
    ++rows;
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = line.find(',', b + 1);
    total += std::stod(line.substr(b + 1, c - b - 1));
  }
  EXPECT_EQ(rows, 9);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NE(csv.find("\nothers,others,"), std::string::npos);
}

TEST(MatchCsv, NonBinaryImagesHaveNoHammingColumn) {
  const auto ds = load_digits_csv(std::string(QPM_DATA_DIR) + "/digits_head.csv");
  const auto db = ds.select({0, 1, 2, 3, 4, 5, 6, 7});
  EXPECT_FALSE(io::hamming_column(db[0], db).has_value());
}

TEST(MatchJson, Fields) {
  const auto db = toy16_database();
  MatchConfig cfg;
  cfg.iterations = std::size_t{5};
  const auto res = run_pipeline(db, binary_image(0), cfg);
  const auto j = io::match_json(res.report, db.labels(), io::hamming_column(binary_image(0), db), res.candidates);
  EXPECT_EQ(j["iterations"], 5);
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_EQ(j["match_index"], 0);
  EXPECT_EQ(j["indices"].size(), 8u);
  EXPECT_EQ(j["hamming_groups"]["1"].size(), 3u);
  EXPECT_TRUE(j["closest_index"].is_number());
}

TEST(NoiseCsv, HeaderAndRowCount) {
  const auto ds = load_digits_csv(std::string(QPM_DATA_DIR) + "/digits_head.csv");
  const auto db = ds.select({0, 1, 2, 3, 4, 5, 6, 7});
  NoiseConfig cfg;
  cfg.sigma0 = {0.1};
  cfg.seeds = {0, 1};
  const auto r = run_noise_study(db, db.images(), {0, 1, 2, 3, 4, 5, 6, 7}, cfg);
  const auto csv = io::noise_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "scheme,sigma0,seed,query,index,probability,fidelity");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 8 * 8);
  const auto summary = io::noise_summary_csv({r});
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 2);
  EXPECT_EQ(io::noise_json(r)["summary"][0]["per_seed_fidelity"].size(), 2u);
}

TEST(Svg, WellFormedAndEscaped) {
  const auto bar = svg::bar_chart("a < b & c", {"x", "y"}, {0.5, 0.25});
  EXPECT_EQ(bar.rfind("<svg", 0), 0u);
  EXPECT_NE(bar.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(bar.find("</svg>"), std::string::npos);
  EXPECT_EQ(std::count(bar.begin(), bar.end(), '<'), std::count(bar.begin(), bar.end(), '>'));
  EXPECT_THROW(svg::bar_chart("t", {}, {}), std::invalid_argument);
  EXPECT_THROW(svg::bar_chart("t", {"a"}, {1.0, 2.0}), std::invalid_argument);
  const auto line = svg::line_chart("t", {{"s", {0, 1}, {0.1, 0.2}, true, 3}});
  EXPECT_NE(line.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(line.find("#d62728"), std::string::npos);
}

}  // namespace
}  // namespace qpm
