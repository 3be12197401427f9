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

#pragma once

// File formats: CSV tables (UTF-8, LF, header row, 17 significant digits)
// and JSON documents for reports and trained parameters.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "qpm/aae.hpp"
#include "qpm/encoding.hpp"
#include "qpm/grover.hpp"
#include "qpm/matcher.hpp"
#include "qpm/noise_study.hpp"

namespace qpm::io {

using nlohmann::json;

/// Shortest round-trippable form is not required; fixed 17 significant
/// digits keeps outputs byte-stable.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  template <typename... Cells>
  CsvWriter& add(const Cells&... cells) {
    std::vector<std::string> r;
    (r.push_back(cell(cells)), ...);
    if (r.size() != columns_) throw std::logic_error("csv row has wrong column count");
    return row(r);
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double v) { return fmt_double(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <typename T>
    requires std::is_integral_v<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  CsvWriter& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    return *this;
  }

  std::size_t columns_;
  std::ostringstream out_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

inline json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("invalid JSON in '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Trained parameters: {n_qubits, n_layers, theta, seed, final_fidelity}

inline json trained_params_json(const TrainResult& r) {
  return json{{"n_qubits", r.ansatz.n_qubits},
              {"n_layers", r.ansatz.n_layers},
              {"theta", r.ansatz.theta},
              {"seed", r.seed},
              {"final_fidelity", r.report.final_fidelity}};
}

inline Ansatz ansatz_from_json(const json& j) {
  Ansatz a;
  try {
    a.n_qubits = j.at("n_qubits").get<std::size_t>();
    a.n_layers = j.at("n_layers").get<std::size_t>();
    a.theta = j.at("theta").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("bad trained-parameter JSON: ") + e.what());
  }
  a.validate();
  return a;
}

inline std::string loss_csv(const TrainReport& r) {
  CsvWriter w({"iteration", "loss"});
  for (std::size_t i = 0; i < r.loss_history.size(); ++i) w.add(i, r.loss_history[i]);
  return w.str();
}

// ---------------------------------------------------------------------------
// Match reports

/// Optional per-index Hamming distances to the query (binary images only).
using HammingColumn = std::optional<std::vector<int>>;

inline HammingColumn hamming_column(const ImageData& query, const Database& db) {
  if (!query.is_binary() || !db[0].is_binary()) return std::nullopt;
  std::vector<int> hd;
  for (const auto& im : db.images()) hd.push_back(hamming_distance(query, im));
  return hd;
}

namespace detail {
inline std::vector<int> group_rank(const std::vector<int>& hd) {
  std::vector<int> sorted = hd;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> rank;
  for (int d : hd) rank.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), d) - sorted.begin()));
  return rank;
}
}  // namespace detail

/// index,label,probability,similarity,hamming_distance,group; last row "others".
inline std::string match_csv(const MatchReport& r, const std::vector<std::string>& labels, const HammingColumn& hd) {
  CsvWriter w({"index", "label", "probability", "similarity", "hamming_distance", "group"});
  const auto rank = hd ? detail::group_rank(*hd) : std::vector<int>{};
  for (std::size_t x = 0; x < r.n_index(); ++x) {
    w.add(std::to_string(x), labels.at(x), r.probability[x], r.similarity(x),
          hd ? std::to_string((*hd)[x]) : std::string(), hd ? std::to_string(rank[x]) : std::string());
  }
  w.add(std::string("others"), std::string("others"), r.others, std::string(), std::string(), std::string());
  return w.str();
}

inline json match_json(const MatchReport& r, const std::vector<std::string>& labels, const HammingColumn& hd,
                       const std::vector<std::size_t>& candidates) {
  json per_index = json::array();
  for (std::size_t x = 0; x < r.n_index(); ++x) {
    json e{{"index", x}, {"label", labels.at(x)}, {"probability", r.probability[x]}, {"similarity", r.similarity(x)}};
    if (hd) e["hamming_distance"] = (*hd)[x];
    per_index.push_back(std::move(e));
  }
  json j{{"iterations", r.iterations},
         {"shots", r.shots},
         {"mode", r.shots == 0 ? "exact" : "sampled"},
         {"indices", std::move(per_index)},
         {"others_probability", r.others},
         {"match_index", r.match_index},
         {"tie", r.tie},
         {"exact_match", r.exact_match},
         {"candidates", candidates}};
  j["closest_index"] = r.closest_index ? json(*r.closest_index) : json(nullptr);
  if (hd) {
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t x = 0; x < hd->size(); ++x) groups[(*hd)[x]].push_back(x);
    json g = json::object();
    for (const auto& [d, idx] : groups) g[std::to_string(d)] = idx;
    j["hamming_groups"] = std::move(g);
  }
  return j;
}

inline json curve_json(const AnalyticCurve& c) {
  return json{{"beta", c.beta}, {"omega", c.omega}};
}

// ---------------------------------------------------------------------------
// Noise study

inline std::string noise_csv(const NoiseReport& r) {
  CsvWriter w({"scheme", "sigma0", "seed", "query", "index", "probability", "fidelity"});
  const std::string scheme(to_string(r.scheme));
  for (const auto& row : r.rows) w.add(scheme, row.sigma0, row.seed, row.query, row.index, row.probability, row.fidelity);
  return w.str();
}

inline std::string noise_summary_csv(const std::vector<NoiseReport>& reports) {
  CsvWriter w({"scheme", "sigma0", "mean_fidelity", "argmax_accuracy"});
  for (const auto& r : reports)
    for (const auto& s : r.summary) w.add(std::string(to_string(r.scheme)), s.sigma0, s.mean_fidelity, s.argmax_accuracy);
  return w.str();
}

inline json noise_json(const NoiseReport& r) {
  json s = json::array();
  for (std::size_t i = 0; i < r.summary.size(); ++i) {
    const auto& e = r.summary[i];
    s.push_back({{"sigma0", e.sigma0},
                 {"mean_fidelity", e.mean_fidelity},
                 {"argmax_accuracy", e.argmax_accuracy},
                 {"per_seed_fidelity", r.per_seed_fidelity[i]},
                 {"mean_probability", e.mean_probability}});
  }
  return json{{"scheme", std::string(to_string(r.scheme))}, {"clean_probability", r.clean}, {"summary", std::move(s)}};
}

}  // namespace qpm::io
