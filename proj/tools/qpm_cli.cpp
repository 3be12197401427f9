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

// qpm: batch front-end for the pattern-matching experiments.
//
//   qpm encode       amplitude vector of one image or of a whole database
//   qpm train-aae    train an ansatz for a query or database state
//   qpm match        index distribution with optional amplification
//   qpm grover-scan  simulated and analytic probability curves over t
//   qpm noise-study  encoding-noise sweep on the digits data
//
// Every option can also come from a JSON config (--config); explicit flags
// win over the file. Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpm/io.hpp"
#include "qpm/qpm.hpp"
#include "qpm/svg.hpp"

namespace {

using nlohmann::json;
using qpm::io::CsvWriter;
using qpm::io::fmt_double;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A flag value that may also be filled from the config file.
template <typename T>
struct Param {
  T value{};
  std::vector<CLI::Option*> opts;  // one per subcommand that exposes the flag
  bool from_config = false;

  Param() = default;
  Param(T v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  void bind(CLI::Option* o) { opts.push_back(o); }
  bool on_command_line() const {
    return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
  }
  bool given() const { return on_command_line() || from_config; }
};

struct Options {
  Param<std::string> config;
  Param<std::uint64_t> seed{0};
  Param<std::string> out{"."};
  Param<std::vector<std::string>> format{{"csv", "json"}};
  Param<bool> exact{true};
  Param<std::uint64_t> shots{0};
  Param<std::string> dataset{"toy16"};
  Param<std::string> digits{""};
  Param<std::string> scheme{"frqi"};
  Param<std::string> query;
  Param<std::string> image;
  Param<bool> whole_database{false};
  Param<std::size_t> t{0};
  Param<std::int64_t> auto_m{0};
  Param<std::size_t> t_min{0};
  Param<std::size_t> t_max{15};
  Param<std::string> prep{"ideal"};
  Param<std::string> query_params;
  Param<std::string> database_params;
  Param<double> threshold{1.0};
  Param<std::string> target{"query"};
  Param<std::size_t> layers{0};
  Param<std::size_t> iterations{0};
  Param<std::size_t> lr_switch{0};
  Param<std::size_t> restarts{1};
  Param<std::vector<double>> sigma0{{0.05, 0.1, 0.3, 0.5}};
  Param<std::size_t> n_seeds{20};
  Param<std::string> schemes{"both"};
};

template <typename T>
void fill(Param<T>& p, const json& cfg, const char* key) {
  if (p.on_command_line() || !cfg.contains(key)) return;
  try {
    p.value = cfg.at(key).get<T>();
    p.from_config = true;
  } catch (const json::exception& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
}

void merge_config(Options& o, const std::string& command) {
  if (!o.config.given()) return;
  const json cfg = qpm::io::read_json_file(o.config.value);
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  if (!cfg.contains("schema_version") || cfg["schema_version"] != kSchemaVersion)
    throw UsageError("config needs \"schema_version\": " + std::to_string(kSchemaVersion));
  if (cfg.contains("command") && cfg["command"] != command)
    throw UsageError("config is for command '" + cfg["command"].get<std::string>() + "', not '" + command + "'");

  static const std::vector<std::string> kKnown = {
      "schema_version", "command", "seed", "out", "format", "exact", "shots", "dataset", "digits",
      "scheme", "query", "image", "database", "t", "auto_m", "t_min", "t_max", "prep",
      "query_params", "database_params", "threshold", "target", "layers", "iterations", "lr_switch", "restarts", "sigma0",
      "seeds", "schemes"};
  for (const auto& [k, v] : cfg.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), k) == kKnown.end())
      throw UsageError("unknown config key '" + k + "'");
  }
  fill(o.seed, cfg, "seed");
  fill(o.out, cfg, "out");
  if (cfg.contains("format") && cfg["format"].is_string() && !o.format.on_command_line())
    o.format.value = {cfg["format"].get<std::string>()};
  else
    fill(o.format, cfg, "format");
  fill(o.exact, cfg, "exact");
  fill(o.shots, cfg, "shots");
  fill(o.dataset, cfg, "dataset");
  fill(o.digits, cfg, "digits");
  fill(o.scheme, cfg, "scheme");
  fill(o.query, cfg, "query");
  fill(o.image, cfg, "image");
  fill(o.whole_database, cfg, "database");
  fill(o.t, cfg, "t");
  fill(o.auto_m, cfg, "auto_m");
  fill(o.t_min, cfg, "t_min");
  fill(o.t_max, cfg, "t_max");
  fill(o.prep, cfg, "prep");
  fill(o.query_params, cfg, "query_params");
  fill(o.database_params, cfg, "database_params");
  fill(o.threshold, cfg, "threshold");
  fill(o.target, cfg, "target");
  fill(o.layers, cfg, "layers");
  fill(o.iterations, cfg, "iterations");
  fill(o.lr_switch, cfg, "lr_switch");
  fill(o.restarts, cfg, "restarts");
  fill(o.sigma0, cfg, "sigma0");
  fill(o.n_seeds, cfg, "seeds");
  fill(o.schemes, cfg, "schemes");
}

// --------------------------------------------------------------------------

bool wants(const Options& o, const std::string& f) {
  return std::find(o.format.value.begin(), o.format.value.end(), f) != o.format.value.end();
}

std::uint64_t shots_of(const Options& o) {
  if (o.shots.given() && o.exact.on_command_line())
    throw UsageError("--exact and --shots are mutually exclusive");
  return o.shots.given() ? o.shots.value : 0;
}

std::filesystem::path out_path(const Options& o, const std::string& name) {
  return std::filesystem::path(o.out.value) / name;
}

void emit(const Options& o, const std::string& name, const std::string& content) {
  const auto p = out_path(o, name);
  qpm::io::write_file(p.string(), content);
  std::cout << "wrote " << p.string() << "\n";
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

struct Corpus {
  qpm::Database database;
  std::function<qpm::ImageData(const std::string&)> image;
  std::function<std::size_t(const std::string&)> index_of;  // for argmax checks, npos when absent
};

qpm::DigitsDataset load_digits(const Options& o) {
  if (o.digits.value.empty()) throw UsageError("dataset 'digits' needs --digits PATH");
  return qpm::load_digits_csv(o.digits.value);
}

Corpus make_corpus(const Options& o) {
  if (o.dataset.value == "toy16") {
    return {qpm::toy16_database(), [](const std::string& n) { return qpm::binary_image(qpm::parse_toy_name(n)); },
            [](const std::string& n) {
              const unsigned h = qpm::parse_toy_name(n);
              return h % 2 == 0 ? std::size_t{h / 2} : std::string::npos;
            }};
  }
  if (o.dataset.value == "digits") {
    auto ds = std::make_shared<qpm::DigitsDataset>(load_digits(o));
    auto parse_label = [](const std::string& n) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(n, &pos);
        if (pos != n.size()) throw std::invalid_argument(n);
        return v;
      } catch (const std::exception&) {
        throw UsageError("digit image name must be an integer label, got '" + n + "'");
      }
    };
    return {ds->select({0, 1, 2, 3, 4, 5, 6, 7}),
            [ds, parse_label](const std::string& n) { return ds->first_with_label(parse_label(n)); },
            [parse_label](const std::string& n) {
              const int v = parse_label(n);
              return v >= 0 && v < 8 ? static_cast<std::size_t>(v) : std::string::npos;
            }};
  }
  throw UsageError("unknown dataset '" + o.dataset.value + "' (toy16 or digits)");
}

const std::string& require(const Param<std::string>& p, const char* flag) {
  if (!p.given() || p.value.empty()) throw UsageError(std::string("missing required ") + flag);
  return p.value;
}

// --------------------------------------------------------------------------

int cmd_encode(const Options& o) {
  const auto scheme = qpm::parse_encoding_scheme(o.scheme.value);
  const Corpus c = make_corpus(o);
  std::vector<double> amps;
  std::string name;
  if (o.whole_database.value) {
    amps = qpm::database_state(c.database, scheme).real_part();
    name = "database";
  } else {
    name = require(o.image, "--image");
    amps = qpm::encode_image(c.image(name), scheme);
  }
  const std::string stem = "encode_" + safe_name(o.dataset.value + "_" + name) + "_" + std::string(qpm::to_string(scheme));
  if (wants(o, "csv")) {
    CsvWriter w({"basis_index", "amplitude"});
    for (std::size_t i = 0; i < amps.size(); ++i) w.add(i, amps[i]);
    emit(o, stem + ".csv", w.str());
  }
  if (wants(o, "json")) {
    json j{{"scheme", std::string(qpm::to_string(scheme))},
           {"n_qubits", qpm::log2_exact(amps.size())},
           {"amplitudes", amps}};
    emit(o, stem + ".json", j.dump(2) + "\n");
  }
  return 0;
}

int cmd_train_aae(const Options& o) {
  const auto scheme = qpm::parse_encoding_scheme(o.scheme.value);
  const Corpus c = make_corpus(o);
  std::vector<double> target;
  qpm::TrainConfig cfg;
  std::size_t layers = 0;
  std::string label;
  if (o.target.value == "query") {
    label = require(o.query, "--query");
    target = qpm::encode_image(c.image(label), scheme);
    cfg = qpm::query_train_config();
    layers = 3;
  } else if (o.target.value == "database") {
    target = qpm::database_state(c.database, scheme).real_part();
    cfg = qpm::database_train_config();
    layers = 6;
    label = "database";
  } else {
    throw UsageError("--target must be query or database");
  }
  if (o.layers.given()) layers = o.layers.value;
  if (o.iterations.given()) cfg.iterations = o.iterations.value;
  if (o.lr_switch.given()) cfg.learning_rate.switch_after = o.lr_switch.value;
  const auto shots = shots_of(o);
  cfg.exact = shots == 0;
  if (shots) cfg.shots = shots;
  cfg.seed = o.seed.value;

  if (o.restarts.value == 0) throw UsageError("--restarts must be >= 1");
  const auto result =
      qpm::train_best_of(qpm::TargetData::make(target), layers, cfg, qpm::restart_seeds(cfg.seed, o.restarts.value));
  std::cout << "trained " << label << ": " << result.ansatz.theta.size() << " parameters, final fidelity "
            << fmt_double(result.report.final_fidelity) << " (" << result.report.wall_seconds << " s)\n";
  const std::string stem = "aae_" + safe_name(label);
  emit(o, stem + "_params.json", qpm::io::trained_params_json(result).dump(2) + "\n");
  emit(o, stem + "_loss.csv", qpm::io::loss_csv(result.report));
  return 0;
}

qpm::MatchConfig match_config(const Options& o) {
  qpm::MatchConfig cfg;
  cfg.scheme = qpm::parse_encoding_scheme(o.scheme.value);
  cfg.shots = shots_of(o);
  cfg.seed = o.seed.value;
  cfg.threshold = o.threshold.value;
  if (o.auto_m.given()) {
    if (o.t.given()) throw UsageError("--t and --auto-m are mutually exclusive");
    cfg.iterations = qpm::AutoIterations{o.auto_m.value};
  } else {
    cfg.iterations = o.t.value;
  }
  if (o.prep.value == "ideal") {
    cfg.prep = qpm::PrepMode::kIdeal;
  } else if (o.prep.value == "aae") {
    cfg.prep = qpm::PrepMode::kAaeTrained;
    if (o.query_params.given()) cfg.query_ansatz = qpm::io::ansatz_from_json(qpm::io::read_json_file(o.query_params.value));
    if (o.database_params.given())
      cfg.database_ansatz = qpm::io::ansatz_from_json(qpm::io::read_json_file(o.database_params.value));
    cfg.query_training.seed = o.seed.value;
    cfg.database_training.seed = o.seed.value;
    if (o.restarts.given()) cfg.restarts = o.restarts.value;
  } else {
    throw UsageError("--prep must be ideal or aae");
  }
  return cfg;
}

int cmd_match(const Options& o) {
  const std::string& qname = require(o.query, "--query");
  const Corpus c = make_corpus(o);
  const auto query = c.image(qname);
  const auto cfg = match_config(o);
  const auto res = qpm::run_pipeline(c.database, query, cfg);
  const auto hd = qpm::io::hamming_column(query, c.database);
  const auto& labels = c.database.labels();

  std::cout << "query " << qname << ", t=" << res.iterations << ", match " << labels[res.report.match_index]
            << ", others " << fmt_double(res.report.others) << "\n";
  const std::string stem = "match_" + safe_name(qname) + "_t" + std::to_string(res.iterations);
  if (wants(o, "csv")) emit(o, stem + ".csv", qpm::io::match_csv(res.report, labels, hd));
  if (wants(o, "json")) {
    json j = qpm::io::match_json(res.report, labels, hd, res.candidates);
    j["query"] = qname;
    j["dataset"] = o.dataset.value;
    j["scheme"] = o.scheme.value;
    j["prep"] = o.prep.value;
    j["seed"] = o.seed.value;
    j["beta"] = res.beta;
    if (res.curve) j["curve"] = qpm::io::curve_json(*res.curve);
    emit(o, stem + ".json", j.dump(2) + "\n");
  }
  if (wants(o, "svg")) {
    auto names = labels;
    names.push_back("others");
    auto values = res.report.probability;
    values.push_back(res.report.others);
    emit(o, stem + ".svg", qpm::svg::bar_chart("query " + qname + ", t = " + std::to_string(res.iterations), names, values));
  }
  return 0;
}

int cmd_grover_scan(const Options& o) {
  const std::string& qname = require(o.query, "--query");
  if (o.t_min.value > o.t_max.value) throw UsageError("--t-min exceeds --t-max");
  const Corpus c = make_corpus(o);
  const auto query = c.image(qname);
  auto cfg = match_config(o);
  cfg.iterations = std::size_t{0};
  const auto base = qpm::run_pipeline(c.database, query, cfg);
  if (!base.curve) throw std::runtime_error("overlap is degenerate; nothing to amplify");
  const auto& curve = *base.curve;
  const std::size_t n_data = qpm::data_qubits(query, cfg.scheme);
  const std::size_t n_d = std::size_t{1} << n_data;
  const auto hd = qpm::io::hamming_column(query, c.database);
  const auto& labels = c.database.labels();
  const auto prep = qpm::Preparation::from_state(base.psi_prime);
  qpm::AAOperators ops(n_data, base.psi_prime.n_qubits() - n_data, prep);
  const auto traj = qpm::grover_run(ops, o.t_max.value);

  CsvWriter w({"t", "index", "label", "simulated", "analytic", "hamming_distance"});
  std::vector<qpm::svg::Series> series;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    series.push_back({labels[x] + " simulated", {}, {}, false, static_cast<int>(x)});
    series.push_back({labels[x] + " analytic", {}, {}, true, static_cast<int>(x)});
  }
  for (std::size_t t = o.t_min.value; t <= o.t_max.value; ++t) {
    qpm::MatchReport r = qpm::report_from_state(traj[t], n_data, t, cfg.shots, qpm::mix_seed(cfg.seed, t));
    double analytic_sum = 0.0;
    for (std::size_t x = 0; x < labels.size(); ++x) {
      const double a = qpm::hit_probability(curve, x * n_d, static_cast<double>(t));
      analytic_sum += a;
      w.add(t, std::to_string(x), labels[x], r.probability[x], a, hd ? std::to_string((*hd)[x]) : std::string());
      series[2 * x].x.push_back(static_cast<double>(t));
      series[2 * x].y.push_back(r.probability[x]);
      series[2 * x + 1].x.push_back(static_cast<double>(t));
      series[2 * x + 1].y.push_back(a);
    }
    w.add(t, std::string("others"), std::string("others"), r.others, 1.0 - analytic_sum, std::string());
  }
  const std::string stem = "grover_scan_" + safe_name(qname);
  std::cout << "query " << qname << ": beta " << fmt_double(curve.beta) << ", omega " << fmt_double(curve.omega)
            << "\n";
  if (wants(o, "csv")) emit(o, stem + ".csv", w.str());
  if (wants(o, "json")) {
    json j{{"query", qname}, {"beta", curve.beta}, {"omega", curve.omega}, {"t_min", o.t_min.value},
           {"t_max", o.t_max.value}};
    j["optimal_iterations"] = {{"m0", qpm::optimal_iterations(curve.beta, 0)},
                               {"m1", qpm::optimal_iterations(curve.beta, 1)}};
    if (hd) {
      std::map<int, std::vector<std::size_t>> groups;
      for (std::size_t x = 0; x < hd->size(); ++x) groups[(*hd)[x]].push_back(x);
      json g = json::object();
      for (const auto& [d, idx] : groups) g[std::to_string(d)] = idx;
      j["hamming_groups"] = g;
    }
    emit(o, stem + ".json", j.dump(2) + "\n");
  }
  if (wants(o, "svg")) emit(o, stem + ".svg", qpm::svg::line_chart("query " + qname, series));
  return 0;
}

int cmd_noise_study(const Options& o) {
  const auto ds = load_digits(o);
  const auto db = ds.select({0, 1, 2, 3, 4, 5, 6, 7});
  std::vector<qpm::ImageData> queries(db.images());
  std::vector<std::size_t> idx{0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<qpm::EncodingScheme> schemes;
  if (o.schemes.value == "both") {
    schemes = {qpm::EncodingScheme::kFrqi, qpm::EncodingScheme::kNeqr};
  } else {
    schemes = {qpm::parse_encoding_scheme(o.schemes.value)};
  }
  std::vector<qpm::NoiseReport> reports;
  for (auto s : schemes) {
    qpm::NoiseConfig cfg;
    cfg.scheme = s;
    cfg.sigma0 = o.sigma0.value;
    cfg.seeds = qpm::NoiseConfig::seed_range(o.seed.value, o.n_seeds.value);
    reports.push_back(qpm::run_noise_study(db, queries, idx, cfg));
    const std::string name = "noise_" + std::string(qpm::to_string(s));
    if (wants(o, "csv")) emit(o, name + ".csv", qpm::io::noise_csv(reports.back()));
    if (wants(o, "json")) emit(o, name + ".json", qpm::io::noise_json(reports.back()).dump(2) + "\n");
    for (const auto& sum : reports.back().summary)
      std::cout << qpm::to_string(s) << " sigma0 " << sum.sigma0 << ": mean fidelity " << fmt_double(sum.mean_fidelity)
                << "\n";
  }
  if (wants(o, "csv")) emit(o, "noise_summary.csv", qpm::io::noise_summary_csv(reports));
  return 0;
}

// --------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  o.config.bind(sub->add_option("--config", o.config.value, "JSON config file"));
  o.seed.bind(sub->add_option("--seed", o.seed.value, "Global seed"));
  o.out.bind(sub->add_option("--out", o.out.value, "Output directory"));
  o.format.bind(sub->add_option("--format", o.format.value, "Output formats: csv, json, svg")
                     ->check(CLI::IsMember({"csv", "json", "svg"}))
                     ->delimiter(','));
  o.exact.bind(sub->add_flag("--exact", o.exact.value, "Exact probabilities (default)"));
  o.shots.bind(sub->add_option("--shots", o.shots.value, "Sample N shots instead of exact mode")
                    ->check(CLI::PositiveNumber));
  o.dataset.bind(sub->add_option("--dataset", o.dataset.value, "toy16 or digits"));
  o.digits.bind(sub->add_option("--digits", o.digits.value, "Digits CSV path"));
  o.scheme.bind(sub->add_option("--scheme", o.scheme.value, "frqi or neqr"));
}

void add_match_like(CLI::App* sub, Options& o) {
  o.query.bind(sub->add_option("--query", o.query.value, "Query image (0h..Fh or digit label)"));
  o.prep.bind(sub->add_option("--prep", o.prep.value, "ideal or aae"));
  o.query_params.bind(sub->add_option("--query-params", o.query_params.value, "Trained query ansatz JSON"));
  o.database_params.bind(sub->add_option("--database-params", o.database_params.value, "Trained database ansatz JSON"));
  o.threshold.bind(sub->add_option("--threshold", o.threshold.value, "Similarity threshold in [0,1]"));
  o.restarts.bind(sub->add_option("--restarts", o.restarts.value, "AAE mode: training seeds per ansatz (default 5)"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum pattern matching experiments"};
  app.require_subcommand(1);
  Options o;

  auto* encode = app.add_subcommand("encode", "Write the amplitude vector of an image or database");
  add_common(encode, o);
  o.image.bind(encode->add_option("--image", o.image.value, "Image name"));
  o.whole_database.bind(encode->add_flag("--database", o.whole_database.value, "Encode the whole database"));

  auto* train = app.add_subcommand("train-aae", "Train an approximate amplitude encoder");
  add_common(train, o);
  o.target.bind(train->add_option("--target", o.target.value, "query or database"));
  o.query.bind(train->add_option("--query", o.query.value, "Query image when --target query"));
  o.layers.bind(train->add_option("--layers", o.layers.value, "Ansatz layers (3 for query, 6 for database)"));
  o.iterations.bind(train->add_option("--iterations", o.iterations.value, "Parameter updates"));
  o.restarts.bind(train->add_option("--restarts", o.restarts.value, "Train from this many seeds, keep the best"));
  o.lr_switch.bind(train->add_option("--lr-switch", o.lr_switch.value, "Update after which the learning rate drops"));

  auto* match = app.add_subcommand("match", "Run the pattern matcher");
  add_common(match, o);
  add_match_like(match, o);
  o.t.bind(match->add_option("--t", o.t.value, "Amplification iterations"));
  o.auto_m.bind(match->add_option("--auto-m", o.auto_m.value, "Pick t from the optimal-iteration formula with this m"));

  auto* scan = app.add_subcommand("grover-scan", "Probability curves over amplification steps");
  add_common(scan, o);
  add_match_like(scan, o);
  o.t_min.bind(scan->add_option("--t-min", o.t_min.value, "First t"));
  o.t_max.bind(scan->add_option("--t-max", o.t_max.value, "Last t"));

  auto* noise = app.add_subcommand("noise-study", "Encoding-noise sweep on digits");
  add_common(noise, o);
  o.sigma0.bind(noise->add_option("--sigma0", o.sigma0.value, "Relative noise scales")->delimiter(','));
  o.n_seeds.bind(noise->add_option("--seeds", o.n_seeds.value, "Number of seeds (starting at --seed)"));
  o.schemes.bind(noise->add_option("--schemes", o.schemes.value, "frqi, neqr or both"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    merge_config(o, command);
    std::filesystem::create_directories(o.out.value);
    if (command == "encode") return cmd_encode(o);
    if (command == "train-aae") return cmd_train_aae(o);
    if (command == "match") return cmd_match(o);
    if (command == "grover-scan") return cmd_grover_scan(o);
    if (command == "noise-study") return cmd_noise_study(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << sub->help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
