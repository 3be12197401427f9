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

// Inversion-test pattern matching. The query preparation B is undone on the
// data register of the database state, so overlap with the query becomes
// overlap with |0>_D:
//   |psi'> = (B^dag (x) 1_I) A |0>,
//   P(index = x) = |<x|_I <0|_D |psi'>|^2 = |<query|data(x)>|^2 / N_I.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qpm/aae.hpp"
#include "qpm/core_sim.hpp"
#include "qpm/encoding.hpp"
#include "qpm/grover.hpp"

namespace qpm {

/// Ideal query preparation: the Householder reflection that swaps |0> and
/// |query>. It is Hermitian, so B = B^dag and B|0> = |query> exactly.
class HouseholderPrep {
 public:
  explicit HouseholderPrep(std::vector<double> query) : query_(std::move(query)), v_(query_) {
    if (!is_power_of_two(query_.size())) throw std::invalid_argument("query length must be a power of two");
    double n2 = 0.0;
    for (double q : query_) n2 += q * q;
    if (std::abs(n2 - 1.0) > 1e-9) throw std::invalid_argument("query vector is not normalized");
    for (double& x : v_) x = -x;
    v_[0] += 1.0;  // v = |0> - |query>
    vv_ = 0.0;
    for (double x : v_) vv_ += x * x;
  }

  std::size_t n_qubits() const { return log2_exact(query_.size()); }
  const std::vector<double>& query() const { return query_; }

  /// Applies B on qubits 0..n_D-1 of `state`, once per index block.
  void apply(Statevector& state) const {
    const std::size_t n_d = query_.size();
    if (state.dim() % n_d != 0 || state.n_qubits() < n_qubits())
      throw std::invalid_argument("query register larger than state");
    if (vv_ < 1e-30) return;  // query == |0>
    auto amps = state.mutable_amplitudes();
    for (std::size_t base = 0; base < amps.size(); base += n_d) {
      Complex proj = 0.0;
      for (std::size_t j = 0; j < n_d; ++j) proj += v_[j] * amps[base + j];
      const Complex f = 2.0 * proj / vv_;
      for (std::size_t j = 0; j < n_d; ++j) amps[base + j] -= f * v_[j];
    }
  }

 private:
  std::vector<double> query_;
  std::vector<double> v_;
  double vv_;
};

/// A: a circuit on n_D + n_I qubits, or an injected state.
using DatabasePrep = std::variant<Circuit, Statevector>;
/// B: a circuit on n_D qubits, or an ideal (Householder) preparation.
using QueryPrep = std::variant<Circuit, HouseholderPrep>;

inline std::size_t query_qubits(const QueryPrep& q) {
  return std::visit([](const auto& p) { return p.n_qubits(); }, q);
}

inline std::size_t database_qubits(const DatabasePrep& d) {
  return std::visit([](const auto& p) { return p.n_qubits(); }, d);
}

/// Preparation of |psi'>. When both sides are circuits the result keeps the
/// composed circuit U = (B^dag (x) 1) A for the diffusion; otherwise only the
/// state is kept and diffusion falls back to the dense reflection.
inline Preparation build_matching_preparation(const DatabasePrep& database, const QueryPrep& query) {
  const std::size_t n_total = database_qubits(database);
  const std::size_t n_d = query_qubits(query);
  if (n_d > n_total) throw std::invalid_argument("query register larger than database state");

  if (const auto* a = std::get_if<Circuit>(&database)) {
    if (const auto* b = std::get_if<Circuit>(&query)) {
      Circuit u = *a;
      const Circuit b_dag = b->adjoint();
      for (const auto& g : b_dag.gates()) u.add(g);
      return Preparation::from_circuit(std::move(u));
    }
  }
  Statevector psi = std::holds_alternative<Circuit>(database)
                        ? apply_circuit(Statevector(n_total), std::get<Circuit>(database))
                        : std::get<Statevector>(database);
  if (const auto* b = std::get_if<Circuit>(&query)) {
    apply_circuit_inplace(psi, *b, Adjoint::kYes, 0);
  } else {
    std::get<HouseholderPrep>(query).apply(psi);
  }
  return Preparation::from_state(std::move(psi));
}

inline Statevector build_matching_state(const DatabasePrep& database, const QueryPrep& query) {
  return build_matching_preparation(database, query).state();
}

// ---------------------------------------------------------------------------

struct MatchReport {
  std::size_t n_data = 0;
  std::size_t iterations = 0;
  std::uint64_t shots = 0;  // 0 = exact
  std::vector<double> probability;  // P(index = x)
  double others = 0.0;              // post-selection failure mass
  std::size_t match_index = 0;      // argmax, lowest index on ties
  bool tie = false;
  std::optional<std::size_t> closest_index;
  bool exact_match = false;

  std::size_t n_index() const { return probability.size(); }

  /// sqrt(P_x / max_y P_y): the query overlap relative to the best index.
  /// Amplification scales every target amplitude by the same factor, so this
  /// survives any number of iterations.
  double similarity(std::size_t x) const {
    const double pmax = probability[match_index];
    return pmax > 0.0 ? std::sqrt(probability[x] / pmax) : 0.0;
  }
};

namespace detail {

inline void finish_report(MatchReport& r) {
  const auto& p = r.probability;
  r.match_index = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  const double best = p[r.match_index];
  r.tie = std::count_if(p.begin(), p.end(), [&](double v) { return best - v <= 1e-12 * best; }) > 1;

  // An exact match has |<query|data(x)>| = 1, i.e. P = 1/N_I before
  // amplification. Sampled reports use a 3-sigma binomial margin.
  if (r.iterations == 0) {
    const double ideal = 1.0 / static_cast<double>(p.size());
    const double margin =
        r.shots == 0 ? 1e-9 : 3.0 * std::sqrt(ideal * (1.0 - ideal) / static_cast<double>(r.shots)) + 1e-12;
    r.exact_match = best >= ideal - margin;
  }
  std::optional<std::size_t> closest;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (r.exact_match && x == r.match_index) continue;
    if (!closest || p[x] > p[*closest]) closest = x;
  }
  r.closest_index = r.exact_match ? closest : std::optional<std::size_t>(r.match_index);
}

}  // namespace detail

/// Reads the post-selected index distribution off a state: outcomes with the
/// data register all zero count toward P(index), everything else is "others".
inline MatchReport report_from_state(const Statevector& state, std::size_t n_data, std::size_t iterations,
                                     std::uint64_t shots, std::uint64_t seed) {
  if (n_data > state.n_qubits()) throw std::invalid_argument("data register larger than state");
  MatchReport r;
  r.n_data = n_data;
  r.iterations = iterations;
  r.shots = shots;
  const std::size_t n_d = std::size_t{1} << n_data;
  const std::size_t n_i = state.dim() / n_d;
  r.probability.assign(n_i, 0.0);
  if (shots == 0) {
    double total = 0.0;
    for (std::size_t k = 0; k < n_i; ++k) {
      r.probability[k] = std::norm(state[k * n_d]);
      total += r.probability[k];
    }
    r.others = std::max(0.0, state.norm_squared() - total);
  } else {
    const Histogram h = sample_counts(state, shots, seed);
    std::uint64_t hits = 0;
    for (const auto& [x, n] : h.counts) {
      if (data_register_zero(x, n_data)) {
        r.probability[x / n_d] = static_cast<double>(n) / static_cast<double>(shots);
        hits += n;
      }
    }
    r.others = static_cast<double>(shots - hits) / static_cast<double>(shots);
  }
  detail::finish_report(r);
  return r;
}

/// Runs t amplification steps on |psi'> and measures. shots == 0 is exact.
inline MatchReport index_distribution(const Preparation& prep, std::size_t n_data, std::size_t t,
                                      std::uint64_t shots = 0, std::uint64_t seed = 0) {
  AAOperators ops(n_data, prep.n_qubits() - n_data, prep);
  Statevector s = prep.state();
  for (std::size_t i = 0; i < t; ++i) {
    apply_oracle_inplace(s, n_data);
    apply_diffusion_inplace(s, prep);
  }
  return report_from_state(s, n_data, t, shots, seed);
}

/// Indices with similarity >= eps, most similar first (ties by index).
/// Indices with zero probability never qualify.
inline std::vector<std::size_t> candidate_set(const MatchReport& report, double eps) {
  if (report.probability.empty()) throw std::invalid_argument("candidate_set: empty report");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("candidate_set: threshold must be in [0, 1]");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < report.n_index(); ++x) {
    if (report.probability[x] > 0.0 && report.similarity(x) >= eps - 1e-12) out.push_back(x);
  }
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    return report.probability[a] > report.probability[b];
  });
  return out;
}

inline int hamming_distance(const ImageData& a, const ImageData& b) {
  if (!a.is_binary() || !b.is_binary()) throw std::invalid_argument("hamming distance needs binary images");
  if (a.n_pixels() != b.n_pixels()) throw std::invalid_argument("hamming distance: pixel counts differ");
  int d = 0;
  for (std::size_t j = 0; j < a.n_pixels(); ++j) d += a[j] != b[j];
  return d;
}

/// HD -> indices at that distance, ascending.
inline std::map<int, std::vector<std::size_t>> hamming_groups(const ImageData& query, const Database& db) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < db.size(); ++k) groups[hamming_distance(query, db[k])].push_back(k);
  return groups;
}

// ---------------------------------------------------------------------------
// End-to-end pipeline

enum class PrepMode { kIdeal, kAaeTrained };

/// Fixed t, or the closest-integer optimum for a chosen m.
struct AutoIterations {
  std::int64_t m = 0;
};
using IterationChoice = std::variant<std::size_t, AutoIterations>;

struct MatchConfig {
  EncodingScheme scheme = EncodingScheme::kFrqi;
  PrepMode prep = PrepMode::kIdeal;
  std::uint64_t shots = 0;  // 0 = exact
  std::uint64_t seed = 0;
  IterationChoice iterations = std::size_t{0};
  double threshold = 1.0;  // epsilon for the candidate set
  // AAE mode: trained parameters, or training settings when absent.
  std::optional<Ansatz> query_ansatz;
  std::optional<Ansatz> database_ansatz;
  std::size_t query_layers = 3;
  std::size_t database_layers = 6;
  TrainConfig query_training = query_train_config();
  TrainConfig database_training = database_train_config();
  std::size_t restarts = 5;  // training keeps the best of this many seeds

  void validate() const {
    if (restarts == 0) throw std::invalid_argument("restarts must be >= 1");
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must be in [0, 1]");
    if (scheme != EncodingScheme::kFrqi && scheme != EncodingScheme::kNeqr)
      throw std::invalid_argument("pipeline encodes images with frqi or neqr");
  }
};

struct PipelineResult {
  MatchReport report;
  std::optional<AnalyticCurve> curve;  // absent when the overlap is degenerate
  Statevector psi_prime{0};
  double beta = 0.0;
  std::size_t iterations = 0;
  std::vector<std::size_t> candidates;
  std::optional<Ansatz> query_ansatz;
  std::optional<Ansatz> database_ansatz;
};

/// Seeds cfg.seed, cfg.seed + 1, ... for a best-of-n training run.
inline std::vector<std::uint64_t> restart_seeds(std::uint64_t first, std::size_t n) {
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t i = 0; i < n; ++i) seeds[i] = first + i;
  return seeds;
}

inline Ansatz trained_or_train(const std::optional<Ansatz>& given, const std::vector<double>& target,
                               std::size_t layers, const TrainConfig& cfg, std::size_t restarts) {
  if (given) return *given;
  return train_best_of(TargetData::make(target), layers, cfg, restart_seeds(cfg.seed, restarts)).ansatz;
}

inline PipelineResult run_pipeline(const Database& db, const ImageData& query, const MatchConfig& config) {
  config.validate();
  const std::size_t n_data = data_qubits(query, config.scheme);
  if (data_qubits(db[0], config.scheme) != n_data) throw std::invalid_argument("query and database layouts differ");
  const auto query_vec = encode_image(query, config.scheme);

  PipelineResult out;
  std::optional<Preparation> prep;
  if (config.prep == PrepMode::kIdeal) {
    prep = build_matching_preparation(database_state(db, config.scheme), HouseholderPrep(query_vec));
  } else {
    const auto db_vec = database_state(db, config.scheme).real_part();
    out.query_ansatz = trained_or_train(config.query_ansatz, query_vec, config.query_layers, config.query_training,
                                        config.restarts);
    out.database_ansatz =
        trained_or_train(config.database_ansatz, db_vec, config.database_layers, config.database_training,
                         config.restarts);
    if (out.query_ansatz->n_qubits != n_data || out.database_ansatz->n_qubits != n_data + db.index_qubits())
      throw std::invalid_argument("trained ansatz sizes do not match the encoding");
    prep = build_matching_preparation(ansatz_circuit(*out.database_ansatz), ansatz_circuit(*out.query_ansatz));
  }
  out.psi_prime = prep->state();
  out.beta = std::sqrt(projection_probability(out.psi_prime, register_range(0, n_data), 0));

  if (const auto* fixed = std::get_if<std::size_t>(&config.iterations)) {
    out.iterations = *fixed;
  } else {
    // Exact overlap is free in simulation; sampled runs estimate it.
    const double beta = config.shots == 0
                            ? out.beta
                            : estimate_overlap(out.psi_prime, n_data, config.shots, mix_seed(config.seed, 7)).value;
    out.iterations = static_cast<std::size_t>(optimal_iterations(beta, std::get<AutoIterations>(config.iterations).m));
  }
  if (out.beta > kDegenerateOverlap && out.beta < 1.0 - kDegenerateOverlap)
    out.curve = analytic_curve(out.psi_prime, n_data);
  out.report = index_distribution(*prep, n_data, out.iterations, config.shots, config.seed);
  out.candidates = candidate_set(out.report, config.threshold);
  return out;
}

}  // namespace qpm
