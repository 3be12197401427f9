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

// Encoding-error study: Gaussian perturbation of encoded amplitude vectors
// and its effect on the pre-amplification index distribution.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qpm/encoding.hpp"
#include "qpm/random.hpp"

namespace qpm {

/// (a + eps) / |a + eps| with eps_x ~ N(0, max(a) * sigma0), i.i.d. in index order.
inline std::vector<double> perturb_amplitudes(std::span<const double> a, double sigma0, std::uint64_t seed) {
  if (sigma0 < 0.0) throw std::invalid_argument("sigma0 must be >= 0");
  std::vector<double> out(a.begin(), a.end());
  if (sigma0 == 0.0 || out.empty()) return out;
  const double sigma = *std::max_element(a.begin(), a.end()) * sigma0;
  Rng rng(seed);
  double n2 = 0.0;
  for (double& x : out) {
    x += rng.normal(0.0, sigma);
    n2 += x * x;
  }
  if (!(n2 > 0.0)) throw std::runtime_error("perturbed amplitude vector vanished");
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : out) x *= inv;
  return out;
}

/// |<a|b>|^2 for real unit vectors.
inline double state_fidelity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * s;
}

/// Closed-form P(index = x) = (1/N_I) (N_P(x) / N_P)^2 for clean images.
/// FRQI: N_P(x) = sum_j cos th_j cos th_jx + sin th_j sin th_jx.
/// NEQR: N_P(x) = number of pixels whose q-bit codes agree in every bit.
inline std::vector<double> index_probabilities_formula(const ImageData& query, const Database& db,
                                                       EncodingScheme scheme) {
  if (query.n_pixels() != db[0].n_pixels() || query.n_levels() != db[0].n_levels())
    throw std::invalid_argument("query and database images differ in shape");
  const auto n_p = static_cast<double>(query.n_pixels());
  const auto n_i = static_cast<double>(db.size());
  const auto angle = linear_angle_map(query.n_levels());
  std::vector<double> p(db.size());
  for (std::size_t x = 0; x < db.size(); ++x) {
    double agree = 0.0;
    for (std::size_t j = 0; j < query.n_pixels(); ++j) {
      if (scheme == EncodingScheme::kFrqi) {
        const double tq = angle(query[j]);
        const double td = angle(db[x][j]);
        agree += std::cos(tq) * std::cos(td) + std::sin(tq) * std::sin(td);
      } else if (scheme == EncodingScheme::kNeqr) {
        double prod = 1.0;
        for (std::size_t bit = 0; bit < query.color_qubits(); ++bit)
          prod *= (((query[j] >> bit) & 1) == ((db[x][j] >> bit) & 1)) ? 1.0 : 0.0;
        agree += prod;
      } else {
        throw std::invalid_argument("index_probabilities_formula: scheme must be frqi or neqr");
      }
    }
    const double r = agree / n_p;
    p[x] = r * r / n_i;
  }
  return p;
}

/// Same quantity from dense (possibly perturbed) vectors: (1/N_I) <query|data(x)>^2.
inline std::vector<double> index_probabilities_dense(std::span<const double> query,
                                                     const std::vector<std::vector<double>>& data) {
  std::vector<double> p(data.size());
  for (std::size_t x = 0; x < data.size(); ++x) {
    if (data[x].size() != query.size()) throw std::invalid_argument("vector length mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) s += query[j] * data[x][j];
    p[x] = s * s / static_cast<double>(data.size());
  }
  return p;
}

struct NoiseConfig {
  std::vector<double> sigma0 = {0.05, 0.1, 0.3, 0.5};
  std::vector<std::uint64_t> seeds;
  EncodingScheme scheme = EncodingScheme::kFrqi;

  void validate() const {
    if (seeds.empty()) throw std::invalid_argument("noise study needs at least one seed");
    for (double s : sigma0)
      if (s < 0.0) throw std::invalid_argument("sigma0 must be >= 0");
    if (scheme != EncodingScheme::kFrqi && scheme != EncodingScheme::kNeqr)
      throw std::invalid_argument("noise study supports frqi and neqr");
  }

  static std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
    std::vector<std::uint64_t> s(count);
    for (std::size_t i = 0; i < count; ++i) s[i] = first + i;
    return s;
  }
};

struct NoiseRow {
  double sigma0;
  std::uint64_t seed;
  std::size_t query;
  std::size_t index;
  double probability;
  double fidelity;  // clean vs noisy database component `index`
};

struct NoiseSummary {
  double sigma0 = 0.0;
  double mean_fidelity = 0.0;    // over every perturbed vector and seed
  double argmax_accuracy = 0.0;  // fraction of (seed, query) with argmax == query's own index
  std::vector<std::vector<double>> mean_probability;  // [query][index]
};

struct NoiseReport {
  EncodingScheme scheme = EncodingScheme::kFrqi;
  std::vector<std::vector<double>> clean;  // [query][index]
  std::vector<NoiseRow> rows;
  std::vector<NoiseSummary> summary;  // one per sigma0, in config order
  std::vector<std::vector<double>> per_seed_fidelity;  // [sigma0][seed]
};

/// queries[q] is compared against every database component; `query_index[q]`
/// names the component it should match (used for argmax accuracy).
/// Per (sigma0, seed) every database component and every query gets its own
/// noise stream derived from the seed; the streams do not depend on sigma0,
/// so larger sigma0 scales the same noise draw.
inline NoiseReport run_noise_study(const Database& db, const std::vector<ImageData>& queries,
                                   const std::vector<std::size_t>& query_index, const NoiseConfig& config) {
  config.validate();
  if (queries.size() != query_index.size()) throw std::invalid_argument("query/index list length mismatch");
  NoiseReport rep;
  rep.scheme = config.scheme;

  std::vector<std::vector<double>> clean_db;
  for (const auto& im : db.images()) clean_db.push_back(encode_image(im, config.scheme));
  std::vector<std::vector<double>> clean_q;
  for (const auto& q : queries) {
    clean_q.push_back(encode_image(q, config.scheme));
    rep.clean.push_back(index_probabilities_dense(clean_q.back(), clean_db));
  }

  for (double s0 : config.sigma0) {
    NoiseSummary sum;
    sum.sigma0 = s0;
    sum.mean_probability.assign(queries.size(), std::vector<double>(db.size(), 0.0));
    std::vector<double> seed_fid;
    double fid_total = 0.0;
    std::size_t fid_count = 0;
    std::size_t hits = 0;
    for (std::uint64_t seed : config.seeds) {
      std::vector<std::vector<double>> noisy_db;
      std::vector<double> db_fid;
      double seed_total = 0.0;
      for (std::size_t k = 0; k < db.size(); ++k) {
        noisy_db.push_back(perturb_amplitudes(clean_db[k], s0, mix_seed(seed, k)));
        db_fid.push_back(state_fidelity(clean_db[k], noisy_db.back()));
        seed_total += db_fid.back();
      }
      for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto noisy_q = perturb_amplitudes(clean_q[q], s0, mix_seed(seed, 1000 + q));
        seed_total += state_fidelity(clean_q[q], noisy_q);
        const auto p = index_probabilities_dense(noisy_q, noisy_db);
        const auto best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
        hits += best == query_index[q];
        for (std::size_t x = 0; x < p.size(); ++x) {
          sum.mean_probability[q][x] += p[x] / static_cast<double>(config.seeds.size());
          rep.rows.push_back({s0, seed, q, x, p[x], db_fid[x]});
        }
      }
      const std::size_t n_vec = db.size() + queries.size();
      seed_fid.push_back(seed_total / static_cast<double>(n_vec));
      fid_total += seed_total;
      fid_count += n_vec;
    }
    sum.mean_fidelity = fid_total / static_cast<double>(fid_count);
    sum.argmax_accuracy = static_cast<double>(hits) / static_cast<double>(config.seeds.size() * queries.size());
    rep.summary.push_back(std::move(sum));
    rep.per_seed_fidelity.push_back(std::move(seed_fid));
  }
  return rep;
}

}  // namespace qpm
