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

// Approximate amplitude encoding, Case 1 (target amplitudes of one sign).
//
// A layered RY/CNOT ansatz U(theta) is trained so that both the
// computational-basis distribution |<j|U|0>|^2 and the Hadamard-basis
// distribution |<j|H^n U|0>|^2 match those of the target. The loss is the mean
// of two Gaussian-kernel MMDs; gradients come from the parameter-shift rule.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpm/core_sim.hpp"
#include "qpm/random.hpp"

namespace qpm {

/// Hardware-efficient ansatz: n_layers blocks of (RY on every qubit, CNOT
/// chain 0->1->...->n-1), then one trailing RY column.
struct Ansatz {
  std::size_t n_qubits = 1;
  std::size_t n_layers = 1;
  std::vector<double> theta;

  static std::size_t param_count(std::size_t n_qubits, std::size_t n_layers) {
    return (n_layers + 1) * n_qubits;
  }

  static Ansatz zeros(std::size_t n_qubits, std::size_t n_layers) {
    return {n_qubits, n_layers, std::vector<double>(param_count(n_qubits, n_layers), 0.0)};
  }

  void validate() const {
    if (n_qubits == 0) throw std::invalid_argument("ansatz needs at least one qubit");
    if (theta.size() != param_count(n_qubits, n_layers))
      throw std::invalid_argument("ansatz expects " + std::to_string(param_count(n_qubits, n_layers)) +
                                  " parameters, got " + std::to_string(theta.size()));
  }
};

inline Circuit ansatz_circuit(const Ansatz& ansatz) {
  ansatz.validate();
  const std::size_t n = ansatz.n_qubits;
  Circuit c(n);
  std::size_t r = 0;
  for (std::size_t layer = 0; layer < ansatz.n_layers; ++layer) {
    for (Qubit q = 0; q < n; ++q) c.add(RY{q, ansatz.theta[r++]});
    for (Qubit q = 0; q + 1 < n; ++q) c.add(CNOT{q, q + 1});
  }
  for (Qubit q = 0; q < n; ++q) c.add(RY{q, ansatz.theta[r++]});
  return c;
}

inline Statevector ansatz_state(const Ansatz& ansatz) {
  return apply_circuit(Statevector(ansatz.n_qubits), ansatz_circuit(ansatz));
}

/// Fast Walsh-Hadamard transform, normalized so it equals H^{(x)n}.
template <typename T>
std::vector<T> walsh_hadamard(std::span<const T> v) {
  if (!is_power_of_two(v.size())) throw std::invalid_argument("walsh_hadamard: length must be a power of two");
  std::vector<T> out(v.begin(), v.end());
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t h = 1; h < out.size(); h <<= 1) {
    for (std::size_t i = 0; i < out.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = out[j];
        const T b = out[j + h];
        out[j] = r * (a + b);
        out[j + h] = r * (a - b);
      }
    }
  }
  return out;
}

inline std::vector<double> walsh_hadamard(const std::vector<double>& v) {
  return walsh_hadamard<double>(std::span<const double>(v));
}

/// Gaussian kernel k(j, k) = exp(-bandwidth (j - k)^2) over basis indices,
/// tabulated for a fixed dimension.
class GaussianKernel {
 public:
  GaussianKernel(std::size_t dim, double bandwidth) : dim_(dim), bandwidth_(bandwidth), table_(dim) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("kernel bandwidth must be positive");
    for (std::size_t d = 0; d < dim; ++d) table_[d] = std::exp(-bandwidth * static_cast<double>(d * d));
  }

  std::size_t dim() const { return dim_; }
  double bandwidth() const { return bandwidth_; }
  double operator()(std::size_t j, std::size_t k) const { return table_[j > k ? j - k : k - j]; }

  /// sum_jk u_j k(j,k) v_k
  double bilinear(std::span<const double> u, std::span<const double> v) const {
    if (u.size() != dim_ || v.size() != dim_) throw std::invalid_argument("mmd: length mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (u[j] == 0.0) continue;
      double row = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) row += (*this)(j, k) * v[k];
      acc += u[j] * row;
    }
    return acc;
  }

 private:
  std::size_t dim_;
  double bandwidth_;
  std::vector<double> table_;
};

inline std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("mmd: length mismatch");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

/// Squared maximum mean discrepancy between two distributions on {0..N-1}.
inline double mmd(std::span<const double> q, std::span<const double> p, const GaussianKernel& kernel) {
  const auto d = difference(q, p);
  return std::max(0.0, kernel.bilinear(d, d));
}

inline double mmd(std::span<const double> q, std::span<const double> p, double bandwidth) {
  if (q.size() != p.size()) throw std::invalid_argument("mmd: length mismatch");
  return mmd(q, p, GaussianKernel(q.size(), bandwidth));
}

/// Real target with its Walsh-Hadamard image. Case 1 only: every amplitude
/// shares one sign.
struct TargetData {
  std::vector<double> d;
  std::vector<double> d_hadamard;

  static TargetData make(std::vector<double> amplitudes) {
    if (!is_power_of_two(amplitudes.size())) throw std::invalid_argument("target length must be a power of two");
    double norm2 = 0.0;
    bool any_pos = false;
    bool any_neg = false;
    for (double a : amplitudes) {
      norm2 += a * a;
      any_pos = any_pos || a > 0.0;
      any_neg = any_neg || a < 0.0;
    }
    if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("target is not normalized");
    if (any_pos && any_neg)
      throw std::invalid_argument("target has mixed-sign amplitudes; only Case 1 is supported");
    TargetData t;
    t.d_hadamard = walsh_hadamard(amplitudes);
    t.d = std::move(amplitudes);
    return t;
  }

  std::size_t n_qubits() const { return log2_exact(d.size()); }

  std::vector<double> probabilities() const { return squares(d); }
  std::vector<double> hadamard_probabilities() const { return squares(d_hadamard); }

 private:
  static std::vector<double> squares(const std::vector<double>& v) {
    std::vector<double> s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] * v[i];
    return s;
  }
};

/// Piecewise-constant learning rate: `initial` for the first `switch_after`
/// updates, then `later`.
struct LearningRateSchedule {
  double initial = 0.1;
  std::size_t switch_after = 100;
  double later = 0.01;

  double at(std::size_t step) const { return step < switch_after ? initial : later; }
};

struct TrainConfig {
  double bandwidth = 64.0;
  std::uint64_t shots = 400;  // per distribution, shot mode only
  std::size_t iterations = 300;
  LearningRateSchedule learning_rate{};
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  bool exact = true;
  bool keep_snapshots = false;

  void validate() const {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (!exact && shots == 0) throw std::invalid_argument("shot mode needs shots >= 1");
  }
};

/// Query-state defaults: 400 shots per term, 300 updates.
inline TrainConfig query_train_config() { return TrainConfig{}; }

/// Database-state defaults: 10000 shots per term, 500 updates.
inline TrainConfig database_train_config() {
  TrainConfig c;
  c.shots = 10000;
  c.iterations = 500;
  return c;
}

struct TrainReport {
  std::vector<double> loss_history;
  double final_loss = 0.0;
  double final_fidelity = 0.0;
  double wall_seconds = 0.0;
  std::vector<std::vector<double>> snapshots;
};

struct TrainResult {
  Ansatz ansatz;
  TrainReport report;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------

/// Output distributions of U(theta)|0> in the computational and Hadamard bases.
struct BasisDistributions {
  std::vector<double> computational;
  std::vector<double> hadamard;
};

inline BasisDistributions output_distributions(const Ansatz& ansatz) {
  const Statevector s = ansatz_state(ansatz);
  BasisDistributions out;
  out.computational = s.probabilities();
  const auto amps = s.amplitudes();
  const auto h = walsh_hadamard<Complex>(amps);
  out.hadamard.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out.hadamard[i] = std::norm(h[i]);
  return out;
}

namespace detail {

inline std::vector<double> empirical(std::span<const double> probs, std::uint64_t shots, Rng& rng) {
  const Histogram h = sample_distribution(probs, shots, rng);
  std::vector<double> f(probs.size(), 0.0);
  for (const auto& [idx, n] : h.counts) f[idx] = static_cast<double>(n) / static_cast<double>(shots);
  return f;
}

inline BasisDistributions observed(const Ansatz& ansatz, const TrainConfig& config, Rng* rng) {
  BasisDistributions d = output_distributions(ansatz);
  if (config.exact) return d;
  if (rng == nullptr) throw std::invalid_argument("shot mode needs a random stream");
  d.computational = empirical(d.computational, config.shots, *rng);
  d.hadamard = empirical(d.hadamard, config.shots, *rng);
  return d;
}

inline void check_shapes(const Ansatz& ansatz, const TargetData& target) {
  ansatz.validate();
  if (target.n_qubits() != ansatz.n_qubits) throw std::invalid_argument("ansatz and target qubit counts differ");
}

}  // namespace detail

/// (L1 + L2) / 2. In shot mode the model distributions are replaced by
/// empirical frequencies drawn from `rng`; the target side stays exact.
inline double loss(const Ansatz& ansatz, const TargetData& target, const TrainConfig& config,
                   Rng* rng = nullptr) {
  detail::check_shapes(ansatz, target);
  const GaussianKernel kernel(target.d.size(), config.bandwidth);
  const auto q = detail::observed(ansatz, config, rng);
  return 0.5 * (mmd(q.computational, target.probabilities(), kernel) +
                mmd(q.hadamard, target.hadamard_probabilities(), kernel));
}

/// Parameter-shift gradient of the loss. For each parameter r, with q_r^+-
/// the output distributions at theta_r +- pi/2,
///   dL1/dtheta_r = sum_jk (q_r^+ - q_r^-)_j k(j,k) (q_theta - p)_k,
/// which is the four-expectation form E[k]_{q+,q} - E[k]_{q-,q}
/// - E[k]_{q+,p} + E[k]_{q-,p}. L2 is the same in the Hadamard basis.
inline std::vector<double> gradient(const Ansatz& ansatz, const TargetData& target,
                                    const TrainConfig& config, Rng* rng = nullptr) {
  detail::check_shapes(ansatz, target);
  const GaussianKernel kernel(target.d.size(), config.bandwidth);
  const auto p = target.probabilities();
  const auto p_h = target.hadamard_probabilities();
  const auto q = detail::observed(ansatz, config, rng);
  const auto resid = difference(q.computational, p);
  const auto resid_h = difference(q.hadamard, p_h);

  std::vector<double> grad(ansatz.theta.size());
  Ansatz shifted = ansatz;
  for (std::size_t r = 0; r < ansatz.theta.size(); ++r) {
    shifted.theta[r] = ansatz.theta[r] + std::numbers::pi / 2.0;
    const auto plus = detail::observed(shifted, config, rng);
    shifted.theta[r] = ansatz.theta[r] - std::numbers::pi / 2.0;
    const auto minus = detail::observed(shifted, config, rng);
    shifted.theta[r] = ansatz.theta[r];

    const auto dq = difference(plus.computational, minus.computational);
    const auto dq_h = difference(plus.hadamard, minus.hadamard);
    grad[r] = 0.5 * (kernel.bilinear(dq, resid) + kernel.bilinear(dq_h, resid_h));
  }
  return grad;
}

/// |<target|U(theta)|0>|; the residual global sign is not resolved.
inline double fidelity(const Ansatz& ansatz, const TargetData& target) {
  const Statevector s = ansatz_state(ansatz);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) acc += target.d[i] * s[i];
  return std::abs(acc);
}

class Adam {
 public:
  Adam(std::size_t n, double beta1, double beta2, double epsilon)
      : m_(n, 0.0), v_(n, 0.0), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

  void step(std::vector<double>& x, std::span<const double> grad, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < x.size(); ++i) {
      m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
      v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
      x[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + epsilon_);
    }
  }

 private:
  std::vector<double> m_, v_;
  double beta1_, beta2_, epsilon_;
  std::size_t t_ = 0;
};

/// Uniform in [0, 2pi) per parameter, drawn from the seed's init stream.
inline std::vector<double> random_init(std::size_t n_params, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0));
  std::vector<double> theta(n_params);
  for (double& t : theta) t = 2.0 * std::numbers::pi * rng.uniform();
  return theta;
}

/// Adam descent on the loss. loss_history[i] is the loss before update i, so
/// it has exactly `iterations` entries; final_loss is the loss after the last
/// update. Non-convergence is reported through fidelity, never thrown.
inline TrainResult train(const TargetData& target, std::size_t n_layers, const TrainConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  TrainResult out;
  out.seed = config.seed;
  out.ansatz.n_qubits = target.n_qubits();
  out.ansatz.n_layers = n_layers;
  out.ansatz.theta = random_init(Ansatz::param_count(target.n_qubits(), n_layers), config.seed);

  Rng shots(mix_seed(config.seed, 1));
  Adam adam(out.ansatz.theta.size(), config.beta1, config.beta2, config.epsilon);
  auto& report = out.report;
  report.loss_history.reserve(config.iterations);
  TrainConfig exact_cfg = config;
  exact_cfg.exact = true;

  for (std::size_t step = 0; step < config.iterations; ++step) {
    report.loss_history.push_back(loss(out.ansatz, target, exact_cfg));
    const auto g = gradient(out.ansatz, target, config, &shots);
    adam.step(out.ansatz.theta, g, config.learning_rate.at(step));
    if (config.keep_snapshots) report.snapshots.push_back(out.ansatz.theta);
  }
  report.final_loss = loss(out.ansatz, target, exact_cfg);
  report.final_fidelity = fidelity(out.ansatz, target);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Runs `train` once per seed and keeps the highest final fidelity.
inline TrainResult train_best_of(const TargetData& target, std::size_t n_layers, TrainConfig config,
                                 const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("train_best_of: no seeds");
  TrainResult best;
  best.report.final_fidelity = -1.0;
  for (auto s : seeds) {
    config.seed = s;
    auto r = train(target, n_layers, config);
    if (r.report.final_fidelity > best.report.final_fidelity) best = std::move(r);
  }
  return best;
}

}  // namespace qpm
