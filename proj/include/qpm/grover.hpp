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

// Amplitude amplification with a distributed target.
//
// The oracle reflects about the all-zero data register,
//   G_O = 1 - 2 |0><0|_D (x) 1_I,
// and the diffusion reflects about the prepared state,
//   G_D = 2 |psi'><psi'| - 1.
// One iteration applies G_O first, then G_D. The closed-form analysis follows
// the generalized (non-equiprobable) Grover recurrence.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qpm/core_sim.hpp"

namespace qpm {

inline constexpr double kDegenerateOverlap = 1e-12;

/// Source of |psi'>: either an explicit circuit U with U|0> = |psi'>, or the
/// state itself (ideal encoding, no circuit). Diffusion uses U (PhaseFlip) U^dag
/// in the first case and the dense reflection in the second.
class Preparation {
 public:
  static Preparation from_state(Statevector psi) { return Preparation(std::move(psi), std::nullopt); }

  static Preparation from_circuit(Circuit u) {
    Statevector psi = apply_circuit(Statevector(u.n_qubits()), u);
    return Preparation(std::move(psi), std::move(u));
  }

  const Statevector& state() const { return psi_; }
  std::size_t n_qubits() const { return psi_.n_qubits(); }
  bool has_circuit() const { return circuit_.has_value(); }
  const Circuit& circuit() const { return *circuit_; }

 private:
  Preparation(Statevector psi, std::optional<Circuit> u) : psi_(std::move(psi)), circuit_(std::move(u)) {}

  Statevector psi_;
  std::optional<Circuit> circuit_;
};

struct AAOperators {
  std::size_t n_data;
  std::size_t n_index;
  Preparation prep;

  AAOperators(std::size_t n_d, std::size_t n_i, Preparation p) : n_data(n_d), n_index(n_i), prep(std::move(p)) {
    if (n_d + n_i != prep.n_qubits())
      throw std::invalid_argument("AAOperators: register sizes do not match the prepared state");
  }
};

inline void apply_oracle_inplace(Statevector& state, std::size_t n_data) {
  if (n_data > state.n_qubits()) throw std::invalid_argument("oracle: data register larger than state");
  const BasisIndex mask = (BasisIndex{1} << n_data) - 1;
  auto amps = state.mutable_amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if ((i & mask) == 0) amps[i] = -amps[i];
  }
}

inline Statevector apply_oracle(Statevector state, std::size_t n_data) {
  apply_oracle_inplace(state, n_data);
  return state;
}

/// 2|psi'><psi'| - 1, without a circuit.
inline void apply_dense_reflection_inplace(Statevector& state, const Statevector& psi) {
  if (state.n_qubits() != psi.n_qubits()) throw std::invalid_argument("diffusion: register mismatch");
  const Complex overlap = inner_product(psi, state);
  auto amps = state.mutable_amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = 2.0 * overlap * psi[i] - amps[i];
}

/// U (1 - 2|0><0|) U^dag = -(2|psi'><psi'| - 1); the sign is folded back so
/// both routes give the same operator.
inline void apply_circuit_reflection_inplace(Statevector& state, const Circuit& u) {
  if (state.n_qubits() != u.n_qubits()) throw std::invalid_argument("diffusion: register mismatch");
  apply_circuit_inplace(state, u, Adjoint::kYes);
  apply_gate_inplace(state, PhaseFlipAllZero{register_range(0, u.n_qubits())});
  apply_circuit_inplace(state, u, Adjoint::kNo);
  for (auto& a : state.mutable_amplitudes()) a = -a;
}

inline void apply_diffusion_inplace(Statevector& state, const Preparation& prep) {
  if (prep.has_circuit()) {
    apply_circuit_reflection_inplace(state, prep.circuit());
  } else {
    apply_dense_reflection_inplace(state, prep.state());
  }
}

inline Statevector apply_diffusion(Statevector state, const Preparation& prep) {
  apply_diffusion_inplace(state, prep);
  return state;
}

/// trajectory[0] = |psi'>, trajectory[s+1] = G_D G_O trajectory[s].
inline std::vector<Statevector> grover_run(const AAOperators& ops, std::size_t t) {
  std::vector<Statevector> traj;
  traj.reserve(t + 1);
  traj.push_back(ops.prep.state());
  for (std::size_t s = 0; s < t; ++s) {
    Statevector next = traj.back();
    apply_oracle_inplace(next, ops.n_data);
    apply_diffusion_inplace(next, ops.prep);
    traj.push_back(std::move(next));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Closed form

inline bool data_register_zero(BasisIndex x, std::size_t n_data) {
  return (x & ((BasisIndex{1} << n_data) - 1)) == 0;
}

/// <o|psi'> = sqrt(<psi'| (|0><0|_D (x) 1) |psi'>) for a real |psi'>.
inline double target_overlap(std::span<const double> psi, std::size_t n_data) {
  double p = 0.0;
  for (BasisIndex x = 0; x < psi.size(); ++x)
    if (data_register_zero(x, n_data)) p += psi[x] * psi[x];
  return std::sqrt(p);
}

/// Per-basis-state curve a'_x(t) = A_x sin(omega t + delta_x).
struct AnalyticCurve {
  double beta = 0.0;   // <o|psi'>
  double omega = 0.0;  // 2 arcsin(beta)
  std::vector<double> initial;    // a'_x
  std::vector<double> amplitude;  // A_x (signed)
  std::vector<double> phase;      // delta_x
  std::vector<bool> is_target;    // o_x != 0

  double amplitude_at(std::size_t x, double t) const { return amplitude[x] * std::sin(omega * t + phase[x]); }
  double probability_at(std::size_t x, double t) const {
    const double a = amplitude_at(x, t);
    return a * a;
  }
  std::size_t size() const { return initial.size(); }
};

inline void check_overlap_range(double beta) {
  if (beta <= kDegenerateOverlap)
    throw std::domain_error("overlap <o|psi'> is zero: nothing to amplify");
  if (beta >= 1.0 - kDegenerateOverlap)
    throw std::domain_error("overlap <o|psi'> is one: state already equals the target");
}

/// Targets (data register all-zero): A_x = a'_x / beta, delta_x = arccos sqrt(1 - beta^2).
/// Others: A_x = a'_x / sqrt(1 - beta^2), delta_x = arccos(-beta).
inline AnalyticCurve analytic_curve(std::span<const double> psi, std::size_t n_data) {
  double norm2 = 0.0;
  for (double a : psi) norm2 += a * a;
  if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("analytic_curve: state not normalized");
  AnalyticCurve c;
  c.beta = target_overlap(psi, n_data);
  check_overlap_range(c.beta);
  c.omega = 2.0 * std::asin(c.beta);
  const double cos_half = std::sqrt(1.0 - c.beta * c.beta);
  const double target_phase = std::acos(cos_half);
  const double other_phase = std::acos(-c.beta);
  c.initial.assign(psi.begin(), psi.end());
  c.amplitude.resize(psi.size());
  c.phase.resize(psi.size());
  c.is_target.resize(psi.size());
  for (BasisIndex x = 0; x < psi.size(); ++x) {
    const bool tgt = data_register_zero(x, n_data);
    c.is_target[x] = tgt;
    c.amplitude[x] = tgt ? psi[x] / c.beta : psi[x] / cos_half;
    c.phase[x] = tgt ? target_phase : other_phase;
  }
  return c;
}

inline AnalyticCurve analytic_curve(const Statevector& psi, std::size_t n_data) {
  if (psi.max_abs_imag() > 1e-12) throw std::invalid_argument("analytic_curve needs real amplitudes");
  const auto re = psi.real_part();
  return analytic_curve(std::span<const double>(re), n_data);
}

/// P_x(t) = (a'_x^2 / 2 beta^2) [1 - cos 2(omega t + arccos sqrt(1 - beta^2))].
inline double hit_probability(const AnalyticCurve& curve, std::size_t x, double t) {
  if (x >= curve.size() || !curve.is_target[x])
    throw std::invalid_argument("hit_probability: index is not a target state");
  const double b2 = curve.beta * curve.beta;
  const double a = curve.initial[x];
  return a * a / (2.0 * b2) * (1.0 - std::cos(2.0 * (curve.omega * t + std::acos(std::sqrt(1.0 - b2)))));
}

/// Closest integer to (arccos beta + 2 m pi) / (2 arcsin beta). Exact halves
/// round up.
inline std::int64_t optimal_iterations(double beta, std::int64_t m = 0) {
  check_overlap_range(beta);
  if (m < 0) throw std::invalid_argument("optimal_iterations: m must be >= 0");
  const double y = (std::acos(beta) + 2.0 * static_cast<double>(m) * std::numbers::pi) / (2.0 * std::asin(beta));
  // absorb rounding noise at exact halves
  return static_cast<std::int64_t>(std::floor(y + 0.5 + 1e-9));
}

// ---------------------------------------------------------------------------
// Generalized recurrence: oracle 1 - 2|b><b|, diffusion 2|Psi><Psi| - 1.

struct RecurrenceState {
  std::vector<double> a;  // a^(t)
  double alpha = 0.0;     // <Psi|Psi^(t)>
  double beta_t = 0.0;    // <b|Psi^(t)>
};

struct RecurrenceTrajectory {
  double beta = 0.0;  // <b|Psi>
  std::vector<RecurrenceState> steps;
};

namespace detail {
inline double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}
inline void check_unit(std::span<const double> v, const char* what) {
  if (std::abs(dot(v, v) - 1.0) > 1e-9) throw std::invalid_argument(std::string(what) + " is not normalized");
}
}  // namespace detail

/// a_x^(t+1) = 2 alpha^(t) a_x - 4 beta^(t) beta a_x - a_x^(t) + 2 beta^(t) b_x,
/// with alpha^(t+1) = alpha^(t) - 2 beta^(t) beta and beta^(t+1) = 2 beta alpha^(t+1) + beta^(t).
inline RecurrenceTrajectory recurrence_iterate(std::span<const double> a, std::span<const double> b,
                                               std::size_t t) {
  if (a.size() != b.size()) throw std::invalid_argument("recurrence: length mismatch");
  detail::check_unit(a, "a");
  detail::check_unit(b, "b");
  RecurrenceTrajectory out;
  out.beta = detail::dot(b, a);
  out.steps.reserve(t + 1);
  out.steps.push_back({std::vector<double>(a.begin(), a.end()), 1.0, out.beta});
  const double beta = out.beta;
  for (std::size_t s = 0; s < t; ++s) {
    const auto& cur = out.steps.back();
    RecurrenceState next;
    next.a.resize(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
      next.a[x] = 2.0 * cur.alpha * a[x] - 4.0 * cur.beta_t * beta * a[x] - cur.a[x] + 2.0 * cur.beta_t * b[x];
    }
    next.alpha = cur.alpha - 2.0 * cur.beta_t * beta;
    next.beta_t = 2.0 * beta * next.alpha + cur.beta_t;
    out.steps.push_back(std::move(next));
  }
  return out;
}

/// Closed-form coefficients A_x, delta_x with a_x^(t) = A_x sin(omega t + delta_x).
/// A_x = sqrt((b_x^2 - 2 beta a_x b_x + a_x^2) / (1 - beta^2)) and delta_x is
/// the angle whose cosine is (b_x - beta a_x) / sqrt(b_x^2 - 2 beta a_x b_x + a_x^2);
/// the quadrant is taken from the sign of a_x, so negative amplitudes work too.
struct ClosedForm {
  double beta = 0.0;
  double omega = 0.0;
  std::vector<double> amplitude;
  std::vector<double> phase;

  double at(std::size_t x, double t) const { return amplitude[x] * std::sin(omega * t + phase[x]); }
};

inline ClosedForm closed_form(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("closed_form: length mismatch");
  detail::check_unit(a, "a");
  detail::check_unit(b, "b");
  ClosedForm cf;
  cf.beta = detail::dot(b, a);
  if (std::abs(cf.beta) <= kDegenerateOverlap || std::abs(cf.beta) >= 1.0 - kDegenerateOverlap)
    throw std::domain_error("closed_form: degenerate overlap");
  cf.omega = 2.0 * std::asin(cf.beta);
  const double half = std::asin(cf.beta);
  const double cos_half = std::sqrt(1.0 - cf.beta * cf.beta);
  cf.amplitude.resize(a.size());
  cf.phase.resize(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    // a^(t) = b sin(u) + c cos(u), u = omega t + half; c is the component along the
    // normalized part of |Psi> orthogonal to |b>.
    const double c = (a[x] - cf.beta * b[x]) / cos_half;
    cf.amplitude[x] = std::hypot(b[x], c);
    cf.phase[x] = half + std::atan2(c, b[x]);
  }
  return cf;
}

// ---------------------------------------------------------------------------

struct OverlapEstimate {
  double value = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t shots = 0;
  bool low_confidence = false;  // no all-zero-data outcome seen
};

/// sqrt(P(data register = 0)); exact when shots == 0.
inline OverlapEstimate estimate_overlap(const Statevector& psi, std::size_t n_data, std::uint64_t shots,
                                        std::uint64_t seed) {
  OverlapEstimate est;
  if (shots == 0) {
    est.value = std::sqrt(projection_probability(psi, register_range(0, n_data), 0));
    return est;
  }
  const Histogram h = sample_counts(psi, shots, seed);
  for (const auto& [x, n] : h.counts)
    if (data_register_zero(x, n_data)) est.successes += n;
  est.shots = shots;
  est.value = std::sqrt(static_cast<double>(est.successes) / static_cast<double>(shots));
  est.low_confidence = est.successes == 0;
  return est;
}

}  // namespace qpm
