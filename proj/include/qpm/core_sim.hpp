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

// Exact statevector simulator. Qubit ordering is little-endian: bit j of a
// basis index is qubit j.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qpm/random.hpp"

namespace qpm {

using Complex = std::complex<double>;
using Qubit = std::size_t;
using BasisIndex = std::uint64_t;

inline constexpr double kNormTolerance = 1e-10;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

constexpr std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

class Statevector {
 public:
  explicit Statevector(std::size_t n_qubits)
      : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
    amps_[0] = 1.0;
  }

  static Statevector basis(std::size_t n_qubits, BasisIndex index) {
    Statevector s(n_qubits);
    if (index >= s.dim()) throw std::out_of_range("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  /// Wraps raw amplitudes. Length must be a power of two; normalization is
  /// the caller's business (see inject_amplitudes for the checked variant).
  static Statevector from_amplitudes(std::vector<Complex> amps) {
    if (!is_power_of_two(amps.size()))
      throw std::invalid_argument("amplitude vector length must be a power of two");
    Statevector s(0);
    s.n_qubits_ = log2_exact(amps.size());
    s.amps_ = std::move(amps);
    return s;
  }

  static Statevector from_real(std::span<const double> amps) {
    return from_amplitudes(std::vector<Complex>(amps.begin(), amps.end()));
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> mutable_amplitudes() { return amps_; }

  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(),
                   [](const Complex& a) { return std::norm(a); });
    return p;
  }

  /// Real parts, for circuits that are known to be real.
  std::vector<double> real_part() const {
    std::vector<double> r(amps_.size());
    std::transform(amps_.begin(), amps_.end(), r.begin(),
                   [](const Complex& a) { return a.real(); });
    return r;
  }

  double max_abs_imag() const {
    double m = 0.0;
    for (const auto& a : amps_) m = std::max(m, std::abs(a.imag()));
    return m;
  }

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

// ---------------------------------------------------------------------------
// Gates

struct RY {
  Qubit target;
  double angle;  // radians
};
struct H {
  Qubit target;
};
struct X {
  Qubit target;
};
struct CNOT {
  Qubit control;
  Qubit target;
};
struct MCX {
  std::vector<Qubit> controls;
  Qubit target;
};
struct MCZ {
  std::vector<Qubit> controls;
  Qubit target;
};
/// 1 - 2|0><0| on the listed register, identity elsewhere.
struct PhaseFlipAllZero {
  std::vector<Qubit> reg;
};

using Gate = std::variant<RY, H, X, CNOT, MCX, MCZ, PhaseFlipAllZero>;

inline std::vector<Qubit> gate_qubits(const Gate& gate) {
  return std::visit(
      [](const auto& g) -> std::vector<Qubit> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RY> || std::is_same_v<T, H> || std::is_same_v<T, X>) {
          return {g.target};
        } else if constexpr (std::is_same_v<T, CNOT>) {
          return {g.control, g.target};
        } else if constexpr (std::is_same_v<T, MCX> || std::is_same_v<T, MCZ>) {
          auto q = g.controls;
          q.push_back(g.target);
          return q;
        } else {
          return g.reg;
        }
      },
      gate);
}

/// Gate inverse. Only RY is not self-inverse.
inline Gate adjoint(const Gate& gate) {
  if (const auto* ry = std::get_if<RY>(&gate)) return RY{ry->target, -ry->angle};
  return gate;
}

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  Circuit& add(Gate gate) {
    for (Qubit q : gate_qubits(gate)) {
      if (q >= n_qubits_) throw std::out_of_range("gate qubit index outside circuit");
    }
    gates_.push_back(std::move(gate));
    return *this;
  }

  /// Reversed order with every gate inverted.
  Circuit adjoint() const {
    Circuit out(n_qubits_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(qpm::adjoint(*it));
    return out;
  }

  std::size_t count_cnots() const {
    return static_cast<std::size_t>(std::count_if(
        gates_.begin(), gates_.end(), [](const Gate& g) { return std::holds_alternative<CNOT>(g); }));
  }

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
};

namespace detail {

inline BasisIndex mask_of(std::span<const Qubit> qubits, Qubit offset) {
  BasisIndex m = 0;
  for (Qubit q : qubits) m |= BasisIndex{1} << (q + offset);
  return m;
}

inline void validate_qubits(const std::vector<Qubit>& qubits, Qubit offset, std::size_t n) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] + offset >= n) {
      throw std::out_of_range("qubit index " + std::to_string(qubits[i] + offset) +
                              " out of range for " + std::to_string(n) + "-qubit state");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) throw std::invalid_argument("repeated qubit index in gate");
    }
  }
}

// Real 2x2 rotation (m00 m01; m10 m11) on one qubit.
inline void apply_real_1q(std::span<Complex> amps, Qubit q, double m00, double m01, double m10,
                          double m11) {
  const BasisIndex bit = BasisIndex{1} << q;
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | bit];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | bit] = m10 * a0 + m11 * a1;
  }
}

inline void apply_controlled_x(std::span<Complex> amps, BasisIndex control_mask, Qubit target) {
  const BasisIndex bit = BasisIndex{1} << target;
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if ((i & bit) || (i & control_mask) != control_mask) continue;
    std::swap(amps[i], amps[i | bit]);
  }
}

}  // namespace detail

/// In-place gate application. `offset` shifts every gate qubit, which is how a
/// register-local circuit is placed inside a larger state.
inline void apply_gate_inplace(Statevector& state, const Gate& gate, Qubit offset = 0) {
  detail::validate_qubits(gate_qubits(gate), offset, state.n_qubits());
  auto amps = state.mutable_amplitudes();
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RY>) {
          const double c = std::cos(g.angle / 2.0);
          const double s = std::sin(g.angle / 2.0);
          detail::apply_real_1q(amps, g.target + offset, c, -s, s, c);
        } else if constexpr (std::is_same_v<T, H>) {
          const double r = 1.0 / std::sqrt(2.0);
          detail::apply_real_1q(amps, g.target + offset, r, r, r, -r);
        } else if constexpr (std::is_same_v<T, X>) {
          detail::apply_controlled_x(amps, 0, g.target + offset);
        } else if constexpr (std::is_same_v<T, CNOT>) {
          detail::apply_controlled_x(amps, BasisIndex{1} << (g.control + offset), g.target + offset);
        } else if constexpr (std::is_same_v<T, MCX>) {
          detail::apply_controlled_x(amps, detail::mask_of(g.controls, offset), g.target + offset);
        } else if constexpr (std::is_same_v<T, MCZ>) {
          const BasisIndex m = detail::mask_of(g.controls, offset) | (BasisIndex{1} << (g.target + offset));
          for (BasisIndex i = 0; i < amps.size(); ++i) {
            if ((i & m) == m) amps[i] = -amps[i];
          }
        } else {
          const BasisIndex m = detail::mask_of(g.reg, offset);
          for (BasisIndex i = 0; i < amps.size(); ++i) {
            if ((i & m) == 0) amps[i] = -amps[i];
          }
        }
      },
      gate);
}

inline Statevector apply_gate(Statevector state, const Gate& gate, Qubit offset = 0) {
  apply_gate_inplace(state, gate, offset);
  return state;
}

enum class Adjoint : bool { kNo = false, kYes = true };

inline void apply_circuit_inplace(Statevector& state, const Circuit& circuit,
                                  Adjoint adjoint = Adjoint::kNo, Qubit offset = 0) {
  if (offset + circuit.n_qubits() > state.n_qubits()) {
    throw std::invalid_argument("circuit register (" + std::to_string(circuit.n_qubits()) +
                                " qubits at offset " + std::to_string(offset) +
                                ") does not fit a " + std::to_string(state.n_qubits()) +
                                "-qubit state");
  }
  const auto& gates = circuit.gates();
  if (adjoint == Adjoint::kNo) {
    for (const auto& g : gates) apply_gate_inplace(state, g, offset);
  } else {
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) apply_gate_inplace(state, qpm::adjoint(*it), offset);
  }
}

inline Statevector apply_circuit(Statevector state, const Circuit& circuit,
                                 Adjoint adjoint = Adjoint::kNo, Qubit offset = 0) {
  apply_circuit_inplace(state, circuit, adjoint, offset);
  return state;
}

/// <a|b>, conjugate-linear in `a`.
inline Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("inner_product: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

/// Probability that measuring `reg` yields `value`; bit i of `value` is the
/// outcome of reg[i].
inline double projection_probability(const Statevector& state, std::span<const Qubit> reg,
                                     BasisIndex value) {
  detail::validate_qubits(std::vector<Qubit>(reg.begin(), reg.end()), 0, state.n_qubits());
  if (reg.size() < 64 && (value >> reg.size()) != 0) throw std::out_of_range("value does not fit the register");
  BasisIndex mask = 0;
  BasisIndex want = 0;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    mask |= BasisIndex{1} << reg[i];
    if ((value >> i) & 1U) want |= BasisIndex{1} << reg[i];
  }
  double p = 0.0;
  for (BasisIndex i = 0; i < state.dim(); ++i) {
    if ((i & mask) == want) p += std::norm(state[i]);
  }
  return p;
}

/// Qubits first..first+count-1, the usual way registers are named here.
inline std::vector<Qubit> register_range(Qubit first, std::size_t count) {
  std::vector<Qubit> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = first + i;
  return r;
}

struct Histogram {
  std::map<BasisIndex, std::uint64_t> counts;
  std::uint64_t total_shots = 0;

  std::uint64_t count(BasisIndex i) const {
    auto it = counts.find(i);
    return it == counts.end() ? 0 : it->second;
  }
  double frequency(BasisIndex i) const {
    return total_shots == 0 ? 0.0 : static_cast<double>(count(i)) / static_cast<double>(total_shots);
  }
};

/// Draws i.i.d. samples from a probability vector by inverse-CDF lookup.
inline Histogram sample_distribution(std::span<const double> probs, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  Histogram h;
  h.total_shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<BasisIndex>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    // skip zero-probability tail entries that upper_bound can land on at acc
    while (idx > 0 && probs[idx] == 0.0) --idx;
    ++h.counts[idx];
  }
  return h;
}

inline Histogram sample_counts(const Statevector& state, std::uint64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  const auto probs = state.probabilities();
  return sample_distribution(probs, shots, rng);
}

}  // namespace qpm
