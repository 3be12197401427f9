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

#include <cmath>
#include <numbers>
#include <vector>

#include "qpm/core_sim.hpp"

namespace qpm {
namespace {

using Matrix = std::vector<std::vector<Complex>>;

// Independent oracle: build the dense 2^n x 2^n matrix of a gate from its
// action rule on basis states, then multiply.
Matrix dense_single(std::size_t n, Qubit q, const std::array<double, 4>& m) {
  const std::size_t d = std::size_t{1} << n;
  Matrix u(d, std::vector<Complex>(d));
  for (std::size_t col = 0; col < d; ++col) {
    const int b = (col >> q) & 1;
    const std::size_t c0 = col & ~(std::size_t{1} << q);
    const std::size_t c1 = col | (std::size_t{1} << q);
    u[c0][col] = b ? m[1] : m[0];
    u[c1][col] = b ? m[3] : m[2];
  }
  return u;
}

std::vector<Complex> mul(const Matrix& u, std::span<const Complex> v) {
  std::vector<Complex> out(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += u[r][c] * v[c];
  return out;
}

Statevector random_state(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> a(std::size_t{1} << n);
  double n2 = 0.0;
  for (auto& x : a) {
    x = {rng.normal(), rng.normal()};
    n2 += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(n2);
  return Statevector::from_amplitudes(a);
}

void expect_near(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].real(), b[i].real(), tol) << "index " << i;
    EXPECT_NEAR(a[i].imag(), b[i].imag(), tol) << "index " << i;
  }
}

TEST(Statevector, StartsInAllZero) {
  Statevector s(3);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_DOUBLE_EQ(std::norm(s[0]), 1.0);
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(Statevector, RejectsBadAmplitudes) {
  EXPECT_THROW(Statevector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Statevector::basis(2, 4), std::out_of_range);
}

TEST(Gates, SingleQubitGatesMatchDenseMatrices) {
  const std::size_t n = 3;
  const double th = 0.731;
  const double c = std::cos(th / 2), s = std::sin(th / 2), r = 1.0 / std::sqrt(2.0);
  for (Qubit q = 0; q < n; ++q) {
    const auto psi = random_state(n, 10 + q);
    expect_near(apply_gate(psi, RY{q, th}).amplitudes(), mul(dense_single(n, q, {c, -s, s, c}), psi.amplitudes()),
                1e-12);
    expect_near(apply_gate(psi, H{q}).amplitudes(), mul(dense_single(n, q, {r, r, r, -r}), psi.amplitudes()), 1e-12);
    expect_near(apply_gate(psi, X{q}).amplitudes(), mul(dense_single(n, q, {0, 1, 1, 0}), psi.amplitudes()), 1e-12);
  }
}

TEST(Gates, HadamardTensorPowerMatchesDenseMatrix) {
  const std::size_t n = 4, d = 16;
  Matrix hn(d, std::vector<Complex>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      hn[i][j] = (std::popcount(i & j) % 2 ? -1.0 : 1.0) / 4.0;
  auto psi = random_state(n, 3);
  const auto expect = mul(hn, psi.amplitudes());
  for (Qubit q = 0; q < n; ++q) apply_gate_inplace(psi, H{q});
  expect_near(psi.amplitudes(), expect, 1e-12);
}

TEST(Gates, TextbookExamples) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto h = apply_gate(Statevector(1), H{0});
  EXPECT_NEAR(h[0].real(), r, 1e-15);
  EXPECT_NEAR(h[1].real(), r, 1e-15);
  const auto ry = apply_gate(Statevector(1), RY{0, std::numbers::pi});
  EXPECT_NEAR(std::norm(ry[1]), 1.0, 1e-15);
  // |10> (qubit 1 set) is index 2; CNOT(1 -> 0) gives |11>, index 3.
  const auto cx = apply_gate(Statevector::basis(2, 2), CNOT{1, 0});
  EXPECT_NEAR(std::norm(cx[3]), 1.0, 1e-15);
  Circuit hh(1);
  hh.add(H{0}).add(H{0});
  EXPECT_NEAR(std::norm(apply_circuit(Statevector(1), hh)[0]), 1.0, 1e-15);
}

TEST(Gates, LittleEndianOrder) {
  // X on qubit 0 maps |000> to index 1, on qubit 2 to index 4.
  EXPECT_DOUBLE_EQ(std::norm(apply_gate(Statevector(3), X{0})[1]), 1.0);
  EXPECT_DOUBLE_EQ(std::norm(apply_gate(Statevector(3), X{2})[4]), 1.0);
}

TEST(Gates, ControlledGatesPermuteBasisStates) {
  for (BasisIndex i = 0; i < 8; ++i) {
    const auto out = apply_gate(Statevector::basis(3, i), CNOT{0, 2});
    const BasisIndex expect = (i & 1) ? (i ^ 4) : i;
    EXPECT_DOUBLE_EQ(std::norm(out[expect]), 1.0) << i;
    const auto tof = apply_gate(Statevector::basis(3, i), MCX{{0, 1}, 2});
    EXPECT_DOUBLE_EQ(std::norm(tof[(i & 3) == 3 ? (i ^ 4) : i]), 1.0) << i;
    const auto z = apply_gate(Statevector::basis(3, i), MCZ{{0, 1}, 2});
    EXPECT_DOUBLE_EQ(z[i].real(), i == 7 ? -1.0 : 1.0);
  }
}

TEST(Gates, PhaseFlipAllZeroIsDenseReflection) {
  // Oracle: 1 - 2|0><0| on qubits {0,1} of a 3-qubit state.
  const auto psi = random_state(3, 21);
  const auto out = apply_gate(psi, PhaseFlipAllZero{{0, 1}});
  for (BasisIndex i = 0; i < 8; ++i) {
    const double sign = (i & 3) == 0 ? -1.0 : 1.0;
    EXPECT_NEAR(std::abs(out[i] - sign * psi[i]), 0.0, 1e-15);
  }
}

TEST(Gates, OffsetShiftsQubits) {
  const auto a = apply_gate(Statevector(3), X{0}, 2);
  EXPECT_DOUBLE_EQ(std::norm(a[4]), 1.0);
  EXPECT_THROW(apply_gate(Statevector(3), X{1}, 2), std::out_of_range);
}

TEST(Gates, InvalidQubitsThrow) {
  EXPECT_THROW(apply_gate(Statevector(2), X{2}), std::out_of_range);
  EXPECT_THROW(apply_gate(Statevector(2), CNOT{1, 1}), std::invalid_argument);
  Circuit c(2);
  EXPECT_THROW(c.add(RY{5, 0.1}), std::out_of_range);
}

TEST(Circuit, AdjointUndoesCircuit) {
  Circuit c(3);
  c.add(H{0}).add(RY{1, 0.4}).add(CNOT{0, 2}).add(MCX{{1, 2}, 0}).add(RY{2, -1.3}).add(MCZ{{0}, 1});
  const auto psi = random_state(3, 5);
  const auto round = apply_circuit(apply_circuit(psi, c), c, Adjoint::kYes);
  expect_near(round.amplitudes(), psi.amplitudes(), 1e-12);
  EXPECT_EQ(c.count_cnots(), 1u);
}

TEST(Circuit, RegisterMismatchThrows) {
  Circuit c(3);
  EXPECT_THROW(apply_circuit(Statevector(2), c), std::invalid_argument);
}

TEST(Circuit, UnitaryPreservesNorm) {
  Circuit c(4);
  Rng rng(9);
  for (int k = 0; k < 40; ++k) {
    const Qubit q = rng.next_u64() % 4;
    c.add(RY{q, rng.uniform() * 6.0});
    c.add(CNOT{q, (q + 1) % 4});
  }
  EXPECT_NEAR(apply_circuit(random_state(4, 2), c).norm_squared(), 1.0, 1e-12);
}

TEST(Measurement, ProjectionProbabilityMatchesBruteForce) {
  const auto psi = random_state(4, 8);
  const auto reg = register_range(1, 2);
  for (BasisIndex v = 0; v < 4; ++v) {
    double expect = 0.0;
    for (BasisIndex i = 0; i < 16; ++i)
      if (((i >> 1) & 3) == v) expect += std::norm(psi[i]);
    EXPECT_NEAR(projection_probability(psi, reg, v), expect, 1e-14);
  }
  EXPECT_THROW(projection_probability(psi, reg, 4), std::out_of_range);
}

TEST(Measurement, SimpleProjections) {
  EXPECT_DOUBLE_EQ(projection_probability(Statevector(3), register_range(0, 2), 0), 1.0);
  auto u = apply_gate(apply_gate(Statevector(2), H{0}), H{1});
  EXPECT_NEAR(projection_probability(u, register_range(0, 1), 0), 0.5, 1e-15);
}

TEST(Measurement, InnerProductBasics) {
  const auto psi = random_state(3, 4);
  EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inner_product(Statevector::basis(1, 0), Statevector::basis(1, 1))), 0.0, 1e-15);
  EXPECT_THROW(inner_product(Statevector(1), Statevector(2)), std::invalid_argument);
}

TEST(Measurement, InnerProductConjugatesLeft) {
  const auto a = Statevector::from_amplitudes({Complex(0, 1), 0.0});
  const auto b = Statevector::from_amplitudes({1.0, 0.0});
  EXPECT_NEAR(std::abs(inner_product(a, b) - Complex(0, -1)), 0.0, 1e-15);
}

TEST(Sampling, CountsAreDeterministicAndWithinThreeSigma) {
  const std::vector<double> p = {0.5, 0.25, 0.125, 0.125};
  const auto s = Statevector::from_real(std::vector<double>{std::sqrt(0.5), 0.5, std::sqrt(0.125), std::sqrt(0.125)});
  const std::uint64_t shots = 20000;
  const auto h1 = sample_counts(s, shots, 42);
  const auto h2 = sample_counts(s, shots, 42);
  EXPECT_EQ(h1.counts, h2.counts);
  EXPECT_EQ(h1.total_shots, shots);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double sd = std::sqrt(p[i] * (1 - p[i]) / shots);
    EXPECT_NEAR(h1.frequency(i), p[i], 3 * sd);
  }
  EXPECT_NE(sample_counts(s, shots, 43).counts, h1.counts);
}

TEST(Sampling, BasisStateAlwaysSamplesItself) {
  const auto h = sample_counts(Statevector(1), 100, 0);
  EXPECT_EQ(h.count(0), 100u);
  EXPECT_EQ(h.count(1), 0u);
}

TEST(Sampling, HadamardMillionShots) {
  const auto h = sample_counts(apply_gate(Statevector(1), H{0}), 1000000, 11);
  EXPECT_NEAR(h.frequency(0), 0.5, 0.002);
  EXPECT_NEAR(h.frequency(1), 0.5, 0.002);
  EXPECT_EQ(h.count(0) + h.count(1), 1000000u);
}

TEST(Sampling, ZeroShotsRejected) {
  Rng rng(1);
  const std::vector<double> p = {1.0};
  EXPECT_THROW(sample_distribution(p, 0, rng), std::invalid_argument);
}

TEST(Random, MixSeedSeparatesStreams) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
  EXPECT_EQ(mix_seed(7, 3), mix_seed(7, 3));
}

TEST(Random, NormalMomentsWithinTolerance) {
  Rng rng(123);
  const int n = 200000;
  double m = 0, v = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(1.0, 2.0);
    m += x;
    v += x * x;
  }
  m /= n;
  v = v / n - m * m;
  EXPECT_NEAR(m, 1.0, 4 * 2.0 / std::sqrt(n));
  EXPECT_NEAR(v, 4.0, 0.05);
}

}  // namespace
}  // namespace qpm
