// Copyright 2026 The belltransfer developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "belltransfer/statevec.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "belltransfer/errors.hpp"
#include "belltransfer/rng.hpp"

using namespace belltransfer;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector random_state(int num_qubits, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<Amp> amps(std::uint64_t{1} << num_qubits);
  for (Amp& a : amps) {
    a = Amp{rng.gaussian(), rng.gaussian()};
  }
  return StateVector(num_qubits, std::move(amps)).normalized();
}

StateVector bell_pair() {
  return StateVector(2, {Amp{kInvSqrt2, 0.0}, Amp{0.0, 0.0}, Amp{0.0, 0.0}, Amp{kInvSqrt2, 0.0}});
}

}  // namespace

TEST_CASE("basis index places qubit 0 at the top bit") {
  REQUIRE(basis_index({0, 0, 1, 1, 0, 1}) == 13);
  REQUIRE(basis_index({1, 0}) == 2);
  REQUIRE(basis_label(13, 6) == "001101");
  REQUIRE(bit_at(13, 0, 6) == 0);
  REQUIRE(bit_at(13, 2, 6) == 1);
  REQUIRE(bit_at(13, 3, 6) == 1);
  REQUIRE(bit_at(13, 4, 6) == 0);
  REQUIRE(bit_at(13, 5, 6) == 1);
}

TEST_CASE("basis index and label round-trip across a register") {
  const int n = 5;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
    std::vector<int> bits(n);
    for (int q = 0; q < n; ++q) {
      bits[q] = bit_at(idx, q, n);
    }
    REQUIRE(basis_index(bits) == idx);
    REQUIRE(basis_label(idx, n).size() == static_cast<std::size_t>(n));
  }
  REQUIRE_THROWS_AS(basis_index({0, 2}), InvalidIndex);
}

TEST_CASE("basis states carry a single unit amplitude") {
  const StateVector s = StateVector::basis_state(3, 5);
  REQUIRE(s.num_qubits() == 3);
  REQUIRE(s.dim() == 8);
  REQUIRE(s.amplitude(5) == Amp{1.0, 0.0});
  REQUIRE(s.amplitude(4) == Amp{0.0, 0.0});
  REQUIRE(s.norm_tracked() == 1.0);
  REQUIRE(s.is_normalized());
  REQUIRE_FALSE(s.is_empty());
}

TEST_CASE("constructors reject malformed input") {
  REQUIRE_THROWS_AS(StateVector(2, std::vector<Amp>(3)), DimensionMismatch);
  REQUIRE_THROWS_AS(StateVector(0), DimensionMismatch);
  REQUIRE_THROWS_AS(StateVector(31), DimensionMismatch);
  REQUIRE_THROWS_AS(StateVector::basis_state(2, 4), InvalidIndex);
}

TEST_CASE("tensor product keeps the first factor's qubits on top") {
  const StateVector combined =
      tensor({StateVector::basis_state(2, 1), StateVector::basis_state(1, 1)});
  REQUIRE(combined.num_qubits() == 3);
  REQUIRE(combined.amplitude(3) == Amp{1.0, 0.0});  // |01> x |1> = |011>

  const StateVector plus(1, {Amp{kInvSqrt2, 0.0}, Amp{kInvSqrt2, 0.0}});
  const StateVector spread = tensor({plus, StateVector::basis_state(1, 1)});
  REQUIRE(std::abs(spread.amplitude(1) - Amp{kInvSqrt2, 0.0}) < 1e-15);  // |01>
  REQUIRE(std::abs(spread.amplitude(3) - Amp{kInvSqrt2, 0.0}) < 1e-15);  // |11>
  REQUIRE(spread.amplitude(0) == Amp{0.0, 0.0});
  REQUIRE(spread.amplitude(2) == Amp{0.0, 0.0});

  REQUIRE_THROWS_AS(tensor({}), DimensionMismatch);
}

TEST_CASE("tensor of three factors matches direct indexing") {
  const StateVector a = random_state(1, 11);
  const StateVector b = random_state(2, 22);
  const StateVector c = random_state(1, 33);
  const StateVector whole = tensor({a, b, c});
  REQUIRE(whole.num_qubits() == 4);
  for (std::uint64_t i = 0; i < 2; ++i) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      for (std::uint64_t k = 0; k < 2; ++k) {
        const Amp expect = a.amplitude(i) * b.amplitude(j) * c.amplitude(k);
        REQUIRE(std::abs(whole.amplitude((i << 3) | (j << 1) | k) - expect) < 1e-15);
      }
    }
  }
}

TEST_CASE("bell rotation acts as the balanced basis change") {
  const StateVector from0 = apply_gate(StateVector::basis_state(1, 0), bell_rotation(), {0});
  REQUIRE(std::abs(from0.amplitude(0) - Amp{kInvSqrt2, 0.0}) < 1e-15);
  REQUIRE(std::abs(from0.amplitude(1) - Amp{kInvSqrt2, 0.0}) < 1e-15);

  const StateVector from1 = apply_gate(StateVector::basis_state(1, 1), bell_rotation(), {0});
  REQUIRE(std::abs(from1.amplitude(0) - Amp{kInvSqrt2, 0.0}) < 1e-15);
  REQUIRE(std::abs(from1.amplitude(1) - Amp{-kInvSqrt2, 0.0}) < 1e-15);

  // On qubit 1 of |010>, only that qubit splits; the sign follows its bit.
  const StateVector mid = apply_gate(StateVector::basis_state(3, 2), bell_rotation(), {1});
  REQUIRE(std::abs(mid.amplitude(0) - Amp{kInvSqrt2, 0.0}) < 1e-15);
  REQUIRE(std::abs(mid.amplitude(2) - Amp{-kInvSqrt2, 0.0}) < 1e-15);
}

TEST_CASE("controlled-not flips the target exactly when the control is set") {
  const StateVector flipped = apply_gate(StateVector::basis_state(2, 2), cnot_gate(), {0, 1});
  REQUIRE(flipped.amplitude(3) == Amp{1.0, 0.0});
  const StateVector idle = apply_gate(StateVector::basis_state(2, 1), cnot_gate(), {0, 1});
  REQUIRE(idle.amplitude(1) == Amp{1.0, 0.0});
  // Reversed target order swaps the roles.
  const StateVector reversed = apply_gate(StateVector::basis_state(2, 1), cnot_gate(), {1, 0});
  REQUIRE(reversed.amplitude(3) == Amp{1.0, 0.0});

  REQUIRE_THROWS_AS(apply_gate(StateVector::basis_state(2, 0), cnot_gate(), {0, 0}),
                    InvalidIndex);
  REQUIRE_THROWS_AS(apply_gate(StateVector::basis_state(2, 0), std::vector<Amp>(3), {0}),
                    DimensionMismatch);
}

TEST_CASE("gates preserve the norm") {
  StateVector state = random_state(4, 99);
  state = apply_gate(state, bell_rotation(), {2});
  state = apply_gate(state, cnot_gate(), {0, 3});
  state = apply_gate(state, bell_rotation(), {0});
  REQUIRE(std::abs(state.norm_tracked() - 1.0) < 1e-12);
}

TEST_CASE("projection follows the Born rule") {
  const auto [p0, post0] = project(bell_pair(), ProjectorSpec{{{0, 0}}});
  REQUIRE(std::abs(p0 - 0.5) < 1e-15);
  REQUIRE(std::abs(post0.amplitude(0) - Amp{1.0, 0.0}) < 1e-15);
  REQUIRE(post0.is_normalized());

  const auto [p1, post1] = project(bell_pair(), ProjectorSpec{{{0, 1}}});
  REQUIRE(std::abs(p0 + p1 - 1.0) < 1e-15);
  REQUIRE(std::abs(post1.amplitude(3) - Amp{1.0, 0.0}) < 1e-15);

  const auto [pboth, postboth] = project(bell_pair(), ProjectorSpec{{{0, 1}, {1, 1}}});
  REQUIRE(std::abs(pboth - 0.5) < 1e-15);
  REQUIRE(std::abs(postboth.amplitude(3) - Amp{1.0, 0.0}) < 1e-15);
}

TEST_CASE("projection outcome probabilities are complete on random states") {
  const StateVector state = random_state(3, 123);
  double total = 0.0;
  for (int b0 = 0; b0 < 2; ++b0) {
    for (int b2 = 0; b2 < 2; ++b2) {
      total += project(state, ProjectorSpec{{{0, b0}, {2, b2}}}).first;
    }
  }
  REQUIRE(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("impossible outcomes yield the empty state, not an error") {
  const auto [p, post] = project(StateVector::basis_state(2, 0), ProjectorSpec{{{0, 1}}});
  REQUIRE(p == 0.0);
  REQUIRE(post.is_empty());
  REQUIRE_THROWS_AS(post.normalized(), NotNormalized);
}

TEST_CASE("masking keeps surviving amplitudes un-renormalized") {
  const StateVector masked = mask_subspace(bell_pair(), ProjectorSpec{{{0, 0}}});
  REQUIRE(std::abs(masked.amplitude(0) - Amp{kInvSqrt2, 0.0}) < 1e-15);
  REQUIRE(masked.amplitude(3) == Amp{0.0, 0.0});
  REQUIRE(std::abs(masked.norm_tracked() - kInvSqrt2) < 1e-15);
}

TEST_CASE("fidelity is the squared overlap") {
  const StateVector zero = StateVector::basis_state(1, 0);
  const StateVector one = StateVector::basis_state(1, 1);
  REQUIRE(fidelity(zero, zero) == 1.0);
  REQUIRE(fidelity(zero, one) == 0.0);
  const StateVector plus = apply_gate(zero, bell_rotation(), {0});
  REQUIRE(std::abs(fidelity(zero, plus) - 0.5) < 1e-15);

  // Insensitive to a global phase.
  const Amp phase = std::polar(1.0, 0.7);
  const StateVector rotated(1, {phase * plus.amplitude(0), phase * plus.amplitude(1)});
  REQUIRE(std::abs(fidelity(plus, rotated) - 1.0) < 1e-12);

  REQUIRE_THROWS_AS(fidelity(zero, bell_pair()), DimensionMismatch);
  REQUIRE_THROWS_AS(fidelity(zero, StateVector(1, {Amp{2.0, 0.0}, Amp{0.0, 0.0}})),
                    NotNormalized);
}

TEST_CASE("normalization rescales and flags failures") {
  const StateVector stretched(1, {Amp{2.0, 0.0}, Amp{0.0, 0.0}});
  REQUIRE_FALSE(stretched.is_normalized());
  REQUIRE(stretched.normalized().amplitude(0) == Amp{1.0, 0.0});
  REQUIRE_THROWS_AS(StateVector(1, std::vector<Amp>(2)).normalized(), NotNormalized);
}

TEST_CASE("projector specs validate their qubits") {
  REQUIRE_THROWS_AS(project(bell_pair(), ProjectorSpec{{{5, 0}}}), InvalidIndex);
  REQUIRE_THROWS_AS(project(bell_pair(), ProjectorSpec{{{0, 2}}}), InvalidIndex);
  REQUIRE_THROWS_AS(project(bell_pair(), ProjectorSpec{{{0, 0}, {0, 1}}}), InvalidIndex);
}
