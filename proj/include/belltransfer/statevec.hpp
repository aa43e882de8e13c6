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

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "belltransfer/errors.hpp"
#include "belltransfer/tolerances.hpp"

namespace belltransfer {

using Amp = std::complex<double>;

// Pure state over n qubits as a dense amplitude array.
//
// Ordering convention (used everywhere): qubit 0 is the most significant bit,
// so the basis label b0 b1 ... b(n-1) lives at index sum(b_k * 2^(n-1-k)).
// A 1-based matrix row/column number is then the 0-based index plus one.
//
// norm_tracked() carries the vector's 2-norm explicitly. Most states are
// normalized, but projector masks deliberately leave mass behind, and the
// tracked value is how that mass is read off.
class StateVector {
 public:
  // |00...0>
  explicit StateVector(int num_qubits);

  StateVector(int num_qubits, std::vector<Amp> amplitudes);

  static StateVector basis_state(int num_qubits, std::uint64_t index);

  // Zero vector carrying the empty flag; what project() returns for an
  // outcome of probability zero.
  static StateVector empty_state(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return static_cast<std::uint64_t>(amplitudes_.size()); }
  const std::vector<Amp>& amplitudes() const { return amplitudes_; }
  Amp amplitude(std::uint64_t index) const;
  double norm_tracked() const { return norm_tracked_; }
  bool is_empty() const { return empty_; }
  bool is_normalized(double tol = kInputNormTolerance) const;

  // Rescaled to norm 1; throws NotNormalized on an empty or zero state.
  StateVector normalized() const;

 private:
  int num_qubits_;
  std::vector<Amp> amplitudes_;
  double norm_tracked_ = 0.0;
  bool empty_ = false;
};

// Basis index of the bit string b0 b1 ... (bit 0 most significant).
std::uint64_t basis_index(const std::vector<int>& bits);

// Bit of `qubit` within a basis index, under the convention above.
int bit_at(std::uint64_t index, int qubit, int num_qubits);

// Text form of a basis index, e.g. index 13 over 6 qubits -> "001101".
std::string basis_label(std::uint64_t index, int num_qubits);

// Projector onto fixed values of a subset of qubits, identity elsewhere.
struct ProjectorSpec {
  // (qubit, required bit) pairs; qubits must be distinct.
  std::vector<std::pair<int, int>> constrained;
};

// Kronecker product of the parts, in order; qubit 0 of the result is qubit 0
// of the first part.
StateVector tensor(const std::vector<StateVector>& parts);

// Apply a 2x2 (one target) or 4x4 (two targets) gate. For two targets the
// gate's basis orders the first target's bit above the second's.
StateVector apply_gate(const StateVector& state, const std::vector<Amp>& gate,
                       const std::vector<int>& targets);

// Born-rule measurement of the constrained qubits at the required values.
// Returns the outcome probability (relative to the state's total mass) and
// the renormalized post-measurement state; probability zero yields an
// empty-flagged state instead of an error.
std::pair<double, StateVector> project(const StateVector& state, const ProjectorSpec& proj);

// Zero out every amplitude outside the constrained subspace, keeping the
// surviving amplitudes as they are. The tracked norm of the result is the
// square root of the retained mass.
StateVector mask_subspace(const StateVector& state, const ProjectorSpec& proj);

// |<a|b>|^2 for normalized states of equal size.
double fidelity(const StateVector& a, const StateVector& b);

// The single-qubit rotation |0> -> (|0>+|1>)/sqrt(2), |1> -> (|0>-|1>)/sqrt(2)
// that turns a Bell-basis measurement into computational-basis readout.
const std::vector<Amp>& bell_rotation();

// Controlled-NOT as a 4x4 gate; targets order is (control, target).
const std::vector<Amp>& cnot_gate();

}  // namespace belltransfer
