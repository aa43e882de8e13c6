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

#include <algorithm>
#include <cmath>

namespace belltransfer {

namespace {

double norm_of(const std::vector<Amp>& amps) {
  double sum = 0.0;
  for (const Amp& a : amps) {
    sum += std::norm(a);
  }
  return std::sqrt(sum);
}

void check_qubit(int qubit, int num_qubits) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw InvalidIndex("qubit " + std::to_string(qubit) + " out of range for " +
                       std::to_string(num_qubits) + " qubits");
  }
}

void check_constraints(const ProjectorSpec& proj, int num_qubits) {
  for (std::size_t i = 0; i < proj.constrained.size(); ++i) {
    const auto& [qubit, bit] = proj.constrained[i];
    check_qubit(qubit, num_qubits);
    if (bit != 0 && bit != 1) {
      throw InvalidIndex("projector bit for qubit " + std::to_string(qubit) +
                         " must be 0 or 1, got " + std::to_string(bit));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (proj.constrained[j].first == qubit) {
        throw InvalidIndex("projector constrains qubit " + std::to_string(qubit) + " twice");
      }
    }
  }
}

bool matches(std::uint64_t index, const ProjectorSpec& proj, int num_qubits) {
  for (const auto& [qubit, bit] : proj.constrained) {
    if (bit_at(index, qubit, num_qubits) != bit) {
      return false;
    }
  }
  return true;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw DimensionMismatch("qubit count " + std::to_string(num_qubits) + " out of range");
  }
  amplitudes_.assign(std::uint64_t{1} << num_qubits, Amp{0.0, 0.0});
  amplitudes_[0] = Amp{1.0, 0.0};
  norm_tracked_ = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amp> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits < 1 || num_qubits > 30 ||
      amplitudes_.size() != (std::uint64_t{1} << num_qubits)) {
    throw DimensionMismatch("amplitude count " + std::to_string(amplitudes_.size()) +
                            " does not match " + std::to_string(num_qubits) + " qubits");
  }
  norm_tracked_ = norm_of(amplitudes_);
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  StateVector state(num_qubits);
  if (index >= state.dim()) {
    throw InvalidIndex("basis index " + std::to_string(index) + " out of range");
  }
  state.amplitudes_[0] = Amp{0.0, 0.0};
  state.amplitudes_[index] = Amp{1.0, 0.0};
  return state;
}

StateVector StateVector::empty_state(int num_qubits) {
  StateVector state(num_qubits);
  state.amplitudes_[0] = Amp{0.0, 0.0};
  state.norm_tracked_ = 0.0;
  state.empty_ = true;
  return state;
}

Amp StateVector::amplitude(std::uint64_t index) const {
  if (index >= dim()) {
    throw InvalidIndex("basis index " + std::to_string(index) + " out of range");
  }
  return amplitudes_[index];
}

bool StateVector::is_normalized(double tol) const {
  return !empty_ && std::abs(norm_tracked_ - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  if (empty_ || norm_tracked_ <= 0.0) {
    throw NotNormalized("cannot normalize a zero state");
  }
  std::vector<Amp> scaled = amplitudes_;
  for (Amp& a : scaled) {
    a /= norm_tracked_;
  }
  return StateVector(num_qubits_, std::move(scaled));
}

std::uint64_t basis_index(const std::vector<int>& bits) {
  std::uint64_t index = 0;
  for (int bit : bits) {
    if (bit != 0 && bit != 1) {
      throw InvalidIndex("basis bits must be 0 or 1");
    }
    index = (index << 1) | static_cast<std::uint64_t>(bit);
  }
  return index;
}

int bit_at(std::uint64_t index, int qubit, int num_qubits) {
  check_qubit(qubit, num_qubits);
  return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
}

std::string basis_label(std::uint64_t index, int num_qubits) {
  std::string label(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    label[static_cast<std::size_t>(q)] = static_cast<char>('0' + bit_at(index, q, num_qubits));
  }
  return label;
}

StateVector tensor(const std::vector<StateVector>& parts) {
  if (parts.empty()) {
    throw DimensionMismatch("tensor of zero factors");
  }
  int total_qubits = 0;
  std::vector<Amp> amps{Amp{1.0, 0.0}};
  for (const StateVector& part : parts) {
    total_qubits += part.num_qubits();
    if (total_qubits > 30) {
      throw DimensionMismatch("tensor product exceeds 30 qubits");
    }
    std::vector<Amp> next(amps.size() * part.dim());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      for (std::uint64_t j = 0; j < part.dim(); ++j) {
        next[i * part.dim() + j] = amps[i] * part.amplitudes()[j];
      }
    }
    amps = std::move(next);
  }
  return StateVector(total_qubits, std::move(amps));
}

StateVector apply_gate(const StateVector& state, const std::vector<Amp>& gate,
                       const std::vector<int>& targets) {
  const int n = state.num_qubits();
  const std::size_t t = targets.size();
  if ((t != 1 && t != 2) || gate.size() != (std::size_t{1} << t) * (std::size_t{1} << t)) {
    throw DimensionMismatch("gate must be 2x2 on one target or 4x4 on two");
  }
  for (int q : targets) {
    check_qubit(q, n);
  }
  if (t == 2 && targets[0] == targets[1]) {
    throw InvalidIndex("gate targets must be distinct");
  }

  const std::uint64_t dim = state.dim();
  std::vector<Amp> out(dim, Amp{0.0, 0.0});
  const std::size_t block = std::size_t{1} << t;

  // Walk each orbit once: indices with all target bits clear enumerate the
  // orbits, and the gate mixes the 2^t members of each.
  std::uint64_t target_mask = 0;
  for (int q : targets) {
    target_mask |= std::uint64_t{1} << (n - 1 - q);
  }
  for (std::uint64_t base = 0; base < dim; ++base) {
    if ((base & target_mask) != 0) {
      continue;
    }
    std::uint64_t member[4] = {0, 0, 0, 0};
    for (std::size_t g = 0; g < block; ++g) {
      std::uint64_t idx = base;
      for (std::size_t pos = 0; pos < t; ++pos) {
        if ((g >> (t - 1 - pos)) & 1u) {
          idx |= std::uint64_t{1} << (n - 1 - targets[pos]);
        }
      }
      member[g] = idx;
    }
    for (std::size_t row = 0; row < block; ++row) {
      Amp acc{0.0, 0.0};
      for (std::size_t col = 0; col < block; ++col) {
        acc += gate[row * block + col] * state.amplitudes()[member[col]];
      }
      out[member[row]] = acc;
    }
  }
  return StateVector(n, std::move(out));
}

std::pair<double, StateVector> project(const StateVector& state, const ProjectorSpec& proj) {
  const int n = state.num_qubits();
  check_constraints(proj, n);
  const double total = state.norm_tracked() * state.norm_tracked();
  if (total <= 0.0) {
    return {0.0, StateVector::empty_state(n)};
  }
  double kept = 0.0;
  std::vector<Amp> amps(state.dim(), Amp{0.0, 0.0});
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (matches(i, proj, n)) {
      amps[i] = state.amplitudes()[i];
      kept += std::norm(amps[i]);
    }
  }
  const double probability = kept / total;
  if (kept <= 0.0) {
    return {0.0, StateVector::empty_state(n)};
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (Amp& a : amps) {
    a *= scale;
  }
  return {probability, StateVector(n, std::move(amps))};
}

StateVector mask_subspace(const StateVector& state, const ProjectorSpec& proj) {
  const int n = state.num_qubits();
  check_constraints(proj, n);
  std::vector<Amp> amps(state.dim(), Amp{0.0, 0.0});
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (matches(i, proj, n)) {
      amps[i] = state.amplitudes()[i];
    }
  }
  return StateVector(n, std::move(amps));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("fidelity of states with different sizes");
  }
  if (!a.is_normalized() || !b.is_normalized()) {
    throw NotNormalized("fidelity requires normalized states");
  }
  Amp overlap{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.dim(); ++i) {
    overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return std::norm(overlap);
}

const std::vector<Amp>& bell_rotation() {
  static const double inv_sqrt2 = 0.70710678118654752440;
  static const std::vector<Amp> gate{Amp{inv_sqrt2, 0.0}, Amp{inv_sqrt2, 0.0},
                                     Amp{inv_sqrt2, 0.0}, Amp{-inv_sqrt2, 0.0}};
  return gate;
}

const std::vector<Amp>& cnot_gate() {
  static const std::vector<Amp> gate{
      Amp{1, 0}, Amp{0, 0}, Amp{0, 0}, Amp{0, 0},  //
      Amp{0, 0}, Amp{1, 0}, Amp{0, 0}, Amp{0, 0},  //
      Amp{0, 0}, Amp{0, 0}, Amp{0, 0}, Amp{1, 0},  //
      Amp{0, 0}, Amp{0, 0}, Amp{1, 0}, Amp{0, 0},
  };
  return gate;
}

}  // namespace belltransfer
