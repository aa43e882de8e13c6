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

#include <cstdint>
#include <string>
#include <vector>

#include "belltransfer/channels.hpp"
#include "belltransfer/filterops.hpp"
#include "belltransfer/ledger.hpp"
#include "belltransfer/rng.hpp"
#include "belltransfer/statevec.hpp"

namespace belltransfer {

// Message state to transfer: 2^k coefficients over k qubits, normalized.
struct InputState {
  std::vector<Amp> coefficients;

  int num_qubits() const;
  void check(int k) const;  // throws unless normalized with 2^k entries
};

InputState random_input(int k, SeededRng& rng);

// One of the 4^k joint measurement outcomes and what the protocol does with
// it. `outcome` joins the per-pair labels (Phi+, Phi-, Psi+, Psi-) with
// commas, message pair first. measurement_probability is the chance the
// measurement lands on this branch; branch_probability is that times the
// branch's filtering acceptance, so the 4^k values sum to the total success
// probability. `receiver` holds the post-selection receiver-register state.
struct BranchOutcome {
  std::string outcome;
  double measurement_probability = 0.0;
  double branch_probability = 0.0;
  double fidelity = 0.0;
  std::vector<Amp> receiver;
};

struct TransferReport {
  int k = 0;
  std::vector<double> deltas;
  double p_analytic = 0.0;
  double p_simulated = 0.0;
  double min_fidelity = 0.0;
  std::vector<BranchOutcome> branches;
  std::vector<LedgerEntry> discrepancies;
};

// The correlated 3k-qubit state the staged walk starts from: message label x
// rides its matching channel terms, so each of the 2^k basis terms carries
// amplitude c_x times the product of one coefficient (a or signed b, picked
// by bit j of x) per channel. Message qubits come first, then each pair's
// two qubits. The result is deliberately unnormalized (its norm is tracked);
// the full-protocol run starts from the genuine product state instead and
// reaches the same branch structure through explicit pair measurements.
StateVector compose_correlated_state(const InputState& input,
                                     const std::vector<ChannelSpec>& channels);

// Snapshot of the register after one named stage of the worked protocol run.
// printed_scale is the constant the published listing multiplies amplitudes
// by at that stage (it drops normalization factors along the way); `state`
// always carries the true amplitudes.
struct TraceStage {
  std::string name;
  StateVector state;
  double printed_scale = 1.0;
};

struct TraceReport {
  int k = 0;
  std::vector<double> deltas;
  int least_index = 0;
  double single_branch_probability = 0.0;
  double total_probability = 0.0;
  std::vector<TraceStage> stages;
  std::vector<LedgerEntry> discrepancies;
};

// Walk the published worked example's branch (all pairs on their first
// outcome) stage by stage, k = 2 or 3 only. The two-pair route measures one
// pair explicitly (rotation, then masking to its kept outcome) and then
// permutes; the three-pair route goes straight from composition to the
// permutation. Requires the all-a coefficient product to be the least, as
// the published operators assume; throws AssumptionViolated otherwise.
TraceReport trace_single_branch(const InputState& input,
                                const std::vector<ChannelSpec>& channels);

// All 4^k branches: measure, permute, filter, project, score fidelity
// against the input. Works for any k >= 1 with non-degenerate channels.
TransferReport run_full_protocol(const InputState& input,
                                 const std::vector<ChannelSpec>& channels);

struct NamedOperator {
  std::string name;
  OperatorMatrix op;
};

// The operators of the staged run at these departures: the derived
// permutation, the published filter transcription, and the constructive
// filter, named "permutation", "filter_literal", "filter_constructive".
// Same preconditions as trace_single_branch.
std::vector<NamedOperator> staged_operators(const std::vector<ChannelSpec>& channels);

// Joint measurement of one channel pair in the correlated basis.
struct BellOutcome {
  std::string label;      // Phi+, Phi-, Psi+, Psi-
  double probability = 0.0;
  StateVector collapsed;  // remaining register, measured pair pinned
};

// Measure qubits (message_qubit, partner_qubit) of `state` in the correlated
// basis: entangle message onto partner, rotate the message qubit, read both.
// Returns the four outcomes in label order; zero-probability outcomes carry
// an empty collapsed state.
std::vector<BellOutcome> bell_measure_pair(const StateVector& state, int message_qubit,
                                           int partner_qubit);

}  // namespace belltransfer
