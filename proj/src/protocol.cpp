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

#include "belltransfer/protocol.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "belltransfer/filterops.hpp"

namespace belltransfer {

namespace {

constexpr const char* kOutcomeLabels[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};
constexpr double kSqrt2 = 1.4142135623730950488;

// Qubit layout of the composed register: message qubits 0..k-1, then one
// two-qubit pair per channel. "Sender" is the pair half measured jointly
// with its message qubit; "receiver" is the half the state ends up on.
// For two pairs the published register order is kept: the measuring party
// holds the first half of pair A but the second half of pair B, and the
// final projection pins both of those halves to 0. For any other k the
// pairs are laid out receiver-first, with each sender pinned to its value
// in the channel's a-term (0 on correlated pairs, 1 on anticorrelated).
struct Frame {
  int k = 0;
  int n = 0;
  std::vector<int> sender;
  std::vector<int> receiver;
  std::vector<int> sender_pin;
};

Frame make_frame(const std::vector<ChannelSpec>& channels) {
  Frame f;
  f.k = static_cast<int>(channels.size());
  f.n = 3 * f.k;
  if (f.k == 2) {
    f.sender = {2, 5};
    f.receiver = {3, 4};
    f.sender_pin = {0, 0};
    return f;
  }
  for (int j = 0; j < f.k; ++j) {
    f.receiver.push_back(f.k + 2 * j);
    f.sender.push_back(f.k + 2 * j + 1);
    f.sender_pin.push_back(channels[j].parity == ChannelParity::anticorrelated ? 1 : 0);
  }
  return f;
}

std::uint64_t with_bit(std::uint64_t index, int qubit, int n, int bit) {
  return bit ? (index | (std::uint64_t{1} << (n - 1 - qubit))) : index;
}

int label_bit(std::uint64_t x, int channel, int k) {
  return static_cast<int>((x >> (k - 1 - channel)) & 1u);
}

// Basis index the protocol sends input label x to: message cleared, senders
// at their pins, receiver j carrying bit j of x.
std::uint64_t target_index(const Frame& f, std::uint64_t x) {
  std::uint64_t index = 0;
  for (int j = 0; j < f.k; ++j) {
    index = with_bit(index, f.receiver[j], f.n, label_bit(x, j, f.k));
    index = with_bit(index, f.sender[j], f.n, f.sender_pin[j]);
  }
  return index;
}

std::vector<std::uint64_t> all_targets(const Frame& f) {
  std::vector<std::uint64_t> targets(std::uint64_t{1} << f.k);
  for (std::uint64_t x = 0; x < targets.size(); ++x) {
    targets[x] = target_index(f, x);
  }
  return targets;
}

ProjectorSpec target_pins(const Frame& f) {
  ProjectorSpec pins;
  for (int j = 0; j < f.k; ++j) {
    pins.constrained.emplace_back(j, 0);
  }
  for (int j = 0; j < f.k; ++j) {
    pins.constrained.emplace_back(f.sender[j], f.sender_pin[j]);
  }
  return pins;
}

// Basis index of the composed-state term for input label x: channel j
// contributes its a component when bit j of x is 0, its b component when 1.
std::uint64_t composed_label(const Frame& f, const std::vector<ChannelSpec>& channels,
                             std::uint64_t x) {
  std::uint64_t index = 0;
  for (int j = 0; j < f.k; ++j) {
    index = with_bit(index, j, f.n, label_bit(x, j, f.k));
    const bool takes_b = label_bit(x, j, f.k) != 0;
    int sender_bit;
    int receiver_bit;
    if (channels[j].parity == ChannelParity::correlated) {
      sender_bit = takes_b ? 1 : 0;
      receiver_bit = sender_bit;
    } else {
      sender_bit = takes_b ? 0 : 1;
      receiver_bit = takes_b ? 1 : 0;
    }
    index = with_bit(index, f.sender[j], f.n, sender_bit);
    index = with_bit(index, f.receiver[j], f.n, receiver_bit);
  }
  return index;
}

// Basis index that carries input label x after the joint measurement lands
// on phases phi and parities v: message reads phi, senders read v, and
// receiver j holds the channel component selected by v_j XOR x_j.
std::uint64_t survivor_index(const Frame& f, const std::vector<ChannelSpec>& channels,
                             std::uint64_t x, const std::vector<int>& phi,
                             const std::vector<int>& v) {
  std::uint64_t index = 0;
  for (int j = 0; j < f.k; ++j) {
    index = with_bit(index, j, f.n, phi[j]);
    index = with_bit(index, f.sender[j], f.n, v[j]);
    const int s = label_bit(x, j, f.k) ^ v[j];
    const int receiver_bit = channels[j].parity == ChannelParity::correlated ? s : 1 - s;
    index = with_bit(index, f.receiver[j], f.n, receiver_bit);
  }
  return index;
}

// Product of per-channel coefficients scaling the transfer of label x in the
// (phi, v) measurement branch, measurement phase signs included.
double branch_product(const std::vector<ChannelSpec>& channels, std::uint64_t x,
                      const std::vector<int>& phi, const std::vector<int>& v) {
  const int k = static_cast<int>(channels.size());
  double product = 1.0;
  for (int j = 0; j < k; ++j) {
    const int xj = label_bit(x, j, k);
    if ((xj & phi[j]) != 0) {
      product = -product;
    }
    const int s = xj ^ v[j];
    const int a_selector = channels[j].parity == ChannelParity::anticorrelated ? 1 : 0;
    product *= (s == a_selector) ? channels[j].a() : channels[j].signed_b();
  }
  return product;
}

// Indices carrying the input labels when the staged run reaches its
// permutation: the composed-state terms, with the first message qubit
// cleared by the two-pair route's mask.
std::vector<std::uint64_t> staged_survivors(const Frame& f,
                                            const std::vector<ChannelSpec>& channels) {
  std::vector<std::uint64_t> survivors(std::uint64_t{1} << f.k);
  const std::uint64_t clear_q0 = ~(std::uint64_t{1} << (f.n - 1));
  for (std::uint64_t x = 0; x < survivors.size(); ++x) {
    survivors[x] = composed_label(f, channels, x);
    if (f.k == 2) {
      survivors[x] &= clear_q0;
    }
  }
  return survivors;
}

std::vector<double> departures_of(const std::vector<ChannelSpec>& channels) {
  std::vector<double> deltas;
  deltas.reserve(channels.size());
  for (const ChannelSpec& spec : channels) {
    deltas.push_back(spec.departure);
  }
  return deltas;
}

}  // namespace

int InputState::num_qubits() const {
  const std::size_t size = coefficients.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw DimensionMismatch("input needs a power-of-two coefficient count, got " +
                            std::to_string(size));
  }
  int k = 0;
  while ((std::size_t{1} << k) < size) {
    ++k;
  }
  return k;
}

void InputState::check(int k) const {
  if (num_qubits() != k) {
    throw DimensionMismatch("input has " + std::to_string(coefficients.size()) +
                            " coefficients, expected " + std::to_string(std::size_t{1} << k));
  }
  double sum = 0.0;
  for (const Amp& c : coefficients) {
    sum += std::norm(c);
  }
  if (std::abs(std::sqrt(sum) - 1.0) > kInputNormTolerance) {
    throw NotNormalized("input norm " + std::to_string(std::sqrt(sum)) + " is not 1");
  }
}

InputState random_input(int k, SeededRng& rng) {
  if (k < 1 || k > 10) {
    throw DimensionMismatch("random input supports 1 to 10 qubits");
  }
  InputState input;
  input.coefficients.resize(std::size_t{1} << k);
  double sum = 0.0;
  while (sum == 0.0) {
    for (Amp& c : input.coefficients) {
      c = Amp{rng.gaussian(), rng.gaussian()};
      sum += std::norm(c);
    }
  }
  const double scale = 1.0 / std::sqrt(sum);
  for (Amp& c : input.coefficients) {
    c *= scale;
  }
  return input;
}

StateVector compose_correlated_state(const InputState& input,
                                     const std::vector<ChannelSpec>& channels) {
  const int k = static_cast<int>(channels.size());
  if (k < 1 || 3 * k > 30) {
    throw DimensionMismatch("composition needs between 1 and 10 channel pairs");
  }
  input.check(k);
  const CoefficientProducts m = coefficient_products(channels);
  const Frame f = make_frame(channels);
  std::vector<Amp> amplitudes(std::uint64_t{1} << f.n, Amp{0.0, 0.0});
  for (std::uint64_t x = 0; x < input.coefficients.size(); ++x) {
    amplitudes[composed_label(f, channels, x)] = input.coefficients[x] * m.values[x];
  }
  return StateVector(f.n, std::move(amplitudes));
}

TraceReport trace_single_branch(const InputState& input,
                                const std::vector<ChannelSpec>& channels) {
  const int k = static_cast<int>(channels.size());
  if (k != 2 && k != 3) {
    throw Error("the staged trace covers two or three channel pairs only");
  }
  input.check(k);
  const CoefficientProducts m = coefficient_products(channels);
  if (m.least_index != 0) {
    throw AssumptionViolated(
        "the published operator tables assume the all-a coefficient product is the least; "
        "these departures make product " +
        std::to_string(m.least_index + 1) + " smaller");
  }
  const Frame f = make_frame(channels);
  const std::uint64_t dim = std::uint64_t{1} << f.n;
  const double scale = (k == 2) ? kSqrt2 : 1.0;

  TraceReport report;
  report.k = k;
  report.deltas = departures_of(channels);
  report.least_index = m.least_index;

  StateVector current = compose_correlated_state(input, channels);
  report.stages.push_back({"initial", current, 1.0});

  if (k == 2) {
    // The published two-pair run rotates and pins only the first message
    // qubit; the remaining readouts ride along into the final projection.
    current = apply_gate(current, bell_rotation(), {0});
    report.stages.push_back({"post_bell", current, 1.0});
    current = mask_subspace(current, ProjectorSpec{{{0, 0}}});
    report.stages.push_back({"post_measure", current, scale});
  }

  const std::vector<std::uint64_t> targets = all_targets(f);
  const OperatorMatrix permutation = build_permutation(
      derive_permutation_for_branch(staged_survivors(f, channels), targets), dim);
  current = apply_operator(current, permutation);
  report.stages.push_back({"post_U", current, scale});

  const OperatorMatrix filter = (k == 2)
                                    ? literal_filter_bipartite(m)
                                    : build_filter(filter_plan_for(m, targets, dim), dim);
  current = apply_operator(current, filter);
  report.stages.push_back({"post_F", current, scale});

  current = mask_subspace(current, target_pins(f));
  report.stages.push_back({"post_projection", current, scale});

  report.single_branch_probability = current.norm_tracked() * current.norm_tracked();
  report.total_probability = analytic_success_probability(channels);
  report.discrepancies = ledger_for_k(k);
  return report;
}

TransferReport run_full_protocol(const InputState& input,
                                 const std::vector<ChannelSpec>& channels) {
  const int k = static_cast<int>(channels.size());
  if (k < 1 || 3 * k > 30) {
    throw DimensionMismatch("the protocol needs between 1 and 10 channel pairs");
  }
  input.check(k);
  const CoefficientProducts m = coefficient_products(channels);
  const double mu = std::abs(m.least_value);
  const Frame f = make_frame(channels);
  const std::uint64_t labels = std::uint64_t{1} << k;

  // The physical route works on the true product of message and pairs, not
  // the correlated composition the staged walk starts from; the correlation
  // emerges here from the explicit pair measurements below.
  std::vector<StateVector> parts;
  parts.reserve(channels.size() + 1);
  parts.emplace_back(k, input.coefficients);
  for (const ChannelSpec& spec : channels) {
    parts.push_back(make_channel(spec));
  }
  StateVector measured = tensor(parts);
  for (int j = 0; j < k; ++j) {
    measured = apply_gate(measured, cnot_gate(), {j, f.sender[j]});
  }
  for (int j = 0; j < k; ++j) {
    measured = apply_gate(measured, bell_rotation(), {j});
  }

  const std::vector<std::uint64_t> targets = all_targets(f);
  const std::vector<std::uint64_t> junk =
      default_junk_indices(targets, std::uint64_t{1} << f.n, targets.size());
  const ProjectorSpec pins = target_pins(f);
  const StateVector reference(k, input.coefficients);

  TransferReport report;
  report.k = k;
  report.deltas = departures_of(channels);
  report.p_analytic = analytic_success_probability(channels);
  report.p_simulated = 0.0;
  double min_fidelity = std::numeric_limits<double>::infinity();

  std::vector<int> phi(k);
  std::vector<int> v(k);
  const std::uint64_t branch_count = std::uint64_t{1} << (2 * k);
  report.branches.reserve(branch_count);
  for (std::uint64_t o = 0; o < branch_count; ++o) {
    BranchOutcome branch;
    ProjectorSpec readout;
    for (int j = 0; j < k; ++j) {
      const int oj = static_cast<int>((o >> (2 * (k - 1 - j))) & 3u);
      v[j] = oj >> 1;
      phi[j] = oj & 1;
      if (j != 0) {
        branch.outcome += ',';
      }
      branch.outcome += kOutcomeLabels[oj];
      readout.constrained.emplace_back(j, phi[j]);
      readout.constrained.emplace_back(f.sender[j], v[j]);
    }

    auto [p_measure, collapsed] = project(measured, readout);
    branch.measurement_probability = p_measure;
    if (collapsed.is_empty()) {
      // Unreachable for a normalized input over non-degenerate channels, but
      // a dead branch carries no state to score, so it is skipped here.
      branch.branch_probability = 0.0;
      branch.fidelity = 0.0;
      report.branches.push_back(std::move(branch));
      continue;
    }

    std::vector<std::uint64_t> survivors(labels);
    FilterPlan plan;
    plan.retained = targets;
    plan.junk = junk;
    plan.ratios.resize(labels);
    for (std::uint64_t x = 0; x < labels; ++x) {
      survivors[x] = survivor_index(f, channels, x, phi, v);
      plan.ratios[x] = Amp{mu / branch_product(channels, x, phi, v), 0.0};
    }

    const StateVector permuted =
        apply_permutation_pairs(collapsed, derive_permutation_for_branch(survivors, targets));
    const StateVector filtered = apply_filter_plan(permuted, plan);
    auto [p_accept, final_state] = project(filtered, pins);

    branch.branch_probability = p_measure * p_accept;
    branch.receiver.resize(labels);
    for (std::uint64_t x = 0; x < labels; ++x) {
      branch.receiver[x] = final_state.amplitude(targets[x]);
    }
    branch.fidelity = fidelity(StateVector(k, branch.receiver), reference);
    min_fidelity = std::min(min_fidelity, branch.fidelity);
    report.p_simulated += branch.branch_probability;
    report.branches.push_back(std::move(branch));
  }

  report.min_fidelity = std::isfinite(min_fidelity) ? min_fidelity : 0.0;
  report.discrepancies = ledger_for_k(k);
  return report;
}

std::vector<NamedOperator> staged_operators(const std::vector<ChannelSpec>& channels) {
  const int k = static_cast<int>(channels.size());
  if (k != 2 && k != 3) {
    throw Error("staged operators are defined for two or three channel pairs only");
  }
  const CoefficientProducts m = coefficient_products(channels);
  if (m.least_index != 0) {
    throw AssumptionViolated(
        "the published operator tables assume the all-a coefficient product is the "
        "least; these departures make product " +
        std::to_string(m.least_index + 1) + " smaller");
  }

  const Frame f = make_frame(channels);
  const std::uint64_t dim = std::uint64_t{1} << f.n;
  const std::vector<std::uint64_t> targets = all_targets(f);

  std::vector<NamedOperator> ops;
  ops.push_back({"permutation",
                 build_permutation(
                     derive_permutation_for_branch(staged_survivors(f, channels), targets),
                     dim)});
  ops.push_back({"filter_literal",
                 k == 2 ? literal_filter_bipartite(m) : literal_filter_tripartite(m)});
  ops.push_back({"filter_constructive",
                 build_filter(filter_plan_for(m, targets, dim), dim)});
  return ops;
}

std::vector<BellOutcome> bell_measure_pair(const StateVector& state, int message_qubit,
                                           int partner_qubit) {
  StateVector rotated = apply_gate(state, cnot_gate(), {message_qubit, partner_qubit});
  rotated = apply_gate(rotated, bell_rotation(), {message_qubit});
  std::vector<BellOutcome> outcomes;
  outcomes.reserve(4);
  for (int o = 0; o < 4; ++o) {
    const int v = o >> 1;
    const int phi = o & 1;
    auto [probability, collapsed] =
        project(rotated, ProjectorSpec{{{message_qubit, phi}, {partner_qubit, v}}});
    outcomes.push_back({kOutcomeLabels[o], probability, std::move(collapsed)});
  }
  return outcomes;
}

}  // namespace belltransfer
