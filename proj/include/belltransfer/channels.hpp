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

#include <vector>

#include "belltransfer/statevec.hpp"

namespace belltransfer {

// Preparation-angle offset of a balanced pair; also the departure magnitude
// at which a channel degenerates to a product state.
inline constexpr double kQuarterPi = 0.78539816339744830962;

// Which two-qubit basis pair the channel spans.
enum class ChannelParity {
  correlated,     // a|00> + s*b|11>
  anticorrelated  // a|01> + s*b|10>
};

// An imperfectly prepared entangled pair. The departure delta measures how
// far the preparation angle sits from the balanced point pi/4:
//   a = sin(pi/4 + delta),  b = cos(pi/4 + delta).
// delta = 0 gives a perfect Bell state; |delta| = pi/4 collapses the pair to
// a product state, which no amount of filtering can use.
struct ChannelSpec {
  ChannelParity parity = ChannelParity::correlated;
  int second_term_sign = +1;  // +1 or -1, the sign in front of b
  double departure = 0.0;     // radians, usable range (-pi/4, pi/4)

  double a() const;
  double b() const;
  double signed_b() const;  // second_term_sign * b()

  // True when either coefficient is below kDegeneracyCutoff or the departure
  // reaches |delta| >= pi/4.
  bool degenerate() const;
};

// The channel pattern the protocol is defined over: channel 0 correlated (+),
// channel 1 anticorrelated (+), channel 2 correlated (-); repeated cyclically
// past three. One departure per channel.
std::vector<ChannelSpec> standard_channels(const std::vector<double>& deltas);

// Two-qubit state of one channel.
StateVector make_channel(const ChannelSpec& spec);

// The 2^k signed products of one coefficient (a or signed b) per channel,
// indexed by the message label whose transfer each product scales: bit j of
// the index (channel 0 most significant) picks a (bit 0) or signed b (bit 1)
// from channel j. The smallest magnitude caps the success probability.
struct CoefficientProducts {
  std::vector<double> values;
  int least_index = 0;      // argmin |values|; lowest index on ties
  double least_value = 0.0; // values[least_index], sign included
};

CoefficientProducts coefficient_products(const std::vector<ChannelSpec>& channels);

// 2^k * min_i |m_i|^2: the total conclusive-transfer probability across all
// measurement branches. Reaches 1 (to rounding) only at zero departure.
double analytic_success_probability(const std::vector<ChannelSpec>& channels);

}  // namespace belltransfer
