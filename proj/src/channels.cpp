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

#include "belltransfer/channels.hpp"

#include <cmath>
#include <cstdint>

#include "belltransfer/tolerances.hpp"

namespace belltransfer {

double ChannelSpec::a() const { return std::sin(kQuarterPi + departure); }

double ChannelSpec::b() const { return std::cos(kQuarterPi + departure); }

double ChannelSpec::signed_b() const { return second_term_sign * b(); }

bool ChannelSpec::degenerate() const {
  if (std::abs(departure) >= kQuarterPi) {
    return true;
  }
  return std::min(std::abs(a()), std::abs(b())) <= kDegeneracyCutoff;
}

std::vector<ChannelSpec> standard_channels(const std::vector<double>& deltas) {
  std::vector<ChannelSpec> channels;
  channels.reserve(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    ChannelSpec spec;
    switch (i % 3) {
      case 0:
        spec.parity = ChannelParity::correlated;
        spec.second_term_sign = +1;
        break;
      case 1:
        spec.parity = ChannelParity::anticorrelated;
        spec.second_term_sign = +1;
        break;
      default:
        spec.parity = ChannelParity::correlated;
        spec.second_term_sign = -1;
        break;
    }
    spec.departure = deltas[i];
    channels.push_back(spec);
  }
  return channels;
}

StateVector make_channel(const ChannelSpec& spec) {
  std::vector<Amp> amps(4, Amp{0.0, 0.0});
  if (spec.parity == ChannelParity::correlated) {
    amps[0] = Amp{spec.a(), 0.0};
    amps[3] = Amp{spec.signed_b(), 0.0};
  } else {
    amps[1] = Amp{spec.a(), 0.0};
    amps[2] = Amp{spec.signed_b(), 0.0};
  }
  return StateVector(2, std::move(amps));
}

CoefficientProducts coefficient_products(const std::vector<ChannelSpec>& channels) {
  const std::size_t k = channels.size();
  if (k == 0 || k > 20) {
    throw DimensionMismatch("coefficient products need between 1 and 20 channels");
  }
  for (const ChannelSpec& spec : channels) {
    if (spec.degenerate()) {
      throw DegenerateChannel("channel departure " + std::to_string(spec.departure) +
                              " leaves no usable entanglement");
    }
  }
  CoefficientProducts out;
  out.values.resize(std::size_t{1} << k);
  for (std::uint64_t idx = 0; idx < out.values.size(); ++idx) {
    double product = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool takes_b = ((idx >> (k - 1 - j)) & 1u) != 0;
      product *= takes_b ? channels[j].signed_b() : channels[j].a();
    }
    out.values[idx] = product;
  }
  out.least_index = 0;
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (std::abs(out.values[i]) < std::abs(out.values[out.least_index])) {
      out.least_index = static_cast<int>(i);
    }
  }
  out.least_value = out.values[static_cast<std::size_t>(out.least_index)];
  return out;
}

double analytic_success_probability(const std::vector<ChannelSpec>& channels) {
  const CoefficientProducts m = coefficient_products(channels);
  const double least = std::abs(m.least_value);
  return static_cast<double>(std::uint64_t{1} << channels.size()) * least * least;
}

}  // namespace belltransfer
