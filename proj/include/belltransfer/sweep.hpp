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
#include <vector>

#include "belltransfer/channels.hpp"
#include "belltransfer/statevec.hpp"

namespace belltransfer {

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 2;  // grid points per axis, at least 2

  double value(int i) const;  // endpoint-exact linear spacing
};

// What rides each grid point: analytic probability only, the full protocol on
// a fixed input, or the full protocol on a per-point random input.
enum class InputMode { fixed, random, analytic_only };

struct GridSpec {
  std::vector<AxisSpec> axes;  // one per channel pair
  int k = 2;
  InputMode input_mode = InputMode::random;

  void check() const;
  std::uint64_t total_points() const;
};

// One grid point. Simulation fields are NaN in analytic_only mode.
struct SweepRow {
  std::vector<double> deltas;
  double p_analytic = 0.0;
  double p_simulated = 0.0;
  double fidelity_min = 0.0;
};

// Evaluate the grid row-major (last axis fastest). Fixed mode transfers
// `fixed_input` everywhere; random mode derives an independent generator per
// point from (seed, flat index), so results are identical for any thread
// count. threads = 0 picks hardware concurrency.
std::vector<SweepRow> run_sweep(const GridSpec& grid, const std::vector<Amp>& fixed_input,
                                std::uint64_t seed, int threads);

}  // namespace belltransfer
