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

#include "belltransfer/sweep.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "belltransfer/protocol.hpp"
#include "belltransfer/rng.hpp"

namespace belltransfer {

namespace {

void evaluate_point(const GridSpec& grid, const std::vector<Amp>& fixed_input,
                    std::uint64_t seed, std::uint64_t flat, SweepRow& row) {
  row.deltas.resize(grid.axes.size());
  std::uint64_t rest = flat;
  for (std::size_t axis = grid.axes.size(); axis-- > 0;) {
    const int steps = grid.axes[axis].steps;
    row.deltas[axis] = grid.axes[axis].value(static_cast<int>(rest % steps));
    rest /= steps;
  }
  const std::vector<ChannelSpec> channels = standard_channels(row.deltas);
  row.p_analytic = analytic_success_probability(channels);
  if (grid.input_mode == InputMode::analytic_only) {
    row.p_simulated = std::numeric_limits<double>::quiet_NaN();
    row.fidelity_min = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  InputState input;
  if (grid.input_mode == InputMode::fixed) {
    input.coefficients = fixed_input;
  } else {
    SeededRng rng(mix_seed(seed, flat));
    input = random_input(grid.k, rng);
  }
  const TransferReport report = run_full_protocol(input, channels);
  row.p_simulated = report.p_simulated;
  row.fidelity_min = report.min_fidelity;
}

}  // namespace

double AxisSpec::value(int i) const {
  // Endpoint-exact and negation-symmetric: on a grid with max == -min, the
  // value at step s-1-i is the exact floating-point negation of the value
  // at step i, which the symmetry checks on sweep output rely on.
  return (min * (steps - 1 - i) + max * i) / (steps - 1);
}

void GridSpec::check() const {
  if (k < 1) {
    throw Error("grid needs at least one channel pair");
  }
  if (axes.size() != static_cast<std::size_t>(k)) {
    throw Error("grid needs one axis per channel pair, got " + std::to_string(axes.size()) +
                " axes for " + std::to_string(k) + " pairs");
  }
  for (const AxisSpec& axis : axes) {
    if (axis.steps < 2) {
      throw Error("each grid axis needs at least 2 steps");
    }
    if (!(axis.min < axis.max)) {
      throw Error("each grid axis needs min < max");
    }
    if (axis.min <= -kQuarterPi || axis.max >= kQuarterPi) {
      throw DegenerateChannel("grid axes must stay inside (-pi/4, pi/4)");
    }
  }
}

std::uint64_t GridSpec::total_points() const {
  std::uint64_t total = 1;
  for (const AxisSpec& axis : axes) {
    total *= static_cast<std::uint64_t>(axis.steps);
  }
  return total;
}

std::vector<SweepRow> run_sweep(const GridSpec& grid, const std::vector<Amp>& fixed_input,
                                std::uint64_t seed, int threads) {
  grid.check();
  if (grid.input_mode == InputMode::fixed) {
    InputState probe;
    probe.coefficients = fixed_input;
    probe.check(grid.k);
  }
  const std::uint64_t total = grid.total_points();
  std::vector<SweepRow> rows(total);

  unsigned worker_count = threads > 0 ? static_cast<unsigned>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  worker_count = static_cast<unsigned>(
      std::min<std::uint64_t>(worker_count, std::max<std::uint64_t>(total, 1)));

  if (worker_count <= 1) {
    for (std::uint64_t flat = 0; flat < total; ++flat) {
      evaluate_point(grid, fixed_input, seed, flat, rows[flat]);
    }
    return rows;
  }

  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::vector<std::thread> workers;
  workers.reserve(worker_count);
  for (unsigned w = 0; w < worker_count; ++w) {
    workers.emplace_back([&, w] {
      const std::uint64_t chunk = (total + worker_count - 1) / worker_count;
      const std::uint64_t begin = std::min<std::uint64_t>(total, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
      try {
        for (std::uint64_t flat = begin; flat < end; ++flat) {
          evaluate_point(grid, fixed_input, seed, flat, rows[flat]);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& worker : workers) {
    worker.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return rows;
}

}  // namespace belltransfer
