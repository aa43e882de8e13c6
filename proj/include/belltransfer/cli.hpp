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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace belltransfer {

// Shared spelling of the per-subcommand options; the parser fills one of
// these and the cmd_* entry points do the work, so tests can drive them
// without a process boundary.

struct TransferConfig {
  int k = 2;
  std::vector<double> deltas;
  std::optional<std::string> input;  // comma list of re or re:im
  std::uint64_t seed = 0;
  std::optional<std::string> out;  // default stdout
};

struct TraceConfig {
  std::vector<double> deltas;           // length fixes k (2 or 3)
  std::optional<std::string> input;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool dump_operators = false;
};

struct SweepConfig {
  int k = 2;
  std::optional<std::string> grid;  // min:max:steps per axis, comma-separated
  std::string input_mode = "random";
  std::optional<std::string> input;  // fixed-mode coefficients
  std::uint64_t seed = 42;
  int threads = -1;  // -1: consult BELLTRANSFER_THREADS, else 0 = auto
  std::optional<std::string> out;
};

struct VerifyConfig {
  std::uint64_t seed = 12345;
  double tolerance = 1e-10;
  std::optional<std::string> out;
  bool dump_operators = false;
};

int cmd_transfer(const TransferConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_trace(const TraceConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line: parse argv, dispatch, map failures to the exit-code
// contract (0 success, 1 usage, 2 domain or invariant violation).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace belltransfer
