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

namespace belltransfer {

// Numerical thresholds used across the library. State spaces stay at or below
// 512 dimensions, so double precision leaves a wide margin everywhere.

// Acceptance band for user-supplied state norms.
inline constexpr double kInputNormTolerance = 1e-9;

// Ceiling on max|O†O - I| (and |OO† - I|) for an operator to count as unitary.
inline constexpr double kUnitarityTolerance = 1e-12;

// Probability and fidelity assertions.
inline constexpr double kProbabilityTolerance = 1e-12;

// Agreement between the analytic success probability and the value obtained
// by enumerating every measurement branch.
inline constexpr double kOracleTolerance = 1e-10;

// Below this, a channel coefficient is treated as zero and the channel as
// degenerate (filter ratios would divide by it).
inline constexpr double kDegeneracyCutoff = 1e-15;

}  // namespace belltransfer
