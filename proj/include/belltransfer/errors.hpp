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

#include <stdexcept>
#include <string>

namespace belltransfer {

// Base class for every domain failure the library can raise. The CLI maps
// these to exit code 2; anything else escaping a command is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Vector/matrix/qubit-count shapes do not line up.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A state that must be normalized is not (beyond kInputNormTolerance).
class NotNormalized : public Error {
 public:
  using Error::Error;
};

// A channel coefficient is below kDegeneracyCutoff, or the departure sits at
// or beyond the |delta| = pi/4 boundary; filter ratios would be meaningless.
class DegenerateChannel : public Error {
 public:
  using Error::Error;
};

// The literal operator tables assume the all-a coefficient product is the
// smallest; raised when the requested departures break that assumption.
class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

// A basis index is out of range or repeated where distinct values are needed.
class InvalidIndex : public Error {
 public:
  using Error::Error;
};

// A permutation pair reuses an index already routed elsewhere.
class DuplicateMapping : public Error {
 public:
  using Error::Error;
};

// A filter ratio exceeds magnitude 1; no unitary block can realize it.
class RatioOutOfRange : public Error {
 public:
  using Error::Error;
};

// Retained and junk index sets of a filter plan are not disjoint.
class IndexCollision : public Error {
 public:
  using Error::Error;
};

// An operator failed the unitarity check and may not be applied.
class NonUnitaryOperator : public Error {
 public:
  using Error::Error;
};

}  // namespace belltransfer
