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
#include <vector>

#include "belltransfer/channels.hpp"
#include "belltransfer/statevec.hpp"

namespace belltransfer {

enum class OperatorKind { permutation, filter, general };

// Whether a matrix was built from its defining action or transcribed verbatim
// from the published element tables. Literal matrices are kept byte-faithful,
// defects included; the constructive forms are what the protocol runs on.
enum class Provenance { constructive, literal };

// Dense square complex matrix over a qubit register. Immutable after
// construction; the unitarity deviation max(|O†O - I|, |OO† - I|) is computed
// up front and cached, and apply_operator refuses matrices over the
// kUnitarityTolerance ceiling. Permutation-kind matrices also carry an index
// map so their application stays exact 0/1 arithmetic.
class OperatorMatrix {
 public:
  static OperatorMatrix identity(std::uint64_t dim);

  // General dense constructor; entries are row-major, length dim*dim.
  OperatorMatrix(std::uint64_t dim, std::vector<Amp> entries, OperatorKind kind,
                 Provenance provenance);

  // Permutation constructor: row i carries a 1 in column source_of[i].
  OperatorMatrix(std::uint64_t dim, std::vector<std::uint64_t> source_of, Provenance provenance);

  std::uint64_t dim() const { return dim_; }
  Amp entry(std::uint64_t row, std::uint64_t col) const;
  const std::vector<Amp>& entries() const { return entries_; }
  OperatorKind kind() const { return kind_; }
  Provenance provenance() const { return provenance_; }

  // Null unless kind() == permutation.
  const std::vector<std::uint64_t>* permutation_map() const;

  double unitarity_deviation() const { return deviation_; }

 private:
  std::uint64_t dim_;
  std::vector<Amp> entries_;
  OperatorKind kind_;
  Provenance provenance_;
  std::vector<std::uint64_t> source_of_;  // empty unless permutation kind
  double deviation_ = 0.0;
};

// (from, to) basis index pairs.
using IndexMapping = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Permutation that routes every `from` to its `to`, extended by the matching
// transpositions (to -> from) and identity elsewhere. Pairs with from == to
// are allowed and ignored; a repeated identical pair is allowed; reusing an
// index across different pairs is not.
OperatorMatrix build_permutation(const IndexMapping& mapping, std::uint64_t dim);

// The mapping build_permutation needs to send each surviving basis state of a
// measurement branch onto its target, fixed points dropped.
IndexMapping derive_permutation_for_branch(const std::vector<std::uint64_t>& surviving,
                                           const std::vector<std::uint64_t>& targets);

// Recipe for a filtering unitary. Slot i pairs retained[i] with junk[i] and
// rescales the retained amplitude by ratios[i], a ratio of coefficient
// products with |r| <= 1; the excess moves onto the junk index, which must be
// unoccupied in the states the filter is meant for (the final projector
// discards it). Plans derived from CoefficientProducts carry ratio exactly 1
// at the least-coefficient slot.
struct FilterPlan {
  std::vector<std::uint64_t> retained;
  std::vector<Amp> ratios;
  std::vector<std::uint64_t> junk;
};

// The lowest `count` basis indices below `dim` that avoid `retained`;
// deterministic junk choice for constructive filters.
std::vector<std::uint64_t> default_junk_indices(const std::vector<std::uint64_t>& retained,
                                                std::uint64_t dim, std::size_t count);

// Plan scaling the retained amplitudes m_i * c_i down to m_least * c_i, junk
// picked by default_junk_indices.
FilterPlan filter_plan_for(const CoefficientProducts& m,
                           const std::vector<std::uint64_t>& retained, std::uint64_t dim);

// Filtering unitary from a plan: each (retained s, junk t) pair carries the
// block [[r, k], [-k, conj(r)]] with k = sqrt(1 - |r|^2) on rows/columns
// (s, t), identity elsewhere.
OperatorMatrix build_filter(const FilterPlan& plan, std::uint64_t dim);

// The published 64x64 filter, element for element. Requires the all-a product
// to be the least (the table is written under that assumption). Unitary over
// the whole assumption-valid domain.
OperatorMatrix literal_filter_bipartite(const CoefficientProducts& m);

// The published 512x512 filter, element for element, including its misplaced
// retained-diagonal entry (ratio printed at 1-based 17 while the compensator
// block sits at 15). Not unitary away from zero departure; kept for
// documentation and comparison, with build_filter as the working form.
OperatorMatrix literal_filter_tripartite(const CoefficientProducts& m);

// max absolute entry of O†O - I and OO† - I.
double verify_unitary(const OperatorMatrix& op);

// Matrix-vector product; refuses non-unitary operators.
StateVector apply_operator(const StateVector& state, const OperatorMatrix& op);

// Apply a transposition mapping directly by index, bypassing the dense
// matrix; exactly apply_operator(state, build_permutation(mapping, dim)).
StateVector apply_permutation_pairs(const StateVector& state, const IndexMapping& mapping);

// Apply a filter plan's blocks directly; exactly apply_operator(state,
// build_filter(plan, dim)).
StateVector apply_filter_plan(const StateVector& state, const FilterPlan& plan);

// Text form: one row per line, entries as re+imi pairs separated by single
// spaces, 17 significant digits (lossless for doubles).
void dump_operator(const OperatorMatrix& op, std::ostream& out);

// Parse the dump format back; the result is general-kind, constructive.
OperatorMatrix parse_operator(std::istream& in);

}  // namespace belltransfer
