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

#include "belltransfer/ledger.hpp"

namespace belltransfer {

const char* to_string(Severity severity) {
  return severity == Severity::typo ? "typo" : "inconsistency";
}

const std::vector<LedgerEntry>& full_ledger() {
  static const std::vector<LedgerEntry> entries{
      {
          "bipartite-postmeasure-ket",
          "two-pair run, state listing after the message-qubit mask, third term",
          "B-pair ket |00> (1-based basis index 13)",
          "B-pair ket |01> (1-based basis index 14, the source the permutation "
          "element U_{5,14} itself uses)",
          Severity::typo,
      },
      {
          "tripartite-permutation-sources",
          "three-pair permutation element list, fourth and fifth pairs",
          "U_{37,307} and U_{39,366} (columns 307 and 366 carry no amplitude in "
          "the composed state, so the listed result would be unreachable)",
          "U_{37,309} and U_{39,376}",
          Severity::inconsistency,
      },
      {
          "tripartite-coefficient-duplicate",
          "three-pair coefficient-product list, third entry",
          "m3 = a_A b_B b_C (identical to m4)",
          "m3 = a_A b_B a_C",
          Severity::typo,
      },
      {
          "tripartite-filter-diagonal",
          "three-pair filter element list, retained-row diagonal",
          "ratio m1/m4 on row 17 (1-based), row 15 left at 1, so the matrix is "
          "not unitary away from zero departure",
          "ratio m1/m4 on row 15 (1-based), matching the row-15 compensator "
          "block; the constructive filter uses this placement",
          Severity::inconsistency,
      },
  };
  return entries;
}

std::vector<LedgerEntry> ledger_for_k(int k) {
  const auto& all = full_ledger();
  if (k == 2) {
    return {all[0]};
  }
  if (k == 3) {
    return {all[1], all[2], all[3]};
  }
  return {};
}

}  // namespace belltransfer
