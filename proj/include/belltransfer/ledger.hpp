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

#include <string>
#include <vector>

namespace belltransfer {

// A `typo` is a slip the surrounding material already contradicts; an
// `inconsistency` requires rederivation to resolve.
enum class Severity { typo, inconsistency };

// One place where the published operator tables or state listings disagree
// with what the protocol derivation itself produces. `printed` is the value
// as published, `derived` the value this library computes and uses.
struct LedgerEntry {
  std::string id;
  std::string location;
  std::string printed;
  std::string derived;
  Severity severity = Severity::typo;
};

const char* to_string(Severity severity);

// All known discrepancies, in a fixed order.
const std::vector<LedgerEntry>& full_ledger();

// The subset that affects a k-pair transfer (k = 2 or 3); empty otherwise.
std::vector<LedgerEntry> ledger_for_k(int k);

}  // namespace belltransfer
