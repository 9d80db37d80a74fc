// Copyright 2026 The Authors.
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

// Greedy allocation by regret reduction per unit of singleton influence.
//
// Advertisers are served in descending order of payment/demand. Each one
// repeatedly takes the slot or seed with the largest
//   (R(S,P) - R(S+e,P)) / Phi(e alone)
// while it is unsatisfied, inventory remains and budget is left. An element
// is committed only if its ratio exceeds epsilon and its cost is below the
// remaining budget.

#ifndef REGALLOC_ABLS_H_
#define REGALLOC_ABLS_H_

#include <optional>

#include "regalloc/regret.h"

namespace regalloc {

struct AblsConfig {
  enum class TieBreak { kSlotFirst, kSeedFirst, kLowestCost };

  double epsilon = 0.05;
  TieBreak tie_break = TieBreak::kSlotFirst;
  // Accept an element whose cost equals the remaining budget.
  bool allow_exact_budget = false;

  void validate() const;
};

struct AblsStep {
  Index advertiser = kNoIndex;
  bool is_slot = true;
  Index element = kNoIndex;
  double ratio = 0.0;
  double regret_after = 0.0;
};

struct AblsResult {
  Allocation allocation;
  std::vector<AblsStep> steps;  // commits in order
};

AblsResult abls_allocate(const RegretModel& model, const AblsConfig& config);

// Regret reduction per unit singleton influence; nullopt when the element
// has no singleton influence.
std::optional<double> marginal_ratio(const RegretModel& model, Index advertiser,
                                     const InfluenceState& state, bool is_slot,
                                     Index element);

}  // namespace regalloc

#endif  // REGALLOC_ABLS_H_
