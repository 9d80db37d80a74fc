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

#ifndef REGALLOC_FEASIBILITY_H_
#define REGALLOC_FEASIBILITY_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "regalloc/types.h"

namespace regalloc {

// Raised when an operation that requires a feasible allocation receives one
// that shares an element between advertisers.
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks that slot sets and seed sets are pairwise disjoint across
// advertisers. Throws StructuralError if an index does not resolve or the
// allocation has the wrong number of advertisers.
FeasibilityReport verify_feasible(const ProblemInstance& instance,
                                  const Allocation& alloc);

// Id-keyed variant; unknown ids raise StructuralError naming the id.
FeasibilityReport verify_feasible(const ProblemInstance& instance,
                                  const IdAllocation& alloc);

// Sum of slot costs plus seed costs.
double allocation_cost(const ProblemInstance& instance,
                       std::span<const Index> slots,
                       std::span<const Index> seeds);

double allocation_cost(const ProblemInstance& instance,
                       const std::string& advertiser_id,
                       const std::vector<std::string>& slots,
                       const std::vector<std::string>& seeds);

// One message per advertiser whose allocation costs more than its payment.
std::vector<std::string> budget_violations(const ProblemInstance& instance,
                                           const Allocation& alloc);

}  // namespace regalloc

#endif  // REGALLOC_FEASIBILITY_H_
