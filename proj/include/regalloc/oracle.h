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

// Exhaustive ground truth for tiny instances: the minimum total regret and
// the measured deviation of a two-argument set function from bisubmodularity.

#ifndef REGALLOC_ORACLE_H_
#define REGALLOC_ORACLE_H_

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "regalloc/regret.h"

namespace regalloc {

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_slots = 6;
  std::size_t max_seeds = 4;
  std::size_t max_advertisers = 2;
};

struct OracleResult {
  Allocation allocation;
  double regret = 0.0;
  std::uint64_t feasible_count = 0;
};

// Enumerates every disjoint, budget-respecting allocation. Each element is
// assigned to nobody or to one advertiser; among optimal allocations the one
// with the lexicographically smallest assignment vector (slots, then seeds,
// 0 = unassigned) is returned.
// Throws OracleRefusal when the instance exceeds the limits.
void check_oracle_limits(const ProblemInstance& instance, const OracleLimits& limits = {});

OracleResult brute_force_opt(const RegretModel& model, const OracleLimits& limits = {});

// F(slot_mask, seed_mask) over m slots and r seeds.
using BisetFunction = std::function<double(std::uint32_t, std::uint32_t)>;

// Largest deficit F(X1'+e) - F(X1') - (F(X1+e) - F(X1)) over nested pairs
// X1 in X1', X2 in X2' and an element e outside the larger set, in either
// argument. Zero for an exactly bisubmodular function.
double measure_bisubmodularity_violation(std::size_t m, std::size_t r,
                                         const BisetFunction& f);

// Violation of Phi over the whole instance.
double phi_violation(const InfluenceEstimator& est, const OracleLimits& limits = {});

// Largest violation of the regret reduction R(0,0) - R(S,P) over advertisers.
double regret_violation(const RegretModel& model, const OracleLimits& limits = {});

}  // namespace regalloc

#endif  // REGALLOC_ORACLE_H_
