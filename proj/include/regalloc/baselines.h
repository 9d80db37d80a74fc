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

// Reference allocators: uniform random draws and top singleton influence.

#ifndef REGALLOC_BASELINES_H_
#define REGALLOC_BASELINES_H_

#include <cstdint>

#include "regalloc/regret.h"

namespace regalloc {

// Per advertiser in input order, walks a seeded shuffle of the remaining
// slots and seeds, taking each element it can afford, until the advertiser
// is satisfied, the budget is spent or the inventory runs out.
Allocation random_allocate(const RegretModel& model, std::uint64_t rng_seed);

// Same loop, but elements are taken in descending order of singleton Phi
// (ties by lowest index, slots before seeds).
Allocation topk_allocate(const RegretModel& model);

}  // namespace regalloc

#endif  // REGALLOC_BASELINES_H_
