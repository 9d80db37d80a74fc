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

// Remaining inventory shared by the sequential allocators.

#ifndef REGALLOC_POOLS_H_
#define REGALLOC_POOLS_H_

#include <vector>

#include "regalloc/types.h"

namespace regalloc {

struct Pools {
  std::vector<char> slot_free;
  std::vector<char> seed_free;

  static Pools full(const ProblemInstance& inst) {
    return {std::vector<char>(inst.slot_count(), 1),
            std::vector<char>(inst.seed_count(), 1)};
  }
  std::vector<Index> free_slots() const { return collect(slot_free); }
  std::vector<Index> free_seeds() const { return collect(seed_free); }
  bool any() const {
    for (char c : slot_free) if (c) return true;
    for (char c : seed_free) if (c) return true;
    return false;
  }

 private:
  static std::vector<Index> collect(const std::vector<char>& v) {
    std::vector<Index> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i]) out.push_back(static_cast<Index>(i));
    }
    return out;
  }
};

}  // namespace regalloc

#endif  // REGALLOC_POOLS_H_
