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

#ifndef REGALLOC_EDGE_MODEL_H_
#define REGALLOC_EDGE_MODEL_H_

#include <cstdint>
#include <string>

#include "regalloc/types.h"

namespace regalloc {

// Edge-probability settings for graphs whose weights are not given.
struct EdgeModel {
  enum class Kind { kUniform, kTrivalency, kWeightedCascade };
  Kind kind = Kind::kUniform;
  double uniform_p = 0.1;

  static EdgeModel parse(const std::string& text);  // uniform[:p]|trivalency|wc
  std::string name() const;
};

// Rewrites the weights of every edge in `graph` according to `model`.
// Trivalency draws each weight from {0.1, 0.01, 0.001}; weighted cascade sets
// the probability of entering v to 1/deg(v), one trial per direction.
void apply_edge_model(SocialGraph& graph, const EdgeModel& model,
                      std::uint64_t rng_seed);

}  // namespace regalloc

#endif  // REGALLOC_EDGE_MODEL_H_
