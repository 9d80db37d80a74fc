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

// Lovász extension of a set function over d ground elements.
//
// For a point s in [0,1]^d with coordinates sorted in descending order
// j_1, ..., j_d (ties by ascending index), the extension is
//   f_L(s) = sum_k s_{j_k} * (F(S_k) - F(S_{k-1})),  S_k = {j_1, ..., j_k}
// and the marginal vector k_{j_k} = F(S_k) - F(S_{k-1}) is a subgradient.
// Only marginals enter, so F need not satisfy F({}) = 0; the result is the
// extension of F - F({}).

#ifndef REGALLOC_LOVASZ_H_
#define REGALLOC_LOVASZ_H_

#include <functional>
#include <span>
#include <vector>

#include "regalloc/types.h"

namespace regalloc {

// Evaluates F along a growing chain of elements.
class ChainFunction {
 public:
  virtual ~ChainFunction() = default;
  // Resets to the empty set and returns F({}).
  virtual double start() = 0;
  // Adds element e to the current set and returns the new value.
  virtual double extend(Index e) = 0;
};

// Adapts an arbitrary set function given on index lists.
class SetFunctionChain : public ChainFunction {
 public:
  using Fn = std::function<double(std::span<const Index>)>;
  explicit SetFunctionChain(Fn fn) : fn_(std::move(fn)) {}

  double start() override;
  double extend(Index e) override;

 private:
  Fn fn_;
  std::vector<Index> current_;
};

struct LovaszResult {
  double value = 0.0;
  std::vector<double> subgradient;
};

// Descending order of s, ties by ascending index. Coordinates whose mask
// entry is zero are left out.
std::vector<Index> descending_order(std::span<const double> s,
                                    std::span<const char> mask = {});

// Masked coordinates contribute nothing and get a zero subgradient entry.
LovaszResult lovasz(ChainFunction& f, std::span<const double> s,
                    std::span<const char> mask = {});
double lovasz_value(ChainFunction& f, std::span<const double> s,
                    std::span<const char> mask = {});
std::vector<double> lovasz_subgradient(ChainFunction& f, std::span<const double> s,
                                       std::span<const char> mask = {});

// Clamps every coordinate into [0,1] in place.
void project_box(std::span<double> s);

}  // namespace regalloc

#endif  // REGALLOC_LOVASZ_H_
