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

#include "regalloc/lovasz.h"

#include <algorithm>
#include <numeric>

#include "regalloc/kernels.h"

namespace regalloc {

double SetFunctionChain::start() {
  current_.clear();
  return fn_(current_);
}

double SetFunctionChain::extend(Index e) {
  current_.push_back(e);
  return fn_(current_);
}

std::vector<Index> descending_order(std::span<const double> s,
                                    std::span<const char> mask) {
  std::vector<Index> order;
  order.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (mask.empty() || mask[i]) order.push_back(static_cast<Index>(i));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return s[a] > s[b]; });
  return order;
}

LovaszResult lovasz(ChainFunction& f, std::span<const double> s,
                    std::span<const char> mask) {
  LovaszResult r;
  r.subgradient.assign(s.size(), 0.0);
  double prev = f.start();
  for (Index j : descending_order(s, mask)) {
    const double cur = f.extend(j);
    r.subgradient[j] = cur - prev;
    r.value += s[j] * (cur - prev);
    prev = cur;
  }
  return r;
}

double lovasz_value(ChainFunction& f, std::span<const double> s,
                    std::span<const char> mask) {
  return lovasz(f, s, mask).value;
}

std::vector<double> lovasz_subgradient(ChainFunction& f, std::span<const double> s,
                                       std::span<const char> mask) {
  return lovasz(f, s, mask).subgradient;
}

void project_box(std::span<double> s) { kernels::active().clamp_unit(s.data(), s.size()); }

}  // namespace regalloc
