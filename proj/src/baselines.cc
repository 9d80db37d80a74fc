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

#include "regalloc/baselines.h"

#include <algorithm>
#include <functional>
#include <random>

#include "regalloc/pools.h"

namespace regalloc {
namespace {

struct Element {
  bool is_slot;
  Index id;
};

// Commits elements from `sequence` to each advertiser in turn.
Allocation greedy_fill(const RegretModel& model,
                       const std::function<std::vector<Element>(const Pools&, std::size_t)>&
                           sequence) {
  const auto& inst = model.instance();
  const std::size_t n = inst.advertiser_count();
  Allocation alloc = Allocation::empty(n);
  Pools pools = Pools::full(inst);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = inst.advertisers()[i];
    double budget = a.payment;
    InfluenceState st(model.estimator());
    for (const Element& e : sequence(pools, i)) {
      if (st.phi() >= a.demand || !(budget > 0.0)) break;
      const double cost = e.is_slot ? inst.slots()[e.id].cost : inst.seed_costs()[e.id];
      if (cost > budget) continue;
      if (e.is_slot) {
        st.add_slot(e.id);
        pools.slot_free[e.id] = 0;
      } else {
        st.add_seed(e.id);
        pools.seed_free[e.id] = 0;
      }
      budget -= cost;
    }
    alloc.per_advertiser[i].slots = st.slots();
    alloc.per_advertiser[i].seeds = st.seeds();
  }
  alloc.normalize();
  return alloc;
}

std::vector<Element> remaining(const Pools& pools) {
  std::vector<Element> out;
  for (Index b : pools.free_slots()) out.push_back({true, b});
  for (Index v : pools.free_seeds()) out.push_back({false, v});
  return out;
}

}  // namespace

Allocation random_allocate(const RegretModel& model, std::uint64_t rng_seed) {
  return greedy_fill(model, [rng_seed](const Pools& pools, std::size_t i) {
    auto elems = remaining(pools);
    std::seed_seq seq{static_cast<std::uint32_t>(rng_seed),
                      static_cast<std::uint32_t>(rng_seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 eng(seq);
    // Fisher-Yates with an explicit draw so the order does not depend on the
    // standard library's shuffle implementation.
    for (std::size_t k = elems.size(); k > 1; --k) {
      const std::size_t j = static_cast<std::size_t>(eng() % k);
      std::swap(elems[k - 1], elems[j]);
    }
    return elems;
  });
}

Allocation topk_allocate(const RegretModel& model) {
  const auto& est = model.estimator();
  const auto& inst = model.instance();
  std::vector<double> slot_phi(inst.slot_count());
  std::vector<double> seed_phi(inst.seed_count());
  for (std::size_t b = 0; b < slot_phi.size(); ++b) {
    slot_phi[b] = est.slot_singleton(static_cast<Index>(b));
  }
  for (std::size_t v = 0; v < seed_phi.size(); ++v) {
    seed_phi[v] = est.seed_singleton(static_cast<Index>(v));
  }
  return greedy_fill(model, [&](const Pools& pools, std::size_t) {
    auto elems = remaining(pools);
    auto phi = [&](const Element& e) { return e.is_slot ? slot_phi[e.id] : seed_phi[e.id]; };
    std::stable_sort(elems.begin(), elems.end(), [&](const Element& x, const Element& y) {
      return phi(x) > phi(y);
    });
    // Elements with no influence never help.
    while (!elems.empty() && !(phi(elems.back()) > 0.0)) elems.pop_back();
    return elems;
  });
}

}  // namespace regalloc
