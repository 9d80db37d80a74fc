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

#include "regalloc/abls.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "regalloc/pools.h"

namespace regalloc {
namespace {

// Relative tolerance under which two ratios are treated as tied.
constexpr double kTieTolerance = 1e-12;

bool clearly_greater(double a, double b) {
  return a - b > kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Candidate {
  bool is_slot = true;
  Index element = kNoIndex;
  double ratio = 0.0;
  double cost = 0.0;
};

double regret_of(const RegretModel& model, Index adv, const InfluenceState& st) {
  return model.from_phi(adv, st.phi(), st.slots().size() + st.seeds().size());
}

}  // namespace

void AblsConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
}

std::optional<double> marginal_ratio(const RegretModel& model, Index advertiser,
                                     const InfluenceState& state, bool is_slot,
                                     Index element) {
  const auto& est = model.estimator();
  const double single = is_slot ? est.slot_singleton(element) : est.seed_singleton(element);
  if (!(single > 0.0)) return std::nullopt;
  const double gain = is_slot ? state.slot_gain(element) : state.seed_gain(element);
  const std::size_t size = state.slots().size() + state.seeds().size();
  const double before = model.from_phi(advertiser, state.phi(), size);
  const double after = model.from_phi(advertiser, state.phi() + gain, size + 1);
  return (before - after) / single;
}

AblsResult abls_allocate(const RegretModel& model, const AblsConfig& config) {
  config.validate();
  const auto& inst = model.instance();
  const auto& est = model.estimator();
  const std::size_t n = inst.advertiser_count();

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const auto& x = inst.advertisers()[a];
    const auto& y = inst.advertisers()[b];
    const double rx = x.payment / x.demand;
    const double ry = y.payment / y.demand;
    if (rx != ry) return rx > ry;
    return x.id < y.id;
  });

  AblsResult result;
  result.allocation = Allocation::empty(n);
  Pools pools = Pools::full(inst);

  for (Index adv : order) {
    const auto& a = inst.advertisers()[adv];
    double budget = a.payment;
    InfluenceState st(est);

    auto affordable = [&](double cost) {
      return config.allow_exact_budget ? budget >= cost : budget > cost;
    };

    while (st.phi() < a.demand && pools.any() && budget > 0.0) {
      std::optional<Candidate> best_slot;
      std::optional<Candidate> best_seed;
      for (std::size_t b = 0; b < pools.slot_free.size(); ++b) {
        if (!pools.slot_free[b]) continue;
        const auto r = marginal_ratio(model, adv, st, true, static_cast<Index>(b));
        if (!r) continue;
        if (!best_slot || clearly_greater(*r, best_slot->ratio)) {
          best_slot = Candidate{true, static_cast<Index>(b), *r, inst.slots()[b].cost};
        }
      }
      for (std::size_t v = 0; v < pools.seed_free.size(); ++v) {
        if (!pools.seed_free[v]) continue;
        const auto r = marginal_ratio(model, adv, st, false, static_cast<Index>(v));
        if (!r) continue;
        if (!best_seed || clearly_greater(*r, best_seed->ratio)) {
          best_seed = Candidate{false, static_cast<Index>(v), *r, inst.seed_costs()[v]};
        }
      }

      std::vector<Candidate> ranked;
      if (best_slot) ranked.push_back(*best_slot);
      if (best_seed) ranked.push_back(*best_seed);
      if (ranked.size() == 2) {
        const Candidate& s = ranked[0];
        const Candidate& p = ranked[1];
        bool seed_first = clearly_greater(p.ratio, s.ratio);
        if (!seed_first && !clearly_greater(s.ratio, p.ratio)) {
          switch (config.tie_break) {
            case AblsConfig::TieBreak::kSlotFirst:
              break;
            case AblsConfig::TieBreak::kSeedFirst:
              seed_first = true;
              break;
            case AblsConfig::TieBreak::kLowestCost:
              seed_first = p.cost < s.cost;
              break;
          }
        }
        if (seed_first) std::swap(ranked[0], ranked[1]);
      }

      bool committed = false;
      for (const Candidate& c : ranked) {
        if (!(c.ratio > config.epsilon) || !affordable(c.cost)) continue;
        if (c.is_slot) {
          st.add_slot(c.element);
          pools.slot_free[c.element] = 0;
        } else {
          st.add_seed(c.element);
          pools.seed_free[c.element] = 0;
        }
        budget -= c.cost;
        result.steps.push_back({adv, c.is_slot, c.element, c.ratio, regret_of(model, adv, st)});
        committed = true;
        break;
      }
      if (!committed) break;
    }

    auto& out = result.allocation.per_advertiser[adv];
    out.slots = st.slots();
    out.seeds = st.seeds();
  }
  result.allocation.normalize();
  return result;
}

}  // namespace regalloc
