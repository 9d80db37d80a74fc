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

#include "regalloc/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "regalloc/feasibility.h"

namespace regalloc {
namespace {

void check_limits(const ProblemInstance& inst, const OracleLimits& limits,
                  bool need_advertisers) {
  auto refuse = [](const std::string& what, std::size_t have, std::size_t cap) {
    throw OracleRefusal("instance too large for the oracle: " + std::to_string(have) +
                        " " + what + " (limit " + std::to_string(cap) + ")");
  };
  if (inst.slot_count() > limits.max_slots) refuse("slots", inst.slot_count(), limits.max_slots);
  if (inst.seed_count() > limits.max_seeds) refuse("seeds", inst.seed_count(), limits.max_seeds);
  if (need_advertisers && inst.advertiser_count() > limits.max_advertisers) {
    refuse("advertisers", inst.advertiser_count(), limits.max_advertisers);
  }
  if (limits.max_slots > 16 || limits.max_seeds > 16) {
    throw OracleRefusal("oracle limits above 16 elements per pool are not supported");
  }
}

std::vector<Index> members(std::uint32_t mask) {
  std::vector<Index> out;
  for (Index i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Phi for every (slot mask, seed mask) pair, slot mask major.
std::vector<double> phi_table(const InfluenceEstimator& est) {
  const std::size_t m = est.instance().slot_count();
  const std::size_t r = est.instance().seed_count();
  std::vector<double> table(std::size_t{1} << (m + r));
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    const auto slots = members(s);
    for (std::uint32_t p = 0; p < (1u << r); ++p) {
      table[(std::size_t{s} << r) | p] = est.components(slots, members(p)).total();
    }
  }
  return table;
}

struct Search {
  const ProblemInstance* inst;
  std::size_t m, r, n;
  std::vector<std::vector<double>> regret;  // [adv][slot mask << r | seed mask]
  std::vector<double> slot_cost, seed_cost;
  std::vector<std::uint32_t> smask, pmask;
  std::vector<double> spent;
  std::vector<int> assign, best_assign;
  double best = 0.0;
  bool have_best = false;
  std::uint64_t feasible = 0;

  void run(std::size_t e) {
    if (e == m + r) {
      ++feasible;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += regret[i][(std::size_t{smask[i]} << r) | pmask[i]];
      }
      if (!have_best || total < best - 1e-12 * std::max(1.0, std::abs(best))) {
        best = total;
        best_assign = assign;
        have_best = true;
      }
      return;
    }
    assign[e] = 0;
    run(e + 1);
    const bool is_slot = e < m;
    const double cost = is_slot ? slot_cost[e] : seed_cost[e - m];
    for (std::size_t i = 0; i < n; ++i) {
      if (spent[i] + cost > inst->advertisers()[i].payment) continue;
      spent[i] += cost;
      if (is_slot) smask[i] |= 1u << e; else pmask[i] |= 1u << (e - m);
      assign[e] = static_cast<int>(i) + 1;
      run(e + 1);
      if (is_slot) smask[i] &= ~(1u << e); else pmask[i] &= ~(1u << (e - m));
      spent[i] -= cost;
    }
    assign[e] = 0;
  }
};

}  // namespace

void check_oracle_limits(const ProblemInstance& instance, const OracleLimits& limits) {
  check_limits(instance, limits, true);
}

OracleResult brute_force_opt(const RegretModel& model, const OracleLimits& limits) {
  const auto& inst = model.instance();
  check_limits(inst, limits, true);
  Search s;
  s.inst = &inst;
  s.m = inst.slot_count();
  s.r = inst.seed_count();
  s.n = inst.advertiser_count();
  const auto table = phi_table(model.estimator());
  s.regret.assign(s.n, std::vector<double>(table.size()));
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t key = 0; key < table.size(); ++key) {
      const auto size = static_cast<std::size_t>(std::popcount(key));
      s.regret[i][key] = model.from_phi(static_cast<Index>(i), table[key], size);
    }
  }
  for (const auto& slot : inst.slots()) s.slot_cost.push_back(slot.cost);
  s.seed_cost = inst.seed_costs();
  s.smask.assign(s.n, 0);
  s.pmask.assign(s.n, 0);
  s.spent.assign(s.n, 0.0);
  s.assign.assign(s.m + s.r, 0);
  s.run(0);

  OracleResult out;
  out.regret = s.best;
  out.feasible_count = s.feasible;
  out.allocation = Allocation::empty(s.n);
  for (std::size_t e = 0; e < s.m + s.r; ++e) {
    const int who = s.best_assign[e];
    if (who == 0) continue;
    auto& a = out.allocation.per_advertiser[who - 1];
    if (e < s.m) {
      a.slots.push_back(static_cast<Index>(e));
    } else {
      a.seeds.push_back(static_cast<Index>(e - s.m));
    }
  }
  return out;
}

double measure_bisubmodularity_violation(std::size_t m, std::size_t r,
                                         const BisetFunction& f) {
  if (m > 16 || r > 16 || m + r > 24) {
    throw OracleRefusal("bisubmodularity measurement limited to small ground sets");
  }
  const std::uint32_t full_s = (1u << m) - 1;
  const std::uint32_t full_p = (1u << r) - 1;
  std::vector<double> t(std::size_t{1} << (m + r));
  for (std::uint32_t s = 0; s <= full_s; ++s) {
    for (std::uint32_t p = 0; p <= full_p; ++p) t[(std::size_t{s} << r) | p] = f(s, p);
  }
  auto at = [&](std::uint32_t s, std::uint32_t p) { return t[(std::size_t{s} << r) | p]; };

  double worst = 0.0;
  for (std::uint32_t s2 = 0; s2 <= full_s; ++s2) {
    for (std::uint32_t p2 = 0; p2 <= full_p; ++p2) {
      // Every submask pair (s1, p1) of (s2, p2).
      for (std::uint32_t s1 = s2;; s1 = (s1 - 1) & s2) {
        for (std::uint32_t p1 = p2;; p1 = (p1 - 1) & p2) {
          for (std::size_t b = 0; b < m; ++b) {
            const std::uint32_t bit = 1u << b;
            if (s2 & bit) continue;
            const double small = at(s1 | bit, p1) - at(s1, p1);
            const double large = at(s2 | bit, p2) - at(s2, p2);
            worst = std::max(worst, large - small);
          }
          for (std::size_t v = 0; v < r; ++v) {
            const std::uint32_t bit = 1u << v;
            if (p2 & bit) continue;
            const double small = at(s1, p1 | bit) - at(s1, p1);
            const double large = at(s2, p2 | bit) - at(s2, p2);
            worst = std::max(worst, large - small);
          }
          if (p1 == 0) break;
        }
        if (s1 == 0) break;
      }
    }
  }
  return worst;
}

double phi_violation(const InfluenceEstimator& est, const OracleLimits& limits) {
  check_limits(est.instance(), limits, false);
  const std::size_t r = est.instance().seed_count();
  const auto table = phi_table(est);
  return measure_bisubmodularity_violation(
      est.instance().slot_count(), r,
      [&](std::uint32_t s, std::uint32_t p) { return table[(std::size_t{s} << r) | p]; });
}

double regret_violation(const RegretModel& model, const OracleLimits& limits) {
  const auto& inst = model.instance();
  check_limits(inst, limits, false);
  const std::size_t r = inst.seed_count();
  const auto table = phi_table(model.estimator());
  double worst = 0.0;
  for (std::size_t i = 0; i < inst.advertiser_count(); ++i) {
    const auto adv = static_cast<Index>(i);
    const double base = model.empty_regret(adv);
    worst = std::max(worst, measure_bisubmodularity_violation(
                                inst.slot_count(), r, [&](std::uint32_t s, std::uint32_t p) {
                                  const std::size_t key = (std::size_t{s} << r) | p;
                                  return base - model.from_phi(adv, table[key],
                                                               std::popcount(key));
                                }));
  }
  return worst;
}

}  // namespace regalloc
