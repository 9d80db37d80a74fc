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

#include "regalloc/feasibility.h"

#include <unordered_map>

namespace regalloc {
namespace {

void check_range(Index idx, std::size_t n, const char* what) {
  if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
    throw StructuralError(std::string("unresolved ") + what + " index " +
                          std::to_string(idx));
  }
}

}  // namespace

FeasibilityReport verify_feasible(const ProblemInstance& instance,
                                  const Allocation& alloc) {
  if (alloc.per_advertiser.size() != instance.advertiser_count()) {
    throw StructuralError("allocation has " +
                          std::to_string(alloc.per_advertiser.size()) +
                          " entries for " +
                          std::to_string(instance.advertiser_count()) +
                          " advertisers");
  }
  FeasibilityReport report;
  std::unordered_map<Index, std::size_t> slot_owner;
  std::unordered_map<Index, std::size_t> seed_owner;
  const auto& advs = instance.advertisers();
  for (std::size_t i = 0; i < alloc.per_advertiser.size(); ++i) {
    const auto& a = alloc.per_advertiser[i];
    for (Index s : a.slots) {
      check_range(s, instance.slot_count(), "slot");
      auto [it, fresh] = slot_owner.emplace(s, i);
      if (!fresh && it->second != i) {
        report.violations.push_back("slot " + instance.slots()[s].id +
                                    " shared by (" + advs[it->second].id + "," +
                                    advs[i].id + ")");
      }
    }
    for (Index p : a.seeds) {
      check_range(p, instance.seed_count(), "seed");
      auto [it, fresh] = seed_owner.emplace(p, i);
      if (!fresh && it->second != i) {
        report.violations.push_back("seed " + instance.graph().node_ids()[p] +
                                    " shared by (" + advs[it->second].id + "," +
                                    advs[i].id + ")");
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

FeasibilityReport verify_feasible(const ProblemInstance& instance,
                                  const IdAllocation& alloc) {
  // resolve() dedups within an advertiser only, so sharing stays visible.
  return verify_feasible(instance, instance.resolve(alloc));
}

double allocation_cost(const ProblemInstance& instance,
                       std::span<const Index> slots,
                       std::span<const Index> seeds) {
  double total = 0.0;
  for (Index s : slots) {
    check_range(s, instance.slot_count(), "slot");
    total += instance.slots()[s].cost;
  }
  for (Index p : seeds) {
    check_range(p, instance.seed_count(), "seed");
    total += instance.seed_costs()[p];
  }
  return total;
}

double allocation_cost(const ProblemInstance& instance,
                       const std::string& advertiser_id,
                       const std::vector<std::string>& slots,
                       const std::vector<std::string>& seeds) {
  instance.advertiser_index(advertiser_id);
  std::vector<Index> s;
  std::vector<Index> p;
  for (const auto& id : slots) s.push_back(instance.slot_index(id));
  for (const auto& id : seeds) p.push_back(instance.seed_index(id));
  return allocation_cost(instance, s, p);
}

std::vector<std::string> budget_violations(const ProblemInstance& instance,
                                           const Allocation& alloc) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < alloc.per_advertiser.size(); ++i) {
    const auto& a = alloc.per_advertiser[i];
    const double cost = allocation_cost(instance, a.slots, a.seeds);
    const double budget = instance.advertisers()[i].payment;
    if (cost > budget * (1.0 + 1e-12)) {
      out.push_back("advertiser " + instance.advertisers()[i].id + " spends " +
                    std::to_string(cost) + " > budget " + std::to_string(budget));
    }
  }
  return out;
}

}  // namespace regalloc
