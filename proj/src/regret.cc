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

#include "regalloc/regret.h"

#include <algorithm>
#include <cmath>

#include "regalloc/feasibility.h"

namespace regalloc {

double regret_value(double payment, double demand, double gamma, double delta,
                    double phi, std::size_t size) {
  const double met = std::min(std::max(phi, 0.0), demand) / demand;
  return payment * (1.0 - gamma * met) +
         delta * std::log1p(static_cast<double>(size));
}

RegretModel::RegretModel(const InfluenceEstimator& est) : est_(est) {}

double RegretModel::from_phi(Index advertiser, double phi, std::size_t size) const {
  const auto& a = instance().advertisers().at(advertiser);
  const auto& p = instance().params();
  return regret_value(a.payment, a.demand, p.gamma, p.delta, phi, size);
}

double RegretModel::advertiser_regret(Index advertiser, std::span<const Index> slots,
                                      std::span<const Index> seeds) const {
  std::vector<Index> s(slots.begin(), slots.end());
  std::vector<Index> p(seeds.begin(), seeds.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return from_phi(advertiser, est_.combined(s, p), s.size() + p.size());
}

double RegretModel::empty_regret(Index advertiser) const {
  return from_phi(advertiser, 0.0, 0);
}

namespace {

void require_feasible(const ProblemInstance& inst, const Allocation& alloc) {
  const auto report = verify_feasible(inst, alloc);
  if (!report.ok) throw FeasibilityError(report.violations.front());
}

}  // namespace

double RegretModel::total_regret(const Allocation& alloc) const {
  require_feasible(instance(), alloc);
  double total = 0.0;
  for (std::size_t i = 0; i < alloc.per_advertiser.size(); ++i) {
    const auto& a = alloc.per_advertiser[i];
    total += advertiser_regret(static_cast<Index>(i), a.slots, a.seeds);
  }
  return total;
}

std::vector<double> RegretModel::phis(const Allocation& alloc) const {
  std::vector<double> out;
  out.reserve(alloc.per_advertiser.size());
  for (const auto& a : alloc.per_advertiser) out.push_back(est_.combined(a.slots, a.seeds));
  return out;
}

std::size_t RegretModel::satisfied_count(const Allocation& alloc) const {
  require_feasible(instance(), alloc);
  const auto phi = phis(alloc);
  std::size_t n = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] >= instance().advertisers()[i].demand) ++n;
  }
  return n;
}

}  // namespace regalloc
