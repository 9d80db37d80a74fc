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

// Advertiser regret, total regret and the satisfaction count.
//
//   R(S,P) = K * (1 - gamma * min(Phi(S,P), sigma) / sigma)
//            + delta * ln(1 + |S| + |P|)
//
// with K the advertiser's payment and sigma its demand.

#ifndef REGALLOC_REGRET_H_
#define REGALLOC_REGRET_H_

#include <span>

#include "regalloc/influence.h"
#include "regalloc/types.h"

namespace regalloc {

// The regret formula for given influence and allocation size.
double regret_value(double payment, double demand, double gamma, double delta,
                    double phi, std::size_t size);

class RegretModel {
 public:
  explicit RegretModel(const InfluenceEstimator& est);

  const InfluenceEstimator& estimator() const { return est_; }
  const ProblemInstance& instance() const { return est_.instance(); }

  double from_phi(Index advertiser, double phi, std::size_t size) const;
  double advertiser_regret(Index advertiser, std::span<const Index> slots,
                           std::span<const Index> seeds) const;
  double empty_regret(Index advertiser) const;

  // Throws FeasibilityError if two advertisers share an element.
  double total_regret(const Allocation& alloc) const;
  std::size_t satisfied_count(const Allocation& alloc) const;
  // Phi of each advertiser's allocation.
  std::vector<double> phis(const Allocation& alloc) const;

 private:
  const InfluenceEstimator& est_;
};

}  // namespace regalloc

#endif  // REGALLOC_REGRET_H_
