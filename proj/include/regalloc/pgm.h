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

// Projected subgradient descent on the Lovász extension of each advertiser's
// regret, followed by prefix rounding.
//
// Advertisers are served one at a time in input order. For each, slot
// coordinates x and seed coordinates y over the still-available elements
// start at init_value and take T steps of
//   x <- clip(x - eta * g_x, 0, 1),  y <- clip(y - eta * g_y, 0, 1)
// where g_x is the marginal chain of R(., P_t) along descending x with
// P_t = {y >= 0.5} held fixed, and g_y likewise with S_t = {x >= 0.5}.
// The step is eta = sqrt(m + r) / (L * sqrt(T)).
//
// The iterate with the lowest extension value is rounded by choosing the
// best prefix of the x order (with P = {y >= 0.5}), then the best prefix of
// the y order. Prefixes are cut back until they fit the budget and the result
// is kept only if it does not raise regret above the empty allocation.

#ifndef REGALLOC_PGM_H_
#define REGALLOC_PGM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "regalloc/regret.h"

namespace regalloc {

struct PgmConfig {
  enum class Lipschitz { kAuto, kFixed };
  enum class EtaScope { kGlobal, kPerAdvertiser };

  int iterations = 100;
  Lipschitz lipschitz = Lipschitz::kAuto;
  double fixed_lipschitz = 1.0;
  double init_value = 0.5;
  EtaScope eta_scope = EtaScope::kPerAdvertiser;
  // The method is deterministic; kept so run records carry a seed.
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct PgmTrace {
  double lipschitz = 0.0;
  double eta = 0.0;
  // Regret of iterate t (t = 0 is the starting point) and the running minimum.
  std::vector<double> regret;
  std::vector<double> best;
};

struct PgmResult {
  Allocation allocation;
  // One per advertiser in input order; empty when the advertiser was skipped.
  std::vector<PgmTrace> traces;
};

PgmResult pgm_allocate(const RegretModel& model, const PgmConfig& config);

// Largest |R({e}) - R({})| over the given elements, floored at 1e-9.
double estimate_lipschitz(const RegretModel& model, Index advertiser,
                          std::span<const Index> slots, std::span<const Index> seeds);

}  // namespace regalloc

#endif  // REGALLOC_PGM_H_
