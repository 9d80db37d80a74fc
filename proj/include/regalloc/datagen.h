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

// Synthetic instances: billboards scattered over a city rectangle, user
// trajectories clustered around them, a random social graph and advertisers
// sized against the total singleton influence supply.

#ifndef REGALLOC_DATAGEN_H_
#define REGALLOC_DATAGEN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "regalloc/edge_model.h"
#include "regalloc/influence.h"
#include "regalloc/types.h"

namespace regalloc {

inline constexpr const char* kGeneratorLabel = "synthetic-v1";

struct GenConfig {
  double alpha = 1.0;    // total demand / supply
  double lambda = 0.05;  // mean demand / supply, before rescaling to alpha
  std::size_t n_advertisers = 20;
  double omega_min = 0.8, omega_max = 1.2;
  double beta_min = 0.9, beta_max = 1.1;
  EdgeModel edge_model{EdgeModel::Kind::kTrivalency, 0.1};
  std::size_t nodes = 100;
  std::size_t edges = 300;

  std::size_t billboards = 25;
  double city_width_m = 2000.0;
  double city_height_m = 2000.0;
  GeoPoint city_origin{40.7500, -73.9900};  // south-west corner
  double panel_min = 20.0, panel_max = 60.0;
  std::int64_t horizon_s = 4 * 3600;
  std::int64_t slot_duration_s = 1800;
  std::size_t records_per_user = 4;
  double near_fraction = 0.7;  // share of records placed within pi of a billboard
  std::int64_t dwell_min_s = 300, dwell_max_s = 1800;

  // Slot price per unit of the billboard's mean singleton slot influence.
  double slot_cost_factor = 1.0;
  ModelParams params;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// Sum of singleton slot influences plus singleton seed influences.
double influence_supply(const InfluenceEstimator& est);

// demand_i = max(1, floor(omega_i * supply * lambda)), payment_i =
// floor(beta_i * demand_i), with omega_i and beta_i drawn uniformly.
std::vector<Advertiser> generate_advertisers(double supply, const GenConfig& cfg);

ProblemInstance generate_instance(const GenConfig& cfg);

}  // namespace regalloc

#endif  // REGALLOC_DATAGEN_H_
