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

// Small instances shared by unit tests and the acceptance suite.

#ifndef REGALLOC_TESTS_FIXTURES_H_
#define REGALLOC_TESTS_FIXTURES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "regalloc/geo.h"
#include "regalloc/types.h"

namespace regalloc::testing {

struct TinyOptions {
  double rho = 0.5;
  double gamma = 0.5;
  double delta = 0.0;
  double demand = 4.0;
  double payment = 10.0;
  double edge_weight = 1.0;
  bool with_advertiser = true;
  std::vector<Advertiser> extra_advertisers;
  // Adds slot b3 on a billboard nobody passes.
  bool dead_slot = false;
  InfluenceMode mode = InfluenceMode::kExact;
};

// Users u1, u2; slots b1, b2 with Pr(u1,b1) = Pr(u2,b1) = Pr(u1,b2) = 0.5 and
// Pr(u2,b2) = 0; one edge u1-u2; every slot and seed costs 1.
inline ProblemInstance tiny_instance(const TinyOptions& o = {}) {
  ModelParams p;
  p.rho = o.rho;
  p.gamma = o.gamma;
  p.delta = o.delta;
  p.mode = o.mode;
  InstanceBuilder b;
  b.set_params(p);
  const GeoPoint origin{40.75, -73.99};
  const GeoPoint far = offset_meters(origin, 5000.0, 0.0);
  const Index b1 = b.add_billboard({"B1", origin, 50.0, 1.0});
  const Index b2 = b.add_billboard({"B2", far, 50.0, 1.0});
  b.add_slot({"b1", b1, 0, 1800, 1.0});
  b.add_slot({"b2", b2, 0, 1800, 1.0});
  if (o.dead_slot) {
    const Index b3 = b.add_billboard({"B3", offset_meters(origin, 0.0, 9000.0), 50.0, 1.0});
    b.add_slot({"b3", b3, 0, 1800, 1.0});
  }
  b.add_trajectory({{"u1"}, offset_meters(origin, 10.0, 0.0), {100, 200}});
  b.add_trajectory({{"u2"}, offset_meters(origin, 0.0, 20.0), {300, 400}});
  b.add_trajectory({{"u1"}, offset_meters(far, 0.0, -30.0), {500, 900}});
  SocialGraph g;
  const Index u1 = g.add_node("u1");
  const Index u2 = g.add_node("u2");
  g.add_edge(u1, u2, o.edge_weight);
  b.set_graph(std::move(g));
  if (o.with_advertiser) b.add_advertiser({"a1", o.demand, o.payment});
  for (const auto& a : o.extra_advertisers) b.add_advertiser(a);
  b.set_seed_costs({1.0, 1.0});
  return b.build();
}

struct RandomTinyOptions {
  std::size_t max_slots = 5;
  std::size_t max_seeds = 4;
  std::size_t max_advertisers = 2;
  double rho = 0.5;
  double gamma = 0.5;
  double delta = 0.0;
};

// A random instance inside the oracle's limits, exact influence mode.
inline ProblemInstance random_tiny_instance(std::uint64_t seed,
                                            const RandomTinyOptions& o = {}) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };

  ModelParams p;
  p.rho = o.rho;
  p.gamma = o.gamma;
  p.delta = o.delta;
  p.mode = InfluenceMode::kExact;
  InstanceBuilder b;
  b.set_params(p);

  const GeoPoint origin{40.75, -73.99};
  const std::size_t n_slots = pick(1, o.max_slots);
  const std::size_t n_boards = pick(1, std::min<std::size_t>(3, n_slots));
  std::vector<GeoPoint> where;
  for (std::size_t k = 0; k < n_boards; ++k) {
    where.push_back(offset_meters(origin, 1000.0 * static_cast<double>(k), 0.0));
    b.add_billboard({"B" + std::to_string(k), where.back(), uni(10.0, 90.0), 0.0});
  }
  for (std::size_t s = 0; s < n_slots; ++s) {
    const auto board = static_cast<Index>(s % n_boards);
    const std::int64_t start = static_cast<std::int64_t>(s / n_boards) * 1800;
    b.add_slot({"s" + std::to_string(s), board, start, 1800, uni(0.2, 3.0)});
  }

  const std::size_t n_users = pick(1, o.max_seeds);
  SocialGraph g;
  for (std::size_t u = 0; u < n_users; ++u) g.add_node("u" + std::to_string(u));
  for (std::size_t u = 0; u < n_users; ++u) {
    for (std::size_t v = u + 1; v < n_users; ++v) {
      if (uni(0.0, 1.0) < 0.6) {
        g.add_edge(static_cast<Index>(u), static_cast<Index>(v), uni(0.05, 1.0));
      }
    }
  }
  b.set_graph(std::move(g));

  const std::int64_t horizon = static_cast<std::int64_t>((n_slots + n_boards - 1) / n_boards) * 1800;
  for (std::size_t u = 0; u < n_users; ++u) {
    const std::size_t records = pick(1, 3);
    for (std::size_t r = 0; r < records; ++r) {
      const GeoPoint at = uni(0.0, 1.0) < 0.8
                              ? offset_meters(where[pick(0, n_boards - 1)], uni(-60, 60), uni(-60, 60))
                              : offset_meters(origin, uni(-3000, 3000), uni(2000, 3000));
      const auto start = static_cast<std::int64_t>(uni(0.0, static_cast<double>(horizon)));
      b.add_trajectory({{"u" + std::to_string(u)}, at, {start, start + static_cast<std::int64_t>(uni(0, 1500))}});
    }
  }

  const std::size_t n_adv = pick(1, o.max_advertisers);
  for (std::size_t i = 0; i < n_adv; ++i) {
    b.add_advertiser({"a" + std::to_string(i), uni(0.5, 4.0), uni(1.0, 8.0)});
  }
  std::vector<double> costs;
  for (std::size_t u = 0; u < n_users; ++u) costs.push_back(uni(0.2, 3.0));
  b.set_seed_costs(costs);
  return b.build();
}

}  // namespace regalloc::testing

#endif  // REGALLOC_TESTS_FIXTURES_H_
