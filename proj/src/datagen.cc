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

#include "regalloc/datagen.h"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "regalloc/geo.h"

namespace regalloc {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32), stream};
    eng_.seed(seq);
  }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

// Independent streams so that changing one stage does not shift another.
enum Stream : std::uint32_t {
  kEdgeWeights = 1,
  kBillboards,
  kTopology,
  kTrajectories,
  kAdvertisers,
};

}  // namespace

EdgeModel EdgeModel::parse(const std::string& text) {
  EdgeModel m;
  if (text == "trivalency") {
    m.kind = Kind::kTrivalency;
  } else if (text == "wc" || text == "weighted_cascade") {
    m.kind = Kind::kWeightedCascade;
  } else if (text.rfind("uniform", 0) == 0) {
    m.kind = Kind::kUniform;
    if (text.size() > 7) {
      if (text[7] != ':') throw ConfigError("bad edge model '" + text + "'");
      try {
        std::size_t used = 0;
        m.uniform_p = std::stod(text.substr(8), &used);
        if (used != text.size() - 8) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("bad uniform edge probability in '" + text + "'");
      }
      if (!(m.uniform_p > 0.0 && m.uniform_p <= 1.0)) {
        throw ConfigError("uniform edge probability must be in (0,1]");
      }
    }
  } else {
    throw ConfigError("unknown edge model '" + text + "'");
  }
  return m;
}

std::string EdgeModel::name() const {
  switch (kind) {
    case Kind::kTrivalency:
      return "trivalency";
    case Kind::kWeightedCascade:
      return "wc";
    case Kind::kUniform: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "uniform:%.17g", uniform_p);
      return buf;
    }
  }
  return "uniform";
}

void apply_edge_model(SocialGraph& graph, const EdgeModel& model, std::uint64_t rng_seed) {
  static constexpr double kTri[3] = {0.1, 0.01, 0.001};
  Rng rng(rng_seed, kEdgeWeights);
  const auto deg = graph.degrees();
  for (auto& e : graph.mutable_edges()) {
    switch (model.kind) {
      case EdgeModel::Kind::kUniform:
        e = {e.u, e.v, model.uniform_p, model.uniform_p, true};
        break;
      case EdgeModel::Kind::kTrivalency: {
        const double w = kTri[rng.below(3)];
        e = {e.u, e.v, w, w, true};
        break;
      }
      case EdgeModel::Kind::kWeightedCascade:
        e = {e.u, e.v, 1.0 / static_cast<double>(deg[e.v]),
             1.0 / static_cast<double>(deg[e.u]), false};
        break;
    }
  }
}

void GenConfig::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (!(omega_min > 0.0 && omega_min <= omega_max)) throw ConfigError("bad omega range");
  if (!(beta_min > 0.0 && beta_min <= beta_max)) throw ConfigError("bad beta range");
  if (billboards == 0) throw ConfigError("at least one billboard is required");
  if (horizon_s < slot_duration_s || slot_duration_s <= 0) {
    throw ConfigError("horizon must hold at least one slot");
  }
  if (nodes == 0) throw ConfigError("at least one node is required");
  if (records_per_user == 0) throw ConfigError("records_per_user must be >= 1");
  if (edges > nodes * (nodes - 1) / 2) throw ConfigError("too many edges for node count");
  if (!(panel_min > 0.0 && panel_min <= panel_max)) throw ConfigError("bad panel size range");
  if (!(panel_max < params.panel_normalizer)) {
    throw ConfigError("panel sizes must stay below the normalizer A");
  }
  if (!(near_fraction >= 0.0 && near_fraction <= 1.0)) {
    throw ConfigError("near_fraction must be in [0,1]");
  }
  if (dwell_min_s < 0 || dwell_min_s > dwell_max_s || dwell_max_s > horizon_s) {
    throw ConfigError("bad dwell range");
  }
  if (!(slot_cost_factor >= 0.0)) throw ConfigError("slot_cost_factor must be non-negative");
  params.validate();
}

double influence_supply(const InfluenceEstimator& est) {
  double total = 0.0;
  for (std::size_t b = 0; b < est.instance().slot_count(); ++b) {
    const Index s[1] = {static_cast<Index>(b)};
    total += est.slot_influence(s);
  }
  for (std::size_t v = 0; v < est.instance().seed_count(); ++v) {
    const Index p[1] = {static_cast<Index>(v)};
    total += est.ic_influence(p);
  }
  return total;
}

std::vector<Advertiser> generate_advertisers(double supply, const GenConfig& cfg) {
  Rng rng(cfg.rng_seed, kAdvertisers);
  std::vector<Advertiser> out;
  for (std::size_t i = 0; i < cfg.n_advertisers; ++i) {
    const double omega = rng.uniform(cfg.omega_min, cfg.omega_max);
    const double beta = rng.uniform(cfg.beta_min, cfg.beta_max);
    const double demand = std::max(1.0, std::floor(omega * supply * cfg.lambda));
    const double payment = std::max(1.0, std::floor(beta * demand));
    out.push_back({"a" + std::to_string(i), demand, payment});
  }
  return out;
}

namespace {

struct Layout {
  std::vector<Billboard> billboards;
  std::vector<TrajectoryRecord> records;
  SocialGraph graph;
};

Layout make_layout(const GenConfig& cfg) {
  Layout L;
  Rng brng(cfg.rng_seed, kBillboards);
  std::vector<std::pair<double, double>> where;  // east, north
  for (std::size_t b = 0; b < cfg.billboards; ++b) {
    const double east = brng.uniform(0.0, cfg.city_width_m);
    const double north = brng.uniform(0.0, cfg.city_height_m);
    where.emplace_back(east, north);
    L.billboards.push_back({"b" + std::to_string(b), offset_meters(cfg.city_origin, east, north),
                            brng.uniform(cfg.panel_min, cfg.panel_max), 0.0});
  }

  // Nodes are numbered in order of first appearance in the edge list, which
  // is the order the CSV loader rebuilds; isolated nodes follow by id.
  Rng grng(cfg.rng_seed, kTopology);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> drawn;
  while (drawn.size() < cfg.edges) {
    auto u = grng.below(cfg.nodes);
    auto v = grng.below(cfg.nodes);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    drawn.emplace_back(u, v);
  }
  auto name = [](std::size_t v) { return "u" + std::to_string(v); };
  for (const auto& [u, v] : drawn) {
    const Index a = L.graph.add_node(name(u));
    const Index b = L.graph.add_node(name(v));
    L.graph.add_edge(a, b, 1.0);
  }
  std::set<std::string> rest;
  for (std::size_t v = 0; v < cfg.nodes; ++v) {
    if (!L.graph.find(name(v))) rest.insert(name(v));
  }
  for (const auto& id : rest) L.graph.add_node(id);
  apply_edge_model(L.graph, cfg.edge_model, cfg.rng_seed);

  Rng trng(cfg.rng_seed, kTrajectories);
  const double near_radius = 0.8 * cfg.params.pi_meters;
  for (std::size_t v = 0; v < cfg.nodes; ++v) {
    for (std::size_t k = 0; k < cfg.records_per_user; ++k) {
      double east, north;
      if (trng.uniform() < cfg.near_fraction) {
        const auto& [be, bn] = where[trng.below(where.size())];
        const double radius = near_radius * std::sqrt(trng.uniform());
        const double angle = 2.0 * std::numbers::pi * trng.uniform();
        east = be + radius * std::cos(angle);
        north = bn + radius * std::sin(angle);
      } else {
        east = trng.uniform(0.0, cfg.city_width_m);
        north = trng.uniform(0.0, cfg.city_height_m);
      }
      const auto dwell = static_cast<std::int64_t>(
          std::llround(trng.uniform(static_cast<double>(cfg.dwell_min_s),
                                    static_cast<double>(cfg.dwell_max_s))));
      const auto start = static_cast<std::int64_t>(
          std::floor(trng.uniform() * static_cast<double>(cfg.horizon_s - dwell)));
      L.records.push_back({{"u" + std::to_string(v)},
                           offset_meters(cfg.city_origin, east, north),
                           {start, start + dwell}});
    }
  }
  return L;
}

ProblemInstance assemble(const GenConfig& cfg, const Layout& L,
                         const std::vector<Advertiser>& advertisers) {
  InstanceBuilder b;
  b.set_params(cfg.params);
  for (const auto& r : L.records) b.add_trajectory(r);
  for (const auto& bb : L.billboards) b.add_billboard(bb);
  b.tile_slots(0, cfg.horizon_s, cfg.slot_duration_s);
  b.set_graph(L.graph);
  for (const auto& a : advertisers) b.add_advertiser(a);
  return b.build();
}

}  // namespace

ProblemInstance generate_instance(const GenConfig& cfg) {
  cfg.validate();
  Layout layout = make_layout(cfg);

  // Price billboards from their slots' influence, then seeds from theirs.
  const ProblemInstance bare = assemble(cfg, layout, {});
  const InfluenceEstimator bare_est(bare);
  std::vector<double> sum(layout.billboards.size(), 0.0);
  std::vector<std::size_t> count(layout.billboards.size(), 0);
  for (std::size_t s = 0; s < bare.slot_count(); ++s) {
    const Index one[1] = {static_cast<Index>(s)};
    sum[bare.slots()[s].billboard] += bare_est.slot_influence(one);
    ++count[bare.slots()[s].billboard];
  }
  for (std::size_t b = 0; b < layout.billboards.size(); ++b) {
    layout.billboards[b].base_cost =
        cfg.slot_cost_factor * (count[b] ? sum[b] / static_cast<double>(count[b]) : 0.0);
  }
  const double supply = influence_supply(bare_est);

  std::vector<Advertiser> advertisers;
  if (cfg.n_advertisers > 0) {
    if (!(supply > 0.0)) throw ConfigError("generated instance has no influence supply");
    advertisers = generate_advertisers(supply, cfg);
    // Rescale demands so that their total is alpha times the supply; payments
    // keep their drawn ratio to demand.
    double total = 0.0;
    for (const auto& a : advertisers) total += a.demand;
    const double scale = cfg.alpha * supply / total;
    for (auto& a : advertisers) {
      const double ratio = a.payment / a.demand;
      a.demand = std::max(1.0, std::floor(a.demand * scale));
      a.payment = std::max(1.0, std::floor(ratio * a.demand));
    }
  }
  return with_default_seed_costs(assemble(cfg, layout, advertisers));
}

}  // namespace regalloc
