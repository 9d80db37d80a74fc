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

// Core data model: trajectories, billboards and their slots, the social
// graph, advertisers, model parameters and allocations.
//
// String identifiers are resolved to dense indices when a ProblemInstance is
// built; every algorithm works on indices. An instance is immutable once
// built and may be shared freely between threads.

#ifndef REGALLOC_TYPES_H_
#define REGALLOC_TYPES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace regalloc {

using Index = std::int32_t;
inline constexpr Index kNoIndex = -1;

// Raised for inputs that violate a type invariant or reference unknown ids.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for invalid parameter or configuration values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

// Closed time interval in seconds.
struct TimeInterval {
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool intersects(const TimeInterval& other) const {
    return start <= other.end && other.start <= end;
  }
};

struct TrajectoryRecord {
  std::vector<std::string> user_ids;
  GeoPoint location;
  TimeInterval interval;
};

struct Billboard {
  std::string id;
  GeoPoint location;
  double panel_size = 0.0;  // square meters
  double base_cost = 0.0;
};

struct BillboardSlot {
  std::string id;
  Index billboard = kNoIndex;
  // [start, start + duration); stored as the half-open window bounds.
  std::int64_t start = 0;
  std::int64_t duration = 0;
  double cost = 0.0;

  TimeInterval window() const { return {start, start + duration}; }
};

// One undirected edge. `forward` is the probability of u activating v and
// `backward` of v activating u. A symmetric edge is a single Bernoulli trial
// that opens both directions at once.
struct GraphEdge {
  Index u = kNoIndex;
  Index v = kNoIndex;
  double forward = 0.0;
  double backward = 0.0;
  bool symmetric = true;
};

class SocialGraph {
 public:
  SocialGraph() = default;

  // Adds a node if absent and returns its index.
  Index add_node(const std::string& id);
  // Adds an undirected edge with a single probability.
  void add_edge(Index u, Index v, double weight);
  // Adds an undirected edge whose two directions fire independently.
  void add_directed_pair(Index u, Index v, double forward, double backward);

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  // Number of independent Bernoulli trials in one live-edge draw.
  std::size_t trial_count() const;

  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  std::vector<GraphEdge>& mutable_edges() { return edges_; }
  std::optional<Index> find(const std::string& id) const;
  std::vector<std::size_t> degrees() const;

 private:
  std::vector<std::string> node_ids_;
  std::unordered_map<std::string, Index> index_;
  std::vector<GraphEdge> edges_;
};

struct Advertiser {
  std::string id;
  double demand = 0.0;   // influence units
  double payment = 0.0;  // currency units; also the spending budget
};

enum class InfluenceMode { kExact, kMonteCarlo };

struct ModelParams {
  double rho = 0.5;
  double gamma = 0.5;
  double delta = 0.5;
  double pi_meters = 100.0;
  double panel_normalizer = 100.0;  // A; must exceed every panel size
  int mc_samples = 1000;
  std::uint64_t rng_seed = 0;
  InfluenceMode mode = InfluenceMode::kMonteCarlo;
  std::size_t exact_edge_limit = 20;
  std::size_t cache_capacity = std::size_t{1} << 16;
  // Seed node price per unit of singleton cascade influence.
  double seed_cost_factor = 5.0;

  // Throws ConfigError when a field is out of range.
  void validate() const;
};

// Slot and seed sets of one advertiser, as sorted index lists.
struct AdvertiserAllocation {
  std::vector<Index> slots;
  std::vector<Index> seeds;

  std::size_t size() const { return slots.size() + seeds.size(); }
  bool empty() const { return slots.empty() && seeds.empty(); }
};

// Decision variable: one entry per advertiser, in instance order.
struct Allocation {
  std::vector<AdvertiserAllocation> per_advertiser;

  static Allocation empty(std::size_t n_advertisers) {
    Allocation a;
    a.per_advertiser.resize(n_advertisers);
    return a;
  }
  void normalize();  // sorts and dedups every set
};

// Allocation keyed by string ids, as read from or written to files.
struct IdAllocation {
  struct Entry {
    std::set<std::string> slots;
    std::set<std::string> seeds;
  };
  std::map<std::string, Entry> by_advertiser;
};

class ProblemInstance {
 public:
  ProblemInstance() = default;

  const std::vector<TrajectoryRecord>& trajectories() const {
    return trajectories_;
  }
  const std::vector<Billboard>& billboards() const { return billboards_; }
  const std::vector<BillboardSlot>& slots() const { return slots_; }
  const SocialGraph& graph() const { return graph_; }
  const std::vector<Advertiser>& advertisers() const { return advertisers_; }
  const ModelParams& params() const { return params_; }
  // Cost of each graph node when used as a seed.
  const std::vector<double>& seed_costs() const { return seed_costs_; }
  // Distinct trajectory users sorted by id; the population of I and Psi.
  const std::vector<std::string>& users() const { return users_; }
  // Graph node index of each trajectory user, or kNoIndex.
  const std::vector<Index>& user_nodes() const { return user_nodes_; }

  std::size_t slot_count() const { return slots_.size(); }
  std::size_t seed_count() const { return graph_.node_count(); }
  std::size_t advertiser_count() const { return advertisers_.size(); }

  Index slot_index(const std::string& id) const;
  Index seed_index(const std::string& id) const;
  Index advertiser_index(const std::string& id) const;
  Index user_index(const std::string& id) const;

  Allocation resolve(const IdAllocation& alloc) const;
  IdAllocation to_ids(const Allocation& alloc) const;

  // Returns a copy with new parameters; the instance data is unchanged.
  ProblemInstance with_params(const ModelParams& params) const;
  // Returns a copy with replaced seed costs (one per graph node).
  ProblemInstance with_seed_costs(std::vector<double> costs) const;

 private:
  friend class InstanceBuilder;

  std::vector<TrajectoryRecord> trajectories_;
  std::vector<Billboard> billboards_;
  std::vector<BillboardSlot> slots_;
  SocialGraph graph_;
  std::vector<Advertiser> advertisers_;
  ModelParams params_;
  std::vector<double> seed_costs_;
  std::vector<std::string> users_;
  std::vector<Index> user_nodes_;
  std::unordered_map<std::string, Index> slot_index_;
  std::unordered_map<std::string, Index> advertiser_index_;
  std::unordered_map<std::string, Index> user_index_;
};

// Assembles and validates a ProblemInstance.
class InstanceBuilder {
 public:
  InstanceBuilder& set_params(const ModelParams& params);
  InstanceBuilder& add_trajectory(TrajectoryRecord record);
  Index add_billboard(Billboard billboard);
  InstanceBuilder& add_slot(BillboardSlot slot);
  // Cuts [horizon_start, horizon_end) into windows of `duration` seconds for
  // every billboard added so far. A trailing partial window is dropped.
  // Returns the number of dropped seconds per billboard.
  std::int64_t tile_slots(std::int64_t horizon_start, std::int64_t horizon_end,
                          std::int64_t duration);
  InstanceBuilder& set_graph(SocialGraph graph);
  SocialGraph& graph() { return graph_; }
  InstanceBuilder& add_advertiser(Advertiser advertiser);
  InstanceBuilder& set_seed_costs(std::vector<double> costs);

  // Validates and freezes. Users seen only in trajectories become isolated
  // graph nodes. Missing seed costs default to zero.
  ProblemInstance build();

 private:
  ProblemInstance inst_;
  SocialGraph graph_;
  std::optional<std::vector<double>> seed_costs_;
};

}  // namespace regalloc

#endif  // REGALLOC_TYPES_H_
