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

#include "regalloc/types.h"

#include <algorithm>
#include <cmath>

namespace regalloc {

Index SocialGraph::add_node(const std::string& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  const auto idx = static_cast<Index>(node_ids_.size());
  node_ids_.push_back(id);
  index_.emplace(id, idx);
  return idx;
}

namespace {

void check_edge(const SocialGraph& g, Index u, Index v, double w) {
  const auto n = static_cast<Index>(g.node_count());
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw StructuralError("edge endpoint out of range");
  }
  if (u == v) {
    throw StructuralError("self-loop on node '" + g.node_ids()[u] + "'");
  }
  if (!(w > 0.0 && w <= 1.0)) {
    throw StructuralError("edge weight must be in (0,1], got " +
                          std::to_string(w));
  }
}

}  // namespace

void SocialGraph::add_edge(Index u, Index v, double weight) {
  check_edge(*this, u, v, weight);
  edges_.push_back({u, v, weight, weight, true});
}

void SocialGraph::add_directed_pair(Index u, Index v, double forward,
                                    double backward) {
  check_edge(*this, u, v, forward);
  check_edge(*this, u, v, backward);
  edges_.push_back({u, v, forward, backward, false});
}

std::size_t SocialGraph::trial_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.symmetric ? 1 : 2;
  return n;
}

std::optional<Index> SocialGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SocialGraph::degrees() const {
  std::vector<std::size_t> deg(node_ids_.size(), 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

void ModelParams::validate() const {
  auto unit = [](double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ConfigError(std::string(name) + " must be in [0,1], got " +
                        std::to_string(x));
    }
  };
  unit(rho, "rho");
  unit(gamma, "gamma");
  unit(delta, "delta");
  if (!(pi_meters >= 0.0)) throw ConfigError("pi must be non-negative");
  if (!(panel_normalizer > 0.0)) {
    throw ConfigError("panel normalizer A must be positive");
  }
  if (mc_samples < 1) throw ConfigError("mc_samples must be >= 1");
  if (!(seed_cost_factor >= 0.0)) {
    throw ConfigError("seed_cost_factor must be non-negative");
  }
}

void Allocation::normalize() {
  for (auto& a : per_advertiser) {
    std::sort(a.slots.begin(), a.slots.end());
    a.slots.erase(std::unique(a.slots.begin(), a.slots.end()), a.slots.end());
    std::sort(a.seeds.begin(), a.seeds.end());
    a.seeds.erase(std::unique(a.seeds.begin(), a.seeds.end()), a.seeds.end());
  }
}

Index ProblemInstance::slot_index(const std::string& id) const {
  auto it = slot_index_.find(id);
  if (it == slot_index_.end()) throw StructuralError("unknown slot id '" + id + "'");
  return it->second;
}

Index ProblemInstance::seed_index(const std::string& id) const {
  auto idx = graph_.find(id);
  if (!idx) throw StructuralError("unknown seed node id '" + id + "'");
  return *idx;
}

Index ProblemInstance::advertiser_index(const std::string& id) const {
  auto it = advertiser_index_.find(id);
  if (it == advertiser_index_.end()) {
    throw StructuralError("unknown advertiser id '" + id + "'");
  }
  return it->second;
}

Index ProblemInstance::user_index(const std::string& id) const {
  auto it = user_index_.find(id);
  if (it == user_index_.end()) throw StructuralError("unknown user id '" + id + "'");
  return it->second;
}

Allocation ProblemInstance::resolve(const IdAllocation& alloc) const {
  Allocation out = Allocation::empty(advertisers_.size());
  for (const auto& [adv_id, entry] : alloc.by_advertiser) {
    auto& dst = out.per_advertiser[advertiser_index(adv_id)];
    for (const auto& s : entry.slots) dst.slots.push_back(slot_index(s));
    for (const auto& p : entry.seeds) dst.seeds.push_back(seed_index(p));
  }
  out.normalize();
  return out;
}

IdAllocation ProblemInstance::to_ids(const Allocation& alloc) const {
  IdAllocation out;
  for (std::size_t i = 0; i < alloc.per_advertiser.size(); ++i) {
    auto& entry = out.by_advertiser[advertisers_.at(i).id];
    for (Index s : alloc.per_advertiser[i].slots) entry.slots.insert(slots_.at(s).id);
    for (Index p : alloc.per_advertiser[i].seeds) {
      entry.seeds.insert(graph_.node_ids().at(p));
    }
  }
  return out;
}

ProblemInstance ProblemInstance::with_params(const ModelParams& params) const {
  params.validate();
  ProblemInstance copy = *this;
  copy.params_ = params;
  return copy;
}

ProblemInstance ProblemInstance::with_seed_costs(std::vector<double> costs) const {
  if (costs.size() != graph_.node_count()) {
    throw StructuralError("seed cost count does not match node count");
  }
  for (double c : costs) {
    if (!(c >= 0.0)) throw StructuralError("negative seed cost");
  }
  ProblemInstance copy = *this;
  copy.seed_costs_ = std::move(costs);
  return copy;
}

InstanceBuilder& InstanceBuilder::set_params(const ModelParams& params) {
  inst_.params_ = params;
  return *this;
}

InstanceBuilder& InstanceBuilder::add_trajectory(TrajectoryRecord record) {
  if (record.user_ids.empty()) {
    throw StructuralError("trajectory record has no users");
  }
  if (record.interval.start > record.interval.end) {
    throw StructuralError("trajectory record has t_start > t_end");
  }
  inst_.trajectories_.push_back(std::move(record));
  return *this;
}

Index InstanceBuilder::add_billboard(Billboard billboard) {
  if (!(billboard.panel_size > 0.0)) {
    throw StructuralError("billboard '" + billboard.id +
                          "' has non-positive panel size");
  }
  if (!(billboard.base_cost >= 0.0)) {
    throw StructuralError("billboard '" + billboard.id + "' has negative cost");
  }
  inst_.billboards_.push_back(std::move(billboard));
  return static_cast<Index>(inst_.billboards_.size() - 1);
}

InstanceBuilder& InstanceBuilder::add_slot(BillboardSlot slot) {
  if (slot.billboard < 0 ||
      static_cast<std::size_t>(slot.billboard) >= inst_.billboards_.size()) {
    throw StructuralError("slot '" + slot.id + "' references unknown billboard");
  }
  if (slot.duration <= 0) {
    throw StructuralError("slot '" + slot.id + "' has non-positive duration");
  }
  if (!(slot.cost >= 0.0)) {
    throw StructuralError("slot '" + slot.id + "' has negative cost");
  }
  inst_.slots_.push_back(std::move(slot));
  return *this;
}

std::int64_t InstanceBuilder::tile_slots(std::int64_t horizon_start,
                                         std::int64_t horizon_end,
                                         std::int64_t duration) {
  if (duration <= 0) throw ConfigError("slot duration must be positive");
  if (horizon_end < horizon_start) throw ConfigError("horizon end before start");
  const std::int64_t count = (horizon_end - horizon_start) / duration;
  for (std::size_t b = 0; b < inst_.billboards_.size(); ++b) {
    const auto& bb = inst_.billboards_[b];
    for (std::int64_t k = 0; k < count; ++k) {
      const std::int64_t start = horizon_start + k * duration;
      add_slot({bb.id + "@" + std::to_string(start), static_cast<Index>(b),
                start, duration, bb.base_cost});
    }
  }
  return (horizon_end - horizon_start) - count * duration;
}

InstanceBuilder& InstanceBuilder::set_graph(SocialGraph graph) {
  graph_ = std::move(graph);
  return *this;
}

InstanceBuilder& InstanceBuilder::add_advertiser(Advertiser advertiser) {
  if (!(advertiser.demand > 0.0)) {
    throw StructuralError("advertiser '" + advertiser.id +
                          "' must have positive demand");
  }
  if (!(advertiser.payment > 0.0)) {
    throw StructuralError("advertiser '" + advertiser.id +
                          "' must have positive payment");
  }
  inst_.advertisers_.push_back(std::move(advertiser));
  return *this;
}

InstanceBuilder& InstanceBuilder::set_seed_costs(std::vector<double> costs) {
  seed_costs_ = std::move(costs);
  return *this;
}

ProblemInstance InstanceBuilder::build() {
  ProblemInstance inst = std::move(inst_);
  inst_ = ProblemInstance{};
  inst.params_.validate();

  double max_panel = 0.0;
  for (const auto& b : inst.billboards_) max_panel = std::max(max_panel, b.panel_size);
  if (!inst.billboards_.empty() && !(inst.params_.panel_normalizer > max_panel)) {
    throw ConfigError("panel normalizer A must exceed the largest panel size");
  }

  for (std::size_t i = 0; i < inst.slots_.size(); ++i) {
    if (!inst.slot_index_.emplace(inst.slots_[i].id, static_cast<Index>(i)).second) {
      throw StructuralError("duplicate slot id '" + inst.slots_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < inst.advertisers_.size(); ++i) {
    if (!inst.advertiser_index_.emplace(inst.advertisers_[i].id, static_cast<Index>(i))
             .second) {
      throw StructuralError("duplicate advertiser id '" + inst.advertisers_[i].id + "'");
    }
  }

  std::set<std::string> users;
  for (const auto& rec : inst.trajectories_) {
    users.insert(rec.user_ids.begin(), rec.user_ids.end());
  }
  inst.users_.assign(users.begin(), users.end());
  for (const auto& u : inst.users_) graph_.add_node(u);
  inst.user_nodes_.reserve(inst.users_.size());
  for (std::size_t i = 0; i < inst.users_.size(); ++i) {
    inst.user_index_.emplace(inst.users_[i], static_cast<Index>(i));
    inst.user_nodes_.push_back(*graph_.find(inst.users_[i]));
  }
  inst.graph_ = std::move(graph_);
  graph_ = SocialGraph{};

  if (seed_costs_) {
    if (seed_costs_->size() != inst.graph_.node_count()) {
      throw StructuralError("seed cost count does not match node count");
    }
    for (double c : *seed_costs_) {
      if (!(c >= 0.0)) throw StructuralError("negative seed cost");
    }
    inst.seed_costs_ = std::move(*seed_costs_);
  } else {
    inst.seed_costs_.assign(inst.graph_.node_count(), 0.0);
  }
  seed_costs_.reset();
  return inst;
}

}  // namespace regalloc
