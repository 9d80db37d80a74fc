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

// Slot influence I(S), cascade influence I^G(P) under the independent
// cascade model, single-seed activation probabilities, the interaction term
// Psi(S,P) and the combined influence Phi = I + I^G + Psi.
//
// Cascade quantities are expectations over live-edge worlds. In exact mode
// the estimator enumerates all 2^t worlds of the t Bernoulli trials with their
// product weights; in Monte-Carlo mode it draws mc_samples worlds of weight
// 1/mc_samples, each from its own counter-based random stream, so estimates do
// not depend on evaluation order or thread count.
//
// Set arguments are index lists; duplicates are ignored.

#ifndef REGALLOC_INFLUENCE_H_
#define REGALLOC_INFLUENCE_H_

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "regalloc/ingest.h"
#include "regalloc/types.h"

namespace regalloc {

class ModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InfluenceComponents {
  double slot = 0.0;         // I(S)
  double cascade = 0.0;      // I^G(P)
  double interaction = 0.0;  // Psi(S,P)

  double total() const { return slot + cascade + interaction; }
};

struct CascadeStats {
  double mean = 0.0;
  // Variance of the per-world activated count (zero in exact mode).
  double variance = 0.0;
  std::size_t worlds = 0;
};

// Scratch space for LiveEdgeWorlds::spread. After a call, `touched` lists
// every node whose `added` mask is non-zero; clear() resets those entries.
struct SpreadScratch {
  std::vector<std::uint64_t> added;
  std::vector<std::uint64_t> pending;
  std::vector<Index> touched;
  std::vector<Index> stack;

  void resize(std::size_t nodes) {
    added.assign(nodes, 0);
    pending.assign(nodes, 0);
  }
  void clear() {
    for (Index v : touched) added[v] = 0;
    touched.clear();
  }
};

// Live-edge worlds of one graph, stored 64 to a block: for every block and
// Bernoulli trial one word says in which of the block's worlds the trial
// succeeded. Reachability is propagated for all worlds of a block at once.
class LiveEdgeWorlds {
 public:
  LiveEdgeWorlds(const SocialGraph& graph, const ModelParams& params);

  std::size_t size() const { return weights_.size(); }
  std::size_t blocks() const { return (weights_.size() + 63) / 64; }
  std::size_t node_count() const { return offsets_.size() - 1; }
  double weight(std::size_t w) const { return weights_[w]; }
  bool exact() const { return exact_; }
  // Worlds that exist in block b.
  std::uint64_t block_mask(std::size_t b) const;
  // Total weight of the worlds set in mask within block b.
  double mask_weight(std::size_t b, std::uint64_t mask) const;

  // Per block, active holds one world mask per node. Records in s.added the
  // worlds in which each node becomes reachable from the sources without
  // already being active, and returns the weight of those activations.
  double spread(std::size_t b, std::span<const Index> sources,
                const std::uint64_t* active, SpreadScratch& s) const;

 private:
  struct Arc {
    Index to;
    std::int32_t trial;
  };
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::size_t trials_ = 0;
  std::vector<std::uint64_t> live_;  // blocks x trials
  std::vector<double> weights_;
  bool exact_ = false;
  bool uniform_ = true;
};

class InfluenceEstimator {
 public:
  // The instance must outlive the estimator.
  explicit InfluenceEstimator(const ProblemInstance& instance);
  InfluenceEstimator(const InfluenceEstimator&) = delete;
  InfluenceEstimator& operator=(const InfluenceEstimator&) = delete;

  const ProblemInstance& instance() const { return inst_; }
  const ExposureTable& exposures() const { return exposures_; }
  const LiveEdgeWorlds& worlds() const { return worlds_; }
  std::size_t user_count() const { return inst_.users().size(); }

  double slot_influence(std::span<const Index> slots) const;
  double ic_influence(std::span<const Index> seeds) const;
  CascadeStats ic_influence_stats(std::span<const Index> seeds) const;

  // Pr'(u,v) for graph nodes u and v.
  double activation_prob(Index u, Index v) const;
  // String form; a u that is not a graph node gives 0.
  double activation_prob(const std::string& u, const std::string& v) const;
  // Pr'(user_k, v) for every trajectory user k, in users() order.
  std::span<const double> user_activation_row(Index v) const;

  double interaction_effect(std::span<const Index> slots,
                            std::span<const Index> seeds) const;
  InfluenceComponents components(std::span<const Index> slots,
                                 std::span<const Index> seeds) const;
  // Phi(S,P), memoized in a bounded LRU cache.
  double combined(std::span<const Index> slots, std::span<const Index> seeds) const;

  // Structure-of-arrays view of one slot's exposure list.
  std::span<const std::int32_t> exposure_users(Index slot) const {
    return exposure_users_[slot];
  }
  std::span<const double> exposure_probs(Index slot) const {
    return exposure_probs_[slot];
  }

  double slot_singleton(Index slot) const;
  double seed_singleton(Index seed) const;

  // rho * |U| * alpha * k * beta with alpha the largest exposure probability,
  // beta the largest activation probability of a user and k the larger of the
  // slot and node counts.
  double epsilon_bound() const;
  // Per-user form: rho * sum_u max(a_u * B_u, A_u) with a_u the largest
  // exposure probability of u, A_u its union over all slots and B_u the sum
  // of Pr'(u,v) over all nodes v.
  double epsilon_bound_tight() const;

  std::size_t cache_size() const;

 private:
  struct Row {
    std::vector<double> node;  // over graph nodes
    std::vector<double> user;  // over trajectory users
  };
  const Row& row(Index v) const;
  std::vector<double> miss_vector(std::span<const Index> slots) const;

  const ProblemInstance& inst_;
  ExposureTable exposures_;
  std::vector<std::vector<std::int32_t>> exposure_users_;
  std::vector<std::vector<double>> exposure_probs_;
  LiveEdgeWorlds worlds_;

  mutable std::mutex row_mu_;
  mutable std::vector<std::unique_ptr<Row>> rows_;

  mutable std::mutex cache_mu_;
  mutable std::list<std::pair<std::string, double>> lru_;
  mutable std::unordered_map<std::string,
                             std::list<std::pair<std::string, double>>::iterator>
      lru_index_;
};

// Incremental Phi for one growing allocation (S,P).
class InfluenceState {
 public:
  explicit InfluenceState(const InfluenceEstimator& est);

  const InfluenceComponents& components() const { return comp_; }
  double phi() const { return comp_.total(); }
  const std::vector<Index>& slots() const { return slots_; }
  const std::vector<Index>& seeds() const { return seeds_; }

  // Phi(S+b, P) - Phi(S, P).
  double slot_gain(Index slot) const;
  // Phi(S, P+v) - Phi(S, P).
  double seed_gain(Index seed) const;
  void add_slot(Index slot);
  void add_seed(Index seed);

 private:
  const InfluenceEstimator& est_;
  std::vector<double> miss_;   // prod over S of (1 - Pr(u,b))
  std::vector<double> hit_;    // 1 - miss
  std::vector<double> theta_;  // sum over P of Pr'(u,v)
  std::vector<std::uint64_t> active_;  // blocks x nodes
  mutable SpreadScratch scratch_;
  std::vector<char> has_slot_;
  std::vector<char> has_seed_;
  std::vector<Index> slots_;
  std::vector<Index> seeds_;
  InfluenceComponents comp_;
};

// Copy of the instance whose seed costs are seed_cost_factor * I^G({v}).
ProblemInstance with_default_seed_costs(const ProblemInstance& instance);

}  // namespace regalloc

#endif  // REGALLOC_INFLUENCE_H_
