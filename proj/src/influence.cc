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

#include "regalloc/influence.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <random>

#include "regalloc/kernels.h"

namespace regalloc {
namespace {

std::vector<Index> sorted_unique(std::span<const Index> ids) {
  std::vector<Index> v(ids.begin(), ids.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_range(std::span<const Index> ids, std::size_t n, const char* what) {
  for (Index i : ids) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw StructuralError(std::string(what) + " index out of range: " +
                            std::to_string(i));
    }
  }
}

}  // namespace

LiveEdgeWorlds::LiveEdgeWorlds(const SocialGraph& graph, const ModelParams& params) {
  const std::size_t n = graph.node_count();
  std::vector<double> prob;
  struct Pending {
    Index from, to;
    std::int32_t trial;
  };
  std::vector<Pending> pending;
  for (const auto& e : graph.edges()) {
    const auto t = static_cast<std::int32_t>(prob.size());
    if (e.symmetric) {
      prob.push_back(e.forward);
      pending.push_back({e.u, e.v, t});
      pending.push_back({e.v, e.u, t});
    } else {
      prob.push_back(e.forward);
      prob.push_back(e.backward);
      pending.push_back({e.u, e.v, t});
      pending.push_back({e.v, e.u, t + 1});
    }
  }
  offsets_.assign(n + 1, 0);
  for (const auto& a : pending) ++offsets_[a.from + 1];
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  arcs_.resize(pending.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& a : pending) arcs_[fill[a.from]++] = {a.to, a.trial};
  trials_ = prob.size();

  auto set_live = [this](std::size_t world, std::size_t trial) {
    live_[(world / 64) * trials_ + trial] |= std::uint64_t{1} << (world % 64);
  };

  if (params.mode == InfluenceMode::kExact) {
    if (trials_ > params.exact_edge_limit || trials_ > 30) {
      throw ModeError("exact influence needs at most " +
                      std::to_string(params.exact_edge_limit) +
                      " edge trials, graph has " + std::to_string(trials_));
    }
    exact_ = true;
    uniform_ = false;
    std::vector<std::uint64_t> masks;
    const std::uint64_t count = std::uint64_t{1} << trials_;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      double w = 1.0;
      for (std::size_t t = 0; t < trials_; ++t) {
        w *= ((mask >> t) & 1u) ? prob[t] : 1.0 - prob[t];
      }
      if (w == 0.0) continue;
      weights_.push_back(w);
      masks.push_back(mask);
    }
    live_.assign(blocks() * trials_, 0);
    for (std::size_t w = 0; w < masks.size(); ++w) {
      for (std::size_t t = 0; t < trials_; ++t) {
        if ((masks[w] >> t) & 1u) set_live(w, t);
      }
    }
    return;
  }

  const auto samples = static_cast<std::size_t>(params.mc_samples);
  weights_.assign(samples, 1.0 / static_cast<double>(samples));
  live_.assign(blocks() * trials_, 0);
  for (std::size_t r = 0; r < samples; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.rng_seed),
                      static_cast<std::uint32_t>(params.rng_seed >> 32),
                      static_cast<std::uint32_t>(r),
                      static_cast<std::uint32_t>(std::uint64_t{r} >> 32)};
    std::mt19937_64 eng(seq);
    for (std::size_t t = 0; t < trials_; ++t) {
      const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
      if (u < prob[t]) set_live(r, t);
    }
  }
}

std::uint64_t LiveEdgeWorlds::block_mask(std::size_t b) const {
  const std::size_t in_block = std::min<std::size_t>(64, weights_.size() - b * 64);
  return in_block == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << in_block) - 1;
}

double LiveEdgeWorlds::mask_weight(std::size_t b, std::uint64_t mask) const {
  if (uniform_) return static_cast<double>(std::popcount(mask)) * weights_[0];
  double w = 0.0;
  while (mask) {
    w += weights_[b * 64 + static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return w;
}

double LiveEdgeWorlds::spread(std::size_t b, std::span<const Index> sources,
                              const std::uint64_t* active, SpreadScratch& s) const {
  const std::uint64_t* live = &live_[b * trials_];
  const std::uint64_t full = block_mask(b);
  double gained = 0.0;
  auto activate = [&](Index v, std::uint64_t bits) {
    bits &= ~(active[v] | s.added[v]);
    if (!bits) return;
    if (!s.added[v]) s.touched.push_back(v);
    s.added[v] |= bits;
    if (!s.pending[v]) s.stack.push_back(v);
    s.pending[v] |= bits;
    gained += mask_weight(b, bits);
  };
  for (Index v : sources) activate(v, full);
  while (!s.stack.empty()) {
    const Index x = s.stack.back();
    s.stack.pop_back();
    const std::uint64_t d = s.pending[x];
    s.pending[x] = 0;
    for (std::size_t a = offsets_[x]; a < offsets_[x + 1]; ++a) {
      const std::uint64_t bits = d & live[arcs_[a].trial];
      if (bits) activate(arcs_[a].to, bits);
    }
  }
  return gained;
}

InfluenceEstimator::InfluenceEstimator(const ProblemInstance& instance)
    : inst_(instance),
      exposures_(build_exposure_table(instance)),
      worlds_(instance.graph(), instance.params()),
      rows_(instance.graph().node_count()) {
  exposure_users_.resize(exposures_.per_slot.size());
  exposure_probs_.resize(exposures_.per_slot.size());
  for (std::size_t s = 0; s < exposures_.per_slot.size(); ++s) {
    for (const auto& e : exposures_.per_slot[s]) {
      exposure_users_[s].push_back(e.user);
      exposure_probs_[s].push_back(e.probability);
    }
  }
}

std::vector<double> InfluenceEstimator::miss_vector(std::span<const Index> slots) const {
  check_range(slots, inst_.slot_count(), "slot");
  std::vector<double> miss(user_count(), 1.0);
  for (Index s : sorted_unique(slots)) {
    for (const auto& e : exposures_.per_slot[s]) miss[e.user] *= 1.0 - e.probability;
  }
  return miss;
}

double InfluenceEstimator::slot_influence(std::span<const Index> slots) const {
  const auto miss = miss_vector(slots);
  return static_cast<double>(miss.size()) -
         kernels::active().sum(miss.data(), miss.size());
}

CascadeStats InfluenceEstimator::ic_influence_stats(std::span<const Index> seeds) const {
  check_range(seeds, inst_.seed_count(), "seed");
  CascadeStats st;
  st.worlds = worlds_.size();
  if (seeds.empty()) return st;
  const std::vector<std::uint64_t> none(inst_.graph().node_count(), 0);
  SpreadScratch scratch;
  scratch.resize(none.size());
  std::vector<double> counts(worlds_.size(), 0.0);
  for (std::size_t b = 0; b < worlds_.blocks(); ++b) {
    st.mean += worlds_.spread(b, seeds, none.data(), scratch);
    for (Index v : scratch.touched) {
      for (std::uint64_t m = scratch.added[v]; m; m &= m - 1) {
        counts[b * 64 + static_cast<std::size_t>(std::countr_zero(m))] += 1.0;
      }
    }
    scratch.clear();
  }
  if (!worlds_.exact() && worlds_.size() > 1) {
    double ss = 0.0;
    for (double c : counts) ss += (c - st.mean) * (c - st.mean);
    st.variance = ss / static_cast<double>(worlds_.size() - 1);
  }
  return st;
}

double InfluenceEstimator::ic_influence(std::span<const Index> seeds) const {
  check_range(seeds, inst_.seed_count(), "seed");
  if (seeds.empty()) return 0.0;
  const std::vector<std::uint64_t> none(inst_.graph().node_count(), 0);
  SpreadScratch scratch;
  scratch.resize(none.size());
  double total = 0.0;
  for (std::size_t b = 0; b < worlds_.blocks(); ++b) {
    total += worlds_.spread(b, seeds, none.data(), scratch);
    scratch.clear();
  }
  return total;
}

const InfluenceEstimator::Row& InfluenceEstimator::row(Index v) const {
  {
    std::lock_guard lock(row_mu_);
    if (rows_[v]) return *rows_[v];
  }
  auto r = std::make_unique<Row>();
  const std::size_t n = inst_.graph().node_count();
  r->node.assign(n, 0.0);
  const std::vector<std::uint64_t> none(n, 0);
  SpreadScratch scratch;
  scratch.resize(n);
  const Index src[1] = {v};
  for (std::size_t b = 0; b < worlds_.blocks(); ++b) {
    worlds_.spread(b, src, none.data(), scratch);
    for (Index u : scratch.touched) r->node[u] += worlds_.mask_weight(b, scratch.added[u]);
    scratch.clear();
  }
  r->node[v] = 1.0;
  for (double& x : r->node) x = std::min(x, 1.0);
  r->user.reserve(user_count());
  for (Index node : inst_.user_nodes()) {
    r->user.push_back(node == kNoIndex ? 0.0 : r->node[node]);
  }
  std::lock_guard lock(row_mu_);
  if (!rows_[v]) rows_[v] = std::move(r);
  return *rows_[v];
}

double InfluenceEstimator::activation_prob(Index u, Index v) const {
  const Index idx[2] = {u, v};
  check_range(idx, inst_.seed_count(), "node");
  if (u == v) return 1.0;
  return row(v).node[u];
}

double InfluenceEstimator::activation_prob(const std::string& u,
                                           const std::string& v) const {
  const Index vi = inst_.seed_index(v);
  const auto ui = inst_.graph().find(u);
  if (!ui) return 0.0;
  return activation_prob(*ui, vi);
}

std::span<const double> InfluenceEstimator::user_activation_row(Index v) const {
  const Index idx[1] = {v};
  check_range(idx, inst_.seed_count(), "seed");
  return row(v).user;
}

double InfluenceEstimator::interaction_effect(std::span<const Index> slots,
                                              std::span<const Index> seeds) const {
  return components(slots, seeds).interaction;
}

InfluenceComponents InfluenceEstimator::components(std::span<const Index> slots,
                                                   std::span<const Index> seeds) const {
  const auto& k = kernels::active();
  InfluenceComponents c;
  auto miss = miss_vector(slots);
  const std::size_t nu = miss.size();
  c.slot = static_cast<double>(nu) - k.sum(miss.data(), nu);
  c.cascade = ic_influence(seeds);
  const double rho = inst_.params().rho;
  if (rho == 0.0 || slots.empty() || seeds.empty()) return c;
  std::vector<double> theta(nu, 0.0);
  for (Index v : sorted_unique(seeds)) k.axpy(theta.data(), row(v).user.data(), nu, 1.0);
  for (double& m : miss) m = 1.0 - m;
  c.interaction = rho * k.dot(miss.data(), theta.data(), nu);
  return c;
}

double InfluenceEstimator::combined(std::span<const Index> slots,
                                    std::span<const Index> seeds) const {
  const auto s = sorted_unique(slots);
  const auto p = sorted_unique(seeds);
  std::string key(sizeof(Index) * (s.size() + p.size() + 1), '\0');
  char* out = key.data();
  std::memcpy(out, s.data(), sizeof(Index) * s.size());
  out += sizeof(Index) * s.size();
  const Index sep = kNoIndex;
  std::memcpy(out, &sep, sizeof(Index));
  out += sizeof(Index);
  std::memcpy(out, p.data(), sizeof(Index) * p.size());

  const std::size_t capacity = inst_.params().cache_capacity;
  if (capacity > 0) {
    std::lock_guard lock(cache_mu_);
    auto it = lru_index_.find(key);
    if (it != lru_index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
  }
  const double value = components(s, p).total();
  if (capacity > 0) {
    std::lock_guard lock(cache_mu_);
    if (lru_index_.find(key) == lru_index_.end()) {
      lru_.emplace_front(key, value);
      lru_index_.emplace(std::move(key), lru_.begin());
      while (lru_.size() > capacity) {
        lru_index_.erase(lru_.back().first);
        lru_.pop_back();
      }
    }
  }
  return value;
}

double InfluenceEstimator::slot_singleton(Index slot) const {
  const Index s[1] = {slot};
  return combined(s, {});
}

double InfluenceEstimator::seed_singleton(Index seed) const {
  const Index p[1] = {seed};
  return combined({}, p);
}

double InfluenceEstimator::epsilon_bound() const {
  const double rho = inst_.params().rho;
  const std::size_t users = user_count();
  if (rho == 0.0 || users == 0 || inst_.graph().node_count() == 0) return 0.0;
  const double alpha = exposures_.max_probability();
  // Every user is a graph node and Pr'(u,u) = 1, so the largest activation
  // probability is 1.
  const double beta = 1.0;
  const double k =
      static_cast<double>(std::max(inst_.slot_count(), inst_.graph().node_count()));
  return rho * static_cast<double>(users) * alpha * k * beta;
}

double InfluenceEstimator::epsilon_bound_tight() const {
  const double rho = inst_.params().rho;
  const std::size_t nu = user_count();
  if (rho == 0.0 || nu == 0) return 0.0;
  std::vector<double> a(nu, 0.0);
  std::vector<Index> all(inst_.slot_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i);
  const auto miss = miss_vector(all);
  for (const auto& list : exposures_.per_slot) {
    for (const auto& e : list) a[e.user] = std::max(a[e.user], e.probability);
  }
  std::vector<double> b(nu, 0.0);
  const auto& k = kernels::active();
  for (std::size_t v = 0; v < inst_.graph().node_count(); ++v) {
    k.axpy(b.data(), row(static_cast<Index>(v)).user.data(), nu, 1.0);
  }
  double total = 0.0;
  for (std::size_t u = 0; u < nu; ++u) total += std::max(a[u] * b[u], 1.0 - miss[u]);
  return rho * total;
}

std::size_t InfluenceEstimator::cache_size() const {
  std::lock_guard lock(cache_mu_);
  return lru_.size();
}

InfluenceState::InfluenceState(const InfluenceEstimator& est)
    : est_(est),
      miss_(est.user_count(), 1.0),
      hit_(est.user_count(), 0.0),
      theta_(est.user_count(), 0.0),
      active_(est.worlds().blocks() * est.instance().graph().node_count(), 0),
      has_slot_(est.instance().slot_count(), 0),
      has_seed_(est.instance().seed_count(), 0) {
  scratch_.resize(est.instance().graph().node_count());
}

double InfluenceState::slot_gain(Index slot) const {
  if (has_slot_.at(slot)) return 0.0;
  const auto users = est_.exposure_users(slot);
  const auto probs = est_.exposure_probs(slot);
  return kernels::active().exposure_gain(users.data(), probs.data(), users.size(),
                                         miss_.data(), theta_.data(),
                                         est_.instance().params().rho);
}

double InfluenceState::seed_gain(Index seed) const {
  if (has_seed_.at(seed)) return 0.0;
  const auto& worlds = est_.worlds();
  const std::size_t n = est_.instance().graph().node_count();
  const Index src[1] = {seed};
  double cascade = 0.0;
  for (std::size_t b = 0; b < worlds.blocks(); ++b) {
    cascade += worlds.spread(b, src, &active_[b * n], scratch_);
    scratch_.clear();
  }
  const double rho = est_.instance().params().rho;
  if (rho == 0.0 || slots_.empty()) return cascade;
  const auto row = est_.user_activation_row(seed);
  return cascade + rho * kernels::active().dot(hit_.data(), row.data(), row.size());
}

void InfluenceState::add_slot(Index slot) {
  if (has_slot_.at(slot)) return;
  const auto users = est_.exposure_users(slot);
  const auto probs = est_.exposure_probs(slot);
  const double rho = est_.instance().params().rho;
  double d_slot = 0.0;
  double d_inter = 0.0;
  for (std::size_t k = 0; k < users.size(); ++k) {
    const auto u = users[k];
    const double d = miss_[u] * probs[k];
    d_slot += d;
    d_inter += d * theta_[u];
    miss_[u] -= d;
    hit_[u] = 1.0 - miss_[u];
  }
  comp_.slot += d_slot;
  comp_.interaction += rho * d_inter;
  has_slot_[slot] = 1;
  slots_.push_back(slot);
}

void InfluenceState::add_seed(Index seed) {
  if (has_seed_.at(seed)) return;
  const auto& worlds = est_.worlds();
  const std::size_t n = est_.instance().graph().node_count();
  const Index src[1] = {seed};
  double cascade = 0.0;
  for (std::size_t b = 0; b < worlds.blocks(); ++b) {
    std::uint64_t* active = &active_[b * n];
    cascade += worlds.spread(b, src, active, scratch_);
    for (Index v : scratch_.touched) active[v] |= scratch_.added[v];
    scratch_.clear();
  }
  const auto row = est_.user_activation_row(seed);
  const auto& k = kernels::active();
  comp_.cascade += cascade;
  comp_.interaction +=
      est_.instance().params().rho * k.dot(hit_.data(), row.data(), row.size());
  k.axpy(theta_.data(), row.data(), row.size(), 1.0);
  has_seed_[seed] = 1;
  seeds_.push_back(seed);
}

ProblemInstance with_default_seed_costs(const ProblemInstance& instance) {
  const InfluenceEstimator est(instance);
  const double factor = instance.params().seed_cost_factor;
  std::vector<double> costs(instance.seed_count());
  for (std::size_t v = 0; v < costs.size(); ++v) {
    const Index p[1] = {static_cast<Index>(v)};
    costs[v] = factor * est.ic_influence(p);
  }
  return instance.with_seed_costs(std::move(costs));
}

}  // namespace regalloc
