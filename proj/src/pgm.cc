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

#include "regalloc/pgm.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "regalloc/feasibility.h"
#include "regalloc/kernels.h"
#include "regalloc/lovasz.h"
#include "regalloc/pools.h"

namespace regalloc {

void PgmConfig::validate() const {
  if (iterations < 1) throw ConfigError("T must be >= 1");
  if (lipschitz == Lipschitz::kFixed && !(fixed_lipschitz > 0.0)) {
    throw ConfigError("fixed Lipschitz constant must be positive");
  }
  if (!(init_value >= 0.0 && init_value <= 1.0)) {
    throw ConfigError("init_value must be in [0,1]");
  }
}

double estimate_lipschitz(const RegretModel& model, Index advertiser,
                          std::span<const Index> slots, std::span<const Index> seeds) {
  const double base = model.empty_regret(advertiser);
  double best = 0.0;
  for (Index b : slots) {
    const Index s[1] = {b};
    best = std::max(best, std::abs(model.advertiser_regret(advertiser, s, {}) - base));
  }
  for (Index v : seeds) {
    const Index p[1] = {v};
    best = std::max(best, std::abs(model.advertiser_regret(advertiser, {}, p) - base));
  }
  return std::max(best, 1e-9);
}

namespace {

// Regret of one advertiser along a chain over the concatenation of
// `slots` and `seeds`, starting from a fixed base allocation.
class RegretChain : public ChainFunction {
 public:
  RegretChain(const RegretModel& model, Index adv, const InfluenceState& base,
              std::span<const Index> slots, std::span<const Index> seeds)
      : model_(model), adv_(adv), base_(base), slots_(slots), seeds_(seeds) {}

  double start() override {
    state_.reset();
    state_.emplace(base_);
    return value();
  }

  double extend(Index e) override {
    const auto m = static_cast<Index>(slots_.size());
    if (e < m) {
      state_->add_slot(slots_[e]);
    } else {
      state_->add_seed(seeds_[e - m]);
    }
    return value();
  }

  const InfluenceState& state() const { return *state_; }

 private:
  double value() const {
    return model_.from_phi(adv_, state_->phi(),
                           state_->slots().size() + state_->seeds().size());
  }

  const RegretModel& model_;
  Index adv_;
  const InfluenceState& base_;
  std::span<const Index> slots_;
  std::span<const Index> seeds_;
  std::optional<InfluenceState> state_;
};

InfluenceState state_with(const InfluenceEstimator& est, std::span<const Index> slots,
                          std::span<const Index> seeds) {
  InfluenceState st(est);
  for (Index b : slots) st.add_slot(b);
  for (Index v : seeds) st.add_seed(v);
  return st;
}

std::vector<Index> above_half(std::span<const double> x, std::span<const Index> ids) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= 0.5) out.push_back(ids[i]);
  }
  return out;
}

std::vector<Index> ids_in_order(std::span<const double> x, std::span<const Index> ids) {
  std::vector<Index> out;
  for (Index i : descending_order(x)) out.push_back(ids[i]);
  return out;
}

// Index of the smallest value; the first one on ties.
std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

PgmResult pgm_allocate(const RegretModel& model, const PgmConfig& config) {
  config.validate();
  const auto& inst = model.instance();
  const auto& est = model.estimator();
  const auto& kern = kernels::active();
  const std::size_t n = inst.advertiser_count();

  PgmResult result;
  result.allocation = Allocation::empty(n);
  result.traces.resize(n);
  Pools pools = Pools::full(inst);
  const double global_radius =
      std::sqrt(static_cast<double>(inst.slot_count() + inst.seed_count()));
  const double sqrt_t = std::sqrt(static_cast<double>(config.iterations));
  const InfluenceState empty_state(est);

  for (std::size_t i = 0; i < n; ++i) {
    const auto adv = static_cast<Index>(i);
    const double budget = inst.advertisers()[i].payment;
    const auto slots = pools.free_slots();
    const auto seeds = pools.free_seeds();
    const std::size_t m = slots.size();
    const std::size_t r = seeds.size();
    if (m + r == 0 || !(budget > 0.0)) continue;

    auto& trace = result.traces[i];
    trace.lipschitz = config.lipschitz == PgmConfig::Lipschitz::kFixed
                          ? config.fixed_lipschitz
                          : estimate_lipschitz(model, adv, slots, seeds);
    const double radius = config.eta_scope == PgmConfig::EtaScope::kGlobal
                              ? global_radius
                              : std::sqrt(static_cast<double>(m + r));
    trace.eta = radius / (trace.lipschitz * sqrt_t);

    std::vector<double> x(m, config.init_value);
    std::vector<double> y(r, config.init_value);
    std::vector<double> joint(m + r);
    std::vector<double> best_x = x;
    std::vector<double> best_y = y;
    double best = 0.0;
    const double base_regret = model.empty_regret(adv);

    for (int t = 0; t <= config.iterations; ++t) {
      std::copy(x.begin(), x.end(), joint.begin());
      std::copy(y.begin(), y.end(), joint.begin() + static_cast<std::ptrdiff_t>(m));
      RegretChain joint_chain(model, adv, empty_state, slots, seeds);
      const double value = base_regret + lovasz_value(joint_chain, joint);
      trace.regret.push_back(value);
      if (t == 0 || value < best) {
        best = value;
        best_x = x;
        best_y = y;
      }
      trace.best.push_back(best);
      if (t == config.iterations) break;

      const auto s_t = above_half(x, slots);
      const auto p_t = above_half(y, seeds);
      const InfluenceState with_p = state_with(est, {}, p_t);
      const InfluenceState with_s = state_with(est, s_t, {});
      RegretChain slot_chain(model, adv, with_p, slots, {});
      RegretChain seed_chain(model, adv, with_s, {}, seeds);
      std::vector<double> gx = lovasz_subgradient(slot_chain, x);
      std::vector<double> gy = lovasz_subgradient(seed_chain, y);
      kern.descent_step(x.data(), gx.data(), m, trace.eta);
      kern.descent_step(y.data(), gy.data(), r, trace.eta);
    }

    // Rounding: best slot prefix with P = {y* >= 0.5}, then best seed prefix.
    const auto slot_order = ids_in_order(best_x, slots);
    const auto seed_order = ids_in_order(best_y, seeds);
    const auto p_star = above_half(best_y, seeds);
    std::vector<double> slot_regret;
    {
      InfluenceState st = state_with(est, {}, p_star);
      slot_regret.push_back(model.from_phi(adv, st.phi(), p_star.size()));
      for (std::size_t k = 0; k < m; ++k) {
        st.add_slot(slot_order[k]);
        slot_regret.push_back(model.from_phi(adv, st.phi(), p_star.size() + k + 1));
      }
    }
    std::size_t k_star = argmin(slot_regret);
    std::vector<double> seed_regret;
    {
      InfluenceState st =
          state_with(est, std::span(slot_order).first(k_star), {});
      seed_regret.push_back(model.from_phi(adv, st.phi(), k_star));
      for (std::size_t l = 0; l < r; ++l) {
        st.add_seed(seed_order[l]);
        seed_regret.push_back(model.from_phi(adv, st.phi(), k_star + l + 1));
      }
    }
    std::size_t l_star = argmin(seed_regret);

    // Budget: shrink the slot prefix, then the seed prefix, until affordable.
    const auto& seed_costs = inst.seed_costs();
    double spent = 0.0;
    std::size_t k = 0;
    for (; k < k_star; ++k) {
      const double c = inst.slots()[slot_order[k]].cost;
      if (spent + c > budget) break;
      spent += c;
    }
    std::size_t l = 0;
    for (; l < l_star; ++l) {
      const double c = seed_costs[seed_order[l]];
      if (spent + c > budget) break;
      spent += c;
    }

    std::vector<Index> chosen_slots(slot_order.begin(),
                                    slot_order.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Index> chosen_seeds(seed_order.begin(),
                                    seed_order.begin() + static_cast<std::ptrdiff_t>(l));
    if (chosen_slots.empty() && chosen_seeds.empty()) continue;
    if (model.advertiser_regret(adv, chosen_slots, chosen_seeds) > base_regret) continue;

    auto& out = result.allocation.per_advertiser[i];
    for (Index b : chosen_slots) pools.slot_free[b] = 0;
    for (Index v : chosen_seeds) pools.seed_free[v] = 0;
    out.slots = std::move(chosen_slots);
    out.seeds = std::move(chosen_seeds);
  }
  result.allocation.normalize();
  return result;
}

}  // namespace regalloc
