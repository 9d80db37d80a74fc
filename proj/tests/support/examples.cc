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

#include "examples.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.h"
#include "regalloc/abls.h"
#include "regalloc/baselines.h"
#include "regalloc/datagen.h"
#include "regalloc/edge_model.h"
#include "regalloc/feasibility.h"
#include "regalloc/influence.h"
#include "regalloc/ingest.h"
#include "regalloc/lovasz.h"
#include "regalloc/oracle.h"
#include "regalloc/pgm.h"
#include "regalloc/regret.h"

namespace regalloc::testing {

namespace fs = std::filesystem;

void CheckLog::near(double got, double want, double tol, const std::string& what) {
  if (!(std::fabs(got - want) <= tol)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), ": got %.15g, want %.15g", got, want);
    failures.push_back(what + buf);
  }
}

void CheckLog::that(bool ok, const std::string& what) {
  if (!ok) failures.push_back(what);
}

fs::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const fs::path p = fs::temp_directory_path() /
                     ("regalloc-" + tag + "-" + std::to_string(::getpid()) + "-" +
                      std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, std::string* out) {
  const fs::path log = scratch_dir("cli") / "stdout.txt";
  const std::string cmd =
      std::string(REGALLOC_CLI) + " " + args + " >" + log.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (out) *out = read_file(log);
  fs::remove_all(log.parent_path());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fixture_path(const std::string& name) { return fs::path(REGALLOC_FIXTURES) / name; }

namespace {

constexpr double kTol = 1e-9;

std::vector<Index> idx(std::initializer_list<Index> v) { return v; }

AdvertiserAllocation pick(std::vector<Index> slots, std::vector<Index> seeds) {
  return {std::move(slots), std::move(seeds)};
}

// F({0}) = 1, F({1}) = 1, F({0,1}) = 1.5.
double pair_fn(std::span<const Index> s) {
  if (s.empty()) return 0.0;
  return s.size() == 1 ? 1.0 : 1.5;
}

ProblemInstance load_dir(const fs::path& dir, std::int64_t horizon_end, std::int64_t delta) {
  auto paths = DatasetPaths::in_directory(dir);
  paths.horizon_start = 0;
  paths.horizon_end = horizon_end;
  paths.slot_duration = delta;
  ModelParams p;
  p.mode = InfluenceMode::kExact;
  return load_instance(paths, p);
}

std::string small_gen_config() {
  return "nodes = 30\nedges = 60\nbillboards = 5\nhorizon_s = 3600\n"
         "n_advertisers = 4\nmc_samples = 200\nT = 10\ntiming = off\n";
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string manifest_value(const fs::path& dir, const std::string& key) {
  for (const auto& line : lines_of(read_file(dir / "manifest.txt"))) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

std::vector<Example> build_catalog() {
  std::vector<Example> ex;
  auto add = [&](std::string module, std::string name, std::function<void(CheckLog&)> fn) {
    ex.push_back({std::move(module), std::move(name), std::move(fn)});
  };

  // ---- domain
  TinyOptions two;
  two.extra_advertisers.push_back({"a2", 4.0, 10.0});

  add("domain", "empty allocation is feasible", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    c.that(verify_feasible(inst, Allocation::empty(2)).ok, "ok flag");
  });
  add("domain", "shared slot is reported", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    IdAllocation a;
    a.by_advertiser["a1"].slots = {"b1"};
    a.by_advertiser["a2"].slots = {"b1"};
    const auto r = verify_feasible(inst, a);
    c.that(!r.ok, "not ok");
    c.that(r.violations.size() == 1 &&
               r.violations[0].find("b1") != std::string::npos &&
               r.violations[0].find("(a1,a2)") != std::string::npos,
           "violation names b1 and (a1,a2)");
  });
  add("domain", "disjoint allocation is feasible", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    IdAllocation a;
    a.by_advertiser["a1"] = {{"b1"}, {"u1"}};
    a.by_advertiser["a2"] = {{"b2"}, {"u2"}};
    c.that(verify_feasible(inst, a).ok, "ok flag");
  });
  add("domain", "unresolved id raises a structural error", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    IdAllocation a;
    a.by_advertiser["a1"].slots = {"nope"};
    bool named = false;
    try {
      verify_feasible(inst, a);
    } catch (const StructuralError& e) {
      named = std::string(e.what()).find("nope") != std::string::npos;
    }
    c.that(named, "error names the id");
  });
  add("domain", "allocation cost", [](CheckLog& c) {
    InstanceBuilder b;
    const Index bb = b.add_billboard({"B", {40.75, -73.99}, 10.0, 0.0});
    b.add_slot({"b1", bb, 0, 60, 6.0});
    b.add_slot({"b2", bb, 60, 60, 12.0});
    SocialGraph g;
    g.add_node("p1");
    b.set_graph(std::move(g));
    b.add_advertiser({"a1", 1.0, 100.0});
    b.set_seed_costs({50.0});
    const auto inst = b.build();
    c.near(allocation_cost(inst, "a1", {}, {}), 0.0, kTol, "empty");
    c.near(allocation_cost(inst, "a1", {"b1", "b2"}, {}), 18.0, kTol, "two slots");
    c.near(allocation_cost(inst, "a1", {}, {"p1"}), 50.0, kTol, "one seed");
  });

  // ---- ingest
  add("ingest", "horizon of two windows gives two slots", [](CheckLog& c) {
    const auto dir = scratch_dir("ingest");
    write_file(dir / "billboards.csv", "id,lat,lon,panel_size,cost\nb1,40.75,-73.99,10,1\n");
    write_file(dir / "trajectories.csv", "user_id,lat,lon,t_start,t_end\nu1,40.75,-73.99,0,10\n");
    write_file(dir / "edges.csv", "src,dst,weight\n");
    write_file(dir / "advertisers.csv", "id,demand,payment\na1,1,1\n");
    const auto inst = load_dir(dir, 3600, 1800);
    c.that(inst.slot_count() == 2, "slot count");
    fs::remove_all(dir);
  });
  add("ingest", "716 billboards over a day at one minute", [](CheckLog& c) {
    InstanceBuilder b;
    for (int k = 0; k < 716; ++k) {
      b.add_billboard({"B" + std::to_string(k), {40.75, -73.99}, 10.0, 1.0});
    }
    b.tile_slots(0, 86400, 60);
    c.that(b.build().slot_count() == 1031040, "slot count");
  });
  add("ingest", "empty edge file leaves isolated users", [](CheckLog& c) {
    const auto dir = scratch_dir("ingest");
    write_file(dir / "billboards.csv", "id,lat,lon,panel_size,cost\nb1,40.75,-73.99,10,1\n");
    write_file(dir / "trajectories.csv",
               "user_id,lat,lon,t_start,t_end\nu1,40.75,-73.99,0,10\n"
               "u2,40.75,-73.99,0,10\nu3,40.75,-73.99,0,10\n");
    write_file(dir / "edges.csv", "src,dst\n");
    write_file(dir / "advertisers.csv", "id,demand,payment\na1,1,1\n");
    const auto inst = load_dir(dir, 1800, 1800);
    c.that(inst.graph().node_count() == 3, "3 nodes");
    c.that(inst.graph().edge_count() == 0, "0 edges");
    fs::remove_all(dir);
  });

  auto exposure_case = [](double east_m, TimeInterval rec, std::int64_t slot_start) {
    ModelParams p;
    p.pi_meters = 100.0;
    InstanceBuilder b;
    b.set_params(p);
    const GeoPoint o{40.75, -73.99};
    const Index bb = b.add_billboard({"B", o, 50.0, 1.0});
    b.add_slot({"s", bb, slot_start, 10, 1.0});
    b.add_trajectory({{"u"}, offset_meters(o, east_m, 0.0), rec});
    return build_exposure_table(b.build());
  };
  add("ingest", "distance gate excludes a user 200 m away", [exposure_case](CheckLog& c) {
    c.that(exposure_case(200.0, {20, 25}, 20).per_slot[0].empty(), "no pair");
  });
  add("ingest", "touching intervals overlap", [exposure_case](CheckLog& c) {
    c.that(exposure_case(0.0, {10, 20}, 20).per_slot[0].size() == 1, "pair present");
  });
  add("ingest", "exposure probability is panel over A", [exposure_case](CheckLog& c) {
    const auto t = exposure_case(0.0, {20, 25}, 20);
    c.that(t.per_slot[0].size() == 1, "pair present");
    if (!t.per_slot[0].empty()) c.near(t.per_slot[0][0].probability, 0.5, kTol, "p");
  });

  // ---- influence
  add("influence", "slot influence", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    c.near(est.slot_influence({}), 0.0, kTol, "I(empty)");
    c.near(est.slot_influence(idx({0})), 1.0, kTol, "I({b1})");
    c.near(est.slot_influence(idx({0, 1})), 1.25, kTol, "I({b1,b2})");
  });
  add("influence", "cascade influence", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    c.near(est.ic_influence({}), 0.0, kTol, "I^G(empty)");
    c.near(est.ic_influence(idx({0})), 2.0, kTol, "edge weight 1 from u1");

    InstanceBuilder b;
    ModelParams p;
    p.mode = InfluenceMode::kExact;
    b.set_params(p);
    SocialGraph g;
    g.add_node("x");
    g.add_node("y");
    g.add_node("z");
    b.set_graph(std::move(g));
    const auto bare = b.build();
    InfluenceEstimator est2(bare);
    c.near(est2.ic_influence(idx({0, 1, 2})), 3.0, kTol, "edgeless, three seeds");
  });
  add("influence", "exact mode refuses a large graph", [](CheckLog& c) {
    ModelParams p;
    p.mode = InfluenceMode::kExact;
    p.exact_edge_limit = 3;
    InstanceBuilder b;
    b.set_params(p);
    SocialGraph g;
    for (int k = 0; k < 5; ++k) g.add_node("n" + std::to_string(k));
    for (Index k = 0; k < 4; ++k) g.add_edge(k, k + 1, 0.5);
    b.set_graph(std::move(g));
    const auto inst = b.build();
    bool thrown = false;
    try {
      InfluenceEstimator est(inst);
    } catch (const ModeError&) {
      thrown = true;
    }
    c.that(thrown, "mode error");
  });
  add("influence", "activation probability", [](CheckLog& c) {
    TinyOptions o;
    o.edge_weight = 0.3;
    const auto inst = tiny_instance(o);
    InfluenceEstimator est(inst);
    c.near(est.activation_prob("u1", "u1"), 1.0, kTol, "Pr'(v,v)");
    c.near(est.activation_prob("ghost", "u1"), 0.0, kTol, "non-node");
    c.near(est.activation_prob("u2", "u1"), 0.3, kTol, "single edge");
  });
  add("influence", "interaction effect", [](CheckLog& c) {
    TinyOptions z;
    z.rho = 0.0;
    const auto zero = tiny_instance(z);
    InfluenceEstimator ez(zero);
    double worst = 0.0;
    for (unsigned sm = 0; sm < 4; ++sm) {
      for (unsigned pm = 0; pm < 4; ++pm) {
        std::vector<Index> s, p;
        for (Index k = 0; k < 2; ++k) {
          if (sm >> k & 1) s.push_back(k);
          if (pm >> k & 1) p.push_back(k);
        }
        worst = std::max(worst, std::fabs(ez.interaction_effect(s, p)));
      }
    }
    c.near(worst, 0.0, kTol, "rho = 0");
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    c.near(est.interaction_effect({}, idx({0, 1})), 0.0, kTol, "S empty");
    c.near(est.interaction_effect(idx({0}), idx({0})), 0.5, kTol, "Psi({b1},{u1})");
  });
  add("influence", "combined influence", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    c.near(est.combined({}, {}), 0.0, kTol, "Phi(empty)");
    c.near(est.combined(idx({0}), idx({0})), 3.5, kTol, "Phi({b1},{u1})");
    c.near(est.combined(idx({0, 1}), idx({0, 1})), 4.5, kTol, "Phi(all)");
  });
  add("influence", "epsilon bound", [](CheckLog& c) {
    TinyOptions z;
    z.rho = 0.0;
    const auto zero = tiny_instance(z);
    InfluenceEstimator ez(zero);
    c.near(ez.epsilon_bound(), 0.0, kTol, "rho = 0");
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    c.near(est.epsilon_bound(), 1.0, kTol, "tiny");
    InstanceBuilder b;
    const Index bb = b.add_billboard({"B", {40.75, -73.99}, 50.0, 1.0});
    b.add_slot({"s", bb, 0, 60, 1.0});
    const auto bare = b.build();
    InfluenceEstimator eb(bare);
    c.near(eb.epsilon_bound(), 0.0, kTol, "empty graph");
  });

  // ---- regret
  add("regret", "advertiser regret", [](CheckLog& c) {
    c.near(regret_value(10, 4, 0.5, 0.0, 0.0, 0), 10.0, kTol, "empty, delta 0");
    c.near(regret_value(10, 4, 1.0, 0.0, 4.0, 3), 0.0, kTol, "satisfied, gamma 1");
    c.near(regret_value(10, 4, 1.0, 0.0, 7.0, 3), 0.0, kTol, "oversatisfied, gamma 1");
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.near(m.advertiser_regret(0, idx({0}), idx({0})), 5.625, kTol, "tiny Phi 3.5");
    c.near(regret_value(10, 4, 0.5, 0.5, 1.0, 1), 8.75 + 0.5 * std::log(2.0), kTol,
           "delta 0.5");
  });
  add("regret", "total regret", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.near(m.total_regret(Allocation::empty(2)), 20.0, kTol, "empty");
    Allocation a = Allocation::empty(2);
    a.per_advertiser[0] = pick({0}, {0});
    c.near(m.total_regret(a), 15.625, kTol, "5.625 + 10");
    const auto one = tiny_instance();
    InfluenceEstimator e1(one);
    RegretModel m1(e1);
    Allocation b = Allocation::empty(1);
    b.per_advertiser[0] = pick({0}, {0});
    c.near(m1.total_regret(b), m1.advertiser_regret(0, idx({0}), idx({0})), kTol,
           "single advertiser");
    Allocation bad = Allocation::empty(2);
    bad.per_advertiser[0] = pick({0}, {});
    bad.per_advertiser[1] = pick({0}, {});
    bool thrown = false;
    try {
      m.total_regret(bad);
    } catch (const FeasibilityError&) {
      thrown = true;
    }
    c.that(thrown, "infeasible allocation raises");
  });
  add("regret", "satisfied count", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.that(m.satisfied_count(Allocation::empty(1)) == 0, "empty");
    Allocation full = Allocation::empty(1);
    full.per_advertiser[0] = pick({0, 1}, {0, 1});
    c.that(m.satisfied_count(full) == 1, "Phi 4.5 >= 4");
    TinyOptions exact;
    exact.demand = 3.5;
    const auto inst2 = tiny_instance(exact);
    InfluenceEstimator e2(inst2);
    RegretModel m2(e2);
    Allocation a = Allocation::empty(1);
    a.per_advertiser[0] = pick({0}, {0});
    c.that(m2.satisfied_count(a) == 1, "Phi equal to demand");
  });

  // ---- lovasz
  add("lovasz", "extension value", [](CheckLog& c) {
    SetFunctionChain f(pair_fn);
    const std::vector<double> ind{1.0, 0.0};
    c.near(lovasz_value(f, ind), 1.0, kTol, "indicator {0}");
    const std::vector<double> both{1.0, 1.0};
    c.near(lovasz_value(f, both), 1.5, kTol, "indicator {0,1}");
    const std::vector<double> s{0.7, 0.3};
    c.near(lovasz_value(f, s), 0.85, kTol, "(0.7,0.3)");
    const std::vector<double> z{0.0, 0.0};
    c.near(lovasz_value(f, z), 0.0, kTol, "zeros");
  });
  add("lovasz", "subgradient", [](CheckLog& c) {
    SetFunctionChain f(pair_fn);
    const std::vector<double> s{0.7, 0.3};
    const auto k = lovasz_subgradient(f, s);
    c.near(k[0], 1.0, kTol, "k0");
    c.near(k[1], 0.5, kTol, "k1");
    const std::vector<double> w{0.3, 2.0, -1.0};
    SetFunctionChain mod([w](std::span<const Index> set) {
      double t = 0.0;
      for (Index e : set) t += w[e];
      return t;
    });
    const std::vector<double> s3{0.2, 0.9, 0.5};
    const auto km = lovasz_subgradient(mod, s3);
    for (int i = 0; i < 3; ++i) c.near(km[i], w[i], kTol, "modular weight");
    const std::vector<double> eq{0.4, 0.4};
    SetFunctionChain g([](std::span<const Index> set) {
      // Order-revealing: the first element added contributes 1, later ones 0.25.
      return set.empty() ? 0.0 : 1.0 + 0.25 * static_cast<double>(set.size() - 1);
    });
    const auto ke = lovasz_subgradient(g, eq);
    c.near(ke[0], 1.0, kTol, "tie: index 0 first");
    c.near(ke[1], 0.25, kTol, "tie: index 1 second");
  });
  add("lovasz", "box projection", [](CheckLog& c) {
    std::vector<double> a{-0.2, 0.5, 1.3};
    project_box(a);
    c.near(a[0], 0.0, 0.0, "clip low");
    c.near(a[1], 0.5, 0.0, "keep");
    c.near(a[2], 1.0, 0.0, "clip high");
    std::vector<double> b{0.1, 0.9, 0.0, 1.0};
    const auto before = b;
    project_box(b);
    c.that(b == before, "inside box unchanged");
    std::vector<double> n{-1.0, -0.5, -3.0};
    project_box(n);
    c.that(n == std::vector<double>(3, 0.0), "all negative to zeros");
  });

  // ---- pgm
  add("pgm", "no descent signal gives the empty allocation", [](CheckLog& c) {
    ModelParams p;
    p.rho = 0.0;
    p.mode = InfluenceMode::kExact;
    InstanceBuilder b;
    b.set_params(p);
    const Index bb = b.add_billboard({"B", {40.75, -73.99}, 50.0, 1.0});
    b.add_slot({"s", bb, 0, 60, 1.0});
    b.add_advertiser({"a1", 3.0, 7.0});
    b.add_advertiser({"a2", 2.0, 4.0});
    const auto inst = b.build();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    PgmConfig cfg;
    cfg.iterations = 1;
    const auto r = pgm_allocate(m, cfg);
    c.that(r.allocation.per_advertiser[0].empty() && r.allocation.per_advertiser[1].empty(),
           "empty allocation");
    c.near(m.total_regret(r.allocation), 11.0, kTol, "sum of payments");
  });
  add("pgm", "tiny instance reaches the optimum", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    PgmConfig cfg;
    cfg.iterations = 50;
    const auto r = pgm_allocate(m, cfg);
    c.near(m.total_regret(r.allocation), 5.0, kTol, "total regret");
  });
  add("pgm", "second advertiser finds the pools empty", [](CheckLog& c) {
    ModelParams p;
    p.mode = InfluenceMode::kExact;
    p.delta = 0.0;
    InstanceBuilder b;
    b.set_params(p);
    const GeoPoint o{40.75, -73.99};
    const Index bb = b.add_billboard({"B", o, 50.0, 1.0});
    b.add_slot({"s", bb, 0, 1800, 1.0});
    b.add_trajectory({{"u1"}, o, {0, 10}});
    b.add_advertiser({"a1", 100.0, 10.0});
    b.add_advertiser({"a2", 1.0, 7.0});
    b.set_seed_costs({1.0});
    const auto inst = b.build();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    PgmConfig cfg;
    cfg.iterations = 20;
    const auto r = pgm_allocate(m, cfg);
    const auto& a0 = r.allocation.per_advertiser[0];
    c.that(a0.slots.size() == 1 && a0.seeds.size() == 1, "first takes everything");
    c.that(r.allocation.per_advertiser[1].empty(), "second empty");
    c.near(m.total_regret(r.allocation),
           m.advertiser_regret(0, a0.slots, a0.seeds) + 7.0, kTol, "second pays K2");
  });
  add("pgm", "Lipschitz estimate", [](CheckLog& c) {
    TinyOptions flat;
    flat.gamma = 0.0;
    const auto f = tiny_instance(flat);
    InfluenceEstimator ef(f);
    RegretModel mf(ef);
    c.near(estimate_lipschitz(mf, 0, idx({0, 1}), idx({0, 1})), 1e-9, 1e-15, "floor");
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.near(estimate_lipschitz(m, 0, idx({0, 1}), idx({0, 1})), 2.5, kTol, "tiny");
    PgmConfig cfg;
    cfg.iterations = 3;
    cfg.lipschitz = PgmConfig::Lipschitz::kFixed;
    cfg.fixed_lipschitz = 3.0;
    const auto r = pgm_allocate(m, cfg);
    c.near(r.traces[0].lipschitz, 3.0, 0.0, "fixed override");
  });

  // ---- abls
  add("abls", "huge threshold allocates nothing", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    AblsConfig cfg;
    cfg.epsilon = 1e9;
    const auto r = abls_allocate(m, cfg);
    c.near(m.total_regret(r.allocation), 20.0, kTol, "sum of payments");
    c.that(r.steps.empty(), "no commits");
  });
  add("abls", "tiny first pick and final regret", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    AblsConfig cfg;
    const auto r = abls_allocate(m, cfg);
    c.that(!r.steps.empty() && r.steps[0].is_slot && r.steps[0].element == 0,
           "first commit is b1");
    if (!r.steps.empty()) c.near(r.steps[0].ratio, 1.25, kTol, "first ratio");
    c.near(m.total_regret(r.allocation), 5.0, kTol, "final regret");
    c.that(m.phis(r.allocation)[0] >= 4.0, "demand met");
  });
  add("abls", "marginal ratio", [](CheckLog& c) {
    TinyOptions dead;
    dead.dead_slot = true;
    const auto inst = tiny_instance(dead);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    InfluenceState st(est);
    c.that(!marginal_ratio(m, 0, st, true, 2).has_value(), "dead slot undefined");
    const auto r = marginal_ratio(m, 0, st, true, 0);
    c.that(r.has_value(), "b1 defined");
    if (r) c.near(*r, 1.25, kTol, "b1 ratio");
    TinyOptions costly;
    costly.delta = 1.0;
    const auto inst2 = tiny_instance(costly);
    InfluenceEstimator e2(inst2);
    RegretModel m2(e2);
    InfluenceState s2(e2);
    const auto neg = marginal_ratio(m2, 0, s2, true, 1);
    c.that(neg.has_value() && *neg < 0.0, "b2 ratio negative under delta 1");
  });

  // ---- baselines
  add("baselines", "budget below every cost", [](CheckLog& c) {
    TinyOptions poor;
    poor.payment = 0.5;
    const auto inst = tiny_instance(poor);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.that(random_allocate(m, 7).per_advertiser[0].empty(), "random empty");
    c.that(topk_allocate(m).per_advertiser[0].empty(), "topk empty");
  });
  add("baselines", "random is deterministic per seed", [two](CheckLog& c) {
    const auto inst = tiny_instance(two);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    const auto a = random_allocate(m, 11);
    const auto b = random_allocate(m, 11);
    bool same = true;
    for (std::size_t i = 0; i < 2; ++i) {
      same = same && a.per_advertiser[i].slots == b.per_advertiser[i].slots &&
             a.per_advertiser[i].seeds == b.per_advertiser[i].seeds;
    }
    c.that(same, "identical");
  });
  add("baselines", "unreachable demand uses every affordable element", [](CheckLog& c) {
    TinyOptions big;
    big.demand = 100.0;
    const auto inst = tiny_instance(big);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    const auto a = random_allocate(m, 3).per_advertiser[0];
    c.that(a.slots.size() == 2 && a.seeds.size() == 2, "random takes all four");
    const auto t = topk_allocate(m).per_advertiser[0];
    c.that(t.slots.size() == 2 && t.seeds.size() == 2, "topk takes all four");
  });
  add("baselines", "top-k picks u1 first", [](CheckLog& c) {
    TinyOptions o;
    o.demand = 2.0;
    const auto inst = tiny_instance(o);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    const auto a = topk_allocate(m).per_advertiser[0];
    c.that(a.slots.empty() && a.seeds == std::vector<Index>{0}, "only u1");
  });
  add("baselines", "no influential element", [](CheckLog& c) {
    InstanceBuilder b;
    const Index bb = b.add_billboard({"B", {40.75, -73.99}, 50.0, 1.0});
    b.add_slot({"s", bb, 0, 60, 1.0});
    b.add_advertiser({"a1", 1.0, 5.0});
    const auto inst = b.build();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.that(topk_allocate(m).per_advertiser[0].empty(), "empty");
  });
  add("baselines", "competing advertisers stay disjoint", [](CheckLog& c) {
    TinyOptions o;
    o.demand = 100.0;
    o.extra_advertisers.push_back({"a2", 100.0, 10.0});
    const auto inst = tiny_instance(o);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    const auto t = topk_allocate(m);
    c.that(verify_feasible(inst, t).ok, "topk feasible");
    c.that(t.per_advertiser[1].empty(), "second gets nothing");
    c.that(verify_feasible(inst, random_allocate(m, 5)).ok, "random feasible");
  });

  // ---- oracle
  add("oracle", "empty pools", [](CheckLog& c) {
    ModelParams p;
    p.mode = InfluenceMode::kExact;
    InstanceBuilder b;
    b.set_params(p);
    b.add_advertiser({"a1", 2.0, 9.0});
    const auto inst = b.build();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.near(brute_force_opt(m).regret, 9.0, kTol, "OPT = K");
  });
  add("oracle", "tiny optimum", [](CheckLog& c) {
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    c.near(brute_force_opt(m).regret, 5.0, kTol, "OPT");
  });
  add("oracle", "no unsatisfied penalty", [two](CheckLog& c) {
    TinyOptions o = two;
    o.gamma = 0.0;
    o.delta = 0.5;
    const auto inst = tiny_instance(o);
    InfluenceEstimator est(inst);
    RegretModel m(est);
    const auto r = brute_force_opt(m);
    c.near(r.regret, 20.0, kTol, "OPT = sum K");
    c.that(r.allocation.per_advertiser[0].empty() && r.allocation.per_advertiser[1].empty(),
           "empty minimizer");
  });
  add("oracle", "oversize instance is refused", [](CheckLog& c) {
    ModelParams p;
    p.mode = InfluenceMode::kExact;
    InstanceBuilder b;
    b.set_params(p);
    const Index bb = b.add_billboard({"B", {40.75, -73.99}, 50.0, 1.0});
    for (int k = 0; k < 7; ++k) b.add_slot({"s" + std::to_string(k), bb, k * 60, 60, 1.0});
    b.add_advertiser({"a1", 1.0, 1.0});
    const auto inst = b.build();
    InfluenceEstimator est(inst);
    RegretModel m(est);
    bool refused = false;
    try {
      brute_force_opt(m);
    } catch (const OracleRefusal&) {
      refused = true;
    }
    c.that(refused, "refusal");
  });
  add("oracle", "violation measurements", [](CheckLog& c) {
    const auto inst = random_tiny_instance(42);
    InfluenceEstimator est(inst);
    const std::size_t m = inst.slot_count(), r = inst.seed_count();
    const auto slot_only = [&](std::uint32_t sm, std::uint32_t) {
      std::vector<Index> s;
      for (std::size_t k = 0; k < m; ++k) {
        if (sm >> k & 1) s.push_back(static_cast<Index>(k));
      }
      return est.slot_influence(s);
    };
    c.near(measure_bisubmodularity_violation(m, r, slot_only), 0.0, kTol, "slot-only");
    TinyOptions z;
    z.rho = 0.0;
    const auto zero = tiny_instance(z);
    InfluenceEstimator ez(zero);
    c.near(phi_violation(ez), 0.0, kTol, "rho = 0");
    const auto tiny = tiny_instance();
    InfluenceEstimator et(tiny);
    c.that(phi_violation(et) <= et.epsilon_bound() + kTol, "tiny within bound");
  });

  // ---- datagen
  add("datagen", "influence supply", [](CheckLog& c) {
    const auto empty = InstanceBuilder().build();
    InfluenceEstimator e0(empty);
    c.near(influence_supply(e0), 0.0, kTol, "empty");
    const auto inst = tiny_instance();
    InfluenceEstimator est(inst);
    c.near(influence_supply(est), 5.5, kTol, "tiny");
    InstanceBuilder b;
    SocialGraph g;
    for (int k = 0; k < 4; ++k) g.add_node("n" + std::to_string(k));
    b.set_graph(std::move(g));
    const auto bare = b.build();
    InfluenceEstimator eb(bare);
    c.near(influence_supply(eb), 4.0, kTol, "node count");
  });
  add("datagen", "advertiser formulas", [](CheckLog& c) {
    GenConfig g;
    g.n_advertisers = 1;
    g.omega_min = g.omega_max = 1.0;
    g.beta_min = g.beta_max = 1.0;
    g.lambda = 0.05;
    const auto a = generate_advertisers(100.0, g);
    c.near(a[0].demand, 5.0, 0.0, "demand");
    c.near(a[0].payment, 5.0, 0.0, "payment");
    g.lambda = 0.001;
    c.near(generate_advertisers(100.0, g)[0].demand, 1.0, 0.0, "clamp");
    GenConfig r;
    r.n_advertisers = 8;
    r.rng_seed = 9;
    const auto x = generate_advertisers(321.0, r), y = generate_advertisers(321.0, r);
    bool same = x.size() == y.size();
    for (std::size_t i = 0; same && i < x.size(); ++i) {
      same = x[i].demand == y[i].demand && x[i].payment == y[i].payment;
    }
    c.that(same, "deterministic");
  });
  add("datagen", "edge models", [](CheckLog& c) {
    SocialGraph g;
    for (int k = 0; k < 6; ++k) g.add_node("n" + std::to_string(k));
    for (Index k = 1; k < 6; ++k) g.add_edge(0, k, 0.5);
    SocialGraph u = g;
    apply_edge_model(u, EdgeModel::parse("uniform:0.1"), 1);
    bool all = true;
    for (const auto& e : u.edges()) all = all && e.forward == 0.1 && e.symmetric;
    c.that(all, "uniform 0.1");
    SocialGraph t = g;
    apply_edge_model(t, EdgeModel::parse("trivalency"), 1);
    bool support = true;
    for (const auto& e : t.edges()) {
      support = support && (e.forward == 0.1 || e.forward == 0.01 || e.forward == 0.001);
    }
    c.that(support, "trivalency support");
    SocialGraph w;
    for (int k = 0; k < 5; ++k) w.add_node("m" + std::to_string(k));
    for (Index k = 1; k < 5; ++k) w.add_edge(k, 0, 0.5);
    apply_edge_model(w, EdgeModel::parse("wc"), 1);
    bool quarter = true;
    for (const auto& e : w.edges()) quarter = quarter && e.forward == 0.25 && e.backward == 1.0;
    c.that(quarter, "weighted cascade into a degree-4 node");
  });
  add("datagen", "instance generation", [](CheckLog& c) {
    GenConfig g;
    g.nodes = 30;
    g.edges = 60;
    g.billboards = 5;
    g.horizon_s = 3600;
    g.params.mc_samples = 200;
    g.n_advertisers = 0;
    c.that(generate_instance(g).advertisers().empty(), "no advertisers");
    g.n_advertisers = 6;
    g.alpha = 1.0;
    g.rng_seed = 4;
    const auto inst = generate_instance(g);
    InfluenceEstimator est(inst);
    double total = 0.0;
    for (const auto& a : inst.advertisers()) total += a.demand;
    c.that(std::fabs(total - influence_supply(est)) <= 6.0, "alpha identity");
    const auto d1 = scratch_dir("gen"), d2 = scratch_dir("gen");
    write_instance_csv(generate_instance(g), d1);
    write_instance_csv(generate_instance(g), d2);
    bool same = true;
    for (const char* f : {"billboards.csv", "trajectories.csv", "edges.csv", "advertisers.csv"}) {
      same = same && read_file(d1 / f) == read_file(d2 / f);
    }
    c.that(same, "byte-identical files");
    fs::remove_all(d1);
    fs::remove_all(d2);
  });

  // ---- cli
  add("cli", "gen", [](CheckLog& c) {
    const auto dir = scratch_dir("cli-gen");
    write_file(dir / "c.cfg", small_gen_config());
    write_file(dir / "bad.cfg", "alpha = 0\n");
    const auto cfg = (dir / "c.cfg").string();
    c.that(run_cli("gen --config " + cfg + " --seed 3 --out " + (dir / "x").string()) == 0,
           "exit 0");
    c.that(run_cli("gen --config " + cfg + " --seed 3 --out " + (dir / "y").string()) == 0,
           "exit 0 again");
    const auto fx = manifest_value(dir / "x", "fingerprint");
    c.that(!fx.empty() && fx == manifest_value(dir / "y", "fingerprint"), "same fingerprint");
    c.that(run_cli("gen --config " + (dir / "bad.cfg").string() + " --out " +
                   (dir / "z").string()) == 2,
           "alpha 0 exits 2");
    fs::remove_all(dir);
  });
  add("cli", "run", [](CheckLog& c) {
    const auto dir = scratch_dir("cli-run");
    const auto tiny = fixture_path("tiny").string();
    const auto cfg = fixture_path("tiny.cfg").string();
    std::string o1, o2, o3;
    c.that(run_cli("run --instance " + tiny + " --algo random --seed 5 --config " + cfg +
                   " --out " + (dir / "r1").string(), &o1) == 0, "random exit 0");
    run_cli("run --instance " + tiny + " --algo random --seed 5 --config " + cfg + " --out " +
            (dir / "r2").string(), &o2);
    c.that(!o1.empty() && read_file(dir / "r1" / "results.csv") ==
                              read_file(dir / "r2" / "results.csv"),
           "identical random rows");
    c.that(run_cli("run --instance " + tiny + " --algo abls --config " + cfg + " --out " +
                   (dir / "a").string(), &o3) == 0, "abls exit 0");
    const auto cells = split_csv(lines_of(o3).empty() ? "" : lines_of(o3).back());
    c.that(cells.size() == 16 && cells[0] == "abls" && cells[11] == "5" && cells[15] == "ok",
           "abls row has total_regret 5");
    c.that(run_cli("run --instance " + tiny + " --algo magic --config " + cfg + " --out " +
                   (dir / "m").string()) == 2, "unknown algo exits 2");
    fs::remove_all(dir);
  });
  add("cli", "sweep", [](CheckLog& c) {
    const auto dir = scratch_dir("cli-sweep");
    write_file(dir / "grid.cfg", small_gen_config() +
                                     "n_advertisers = 20\nalpha = 40%, 60%, 80%, 100%, 120%\n"
                                     "lambda = 5%\nalgos = abls, topk\nseeds = 1\n");
    c.that(run_cli("sweep --config " + (dir / "grid.cfg").string() + " --out " +
                   (dir / "g").string()) == 0, "grid exit 0");
    std::map<std::string, int> per_algo;
    for (const auto& line : lines_of(read_file(dir / "g" / "results.csv"))) {
      per_algo[split_csv(line)[0]]++;
    }
    c.that(per_algo["abls"] == 5 && per_algo["topk"] == 5, "5 rows per algo");

    write_file(dir / "one.cfg", small_gen_config() + "algos = random\nseeds = 2\n");
    run_cli("sweep --config " + (dir / "one.cfg").string() + " --out " + (dir / "s").string());
    run_cli("gen --config " + (dir / "one.cfg").string() + " --out " + (dir / "i").string());
    run_cli("run --instance " + (dir / "i").string() + " --algo random --config " +
            (dir / "one.cfg").string() + " --out " + (dir / "r").string());
    const auto sweep_rows = lines_of(read_file(dir / "s" / "results.csv"));
    const auto run_rows = lines_of(read_file(dir / "r" / "results.csv"));
    c.that(sweep_rows.size() == 2 && run_rows.size() == 2 && sweep_rows[1] == run_rows[1],
           "single cell matches run");

    write_file(dir / "five.cfg", small_gen_config() + "algos = topk\nseeds = 1,2,3,4,5\n");
    run_cli("sweep --config " + (dir / "five.cfg").string() + " --out " + (dir / "f").string());
    const auto rows = lines_of(read_file(dir / "f" / "results.csv"));
    std::vector<double> regrets;
    for (std::size_t i = 1; i < rows.size(); ++i) regrets.push_back(std::stod(split_csv(rows[i])[11]));
    double mean = 0.0, var = 0.0;
    for (double r : regrets) mean += r / static_cast<double>(regrets.size());
    for (double r : regrets) var += (r - mean) * (r - mean) / (static_cast<double>(regrets.size()) - 1.0);
    const auto summary = lines_of(read_file(dir / "f" / "summary.csv"));
    bool found = false;
    if (summary.size() == 2 && regrets.size() == 5) {
      const auto head = split_csv(summary[0]);
      const auto row = split_csv(summary[1]);
      for (std::size_t k = 0; k + 1 < head.size() && k + 1 < row.size(); ++k) {
        if (head[k] == "mean_regret" && head[k + 1] == "std_regret") {
          found = std::fabs(std::stod(row[k]) - mean) <= 1e-6 &&
                  std::fabs(std::stod(row[k + 1]) - std::sqrt(var)) <= 1e-6;
        }
      }
    }
    c.that(found, "summary mean and std recompute");
    fs::remove_all(dir);
  });
  add("cli", "oracle", [](CheckLog& c) {
    const auto dir = scratch_dir("cli-oracle");
    std::string out;
    c.that(run_cli("oracle --instance " + fixture_path("tiny").string() + " --config " +
                   fixture_path("tiny.cfg").string(), &out) == 0, "tiny exit 0");
    c.that(out.find("opt_regret 5\n") != std::string::npos, "tiny OPT 5");
    const auto empty = dir / "empty";
    fs::create_directories(empty);
    write_file(empty / "billboards.csv", "id,lat,lon,panel_size,cost\n");
    write_file(empty / "trajectories.csv", "user_id,lat,lon,t_start,t_end\n");
    write_file(empty / "edges.csv", "src,dst,weight\n");
    write_file(empty / "advertisers.csv", "id,demand,payment\na1,3,7\na2,2,4\n");
    write_file(empty / "manifest.txt", "horizon_start=0\nhorizon_end=1800\nslot_duration=1800\n");
    out.clear();
    c.that(run_cli("oracle --instance " + empty.string(), &out) == 0, "empty exit 0");
    c.that(out.find("opt_regret 11\n") != std::string::npos, "empty pools OPT = sum K");
    write_file(dir / "c.cfg", small_gen_config());
    run_cli("gen --config " + (dir / "c.cfg").string() + " --out " + (dir / "big").string());
    c.that(run_cli("oracle --instance " + (dir / "big").string()) == 4, "oversize exits 4");
    fs::remove_all(dir);
  });

  return ex;
}

}  // namespace

const std::vector<Example>& example_catalog() {
  static const std::vector<Example> catalog = build_catalog();
  return catalog;
}

}  // namespace regalloc::testing
