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

#include "regalloc/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "regalloc/abls.h"
#include "regalloc/baselines.h"
#include "regalloc/feasibility.h"
#include "regalloc/ingest.h"
#include "regalloc/pgm.h"

namespace regalloc {
namespace {

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

std::string num(double x) { return fmt("%.12g", x); }

std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

class Fnv1a {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ull;
    }
    h_ ^= 0xff;  // field separator
    h_ *= 0x100000001b3ull;
  }
  void add(double x) { add(fmt("%.17g", x)); }
  void add(std::int64_t x) { add(std::to_string(x)); }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace

std::string instance_fingerprint(const ProblemInstance& inst) {
  Fnv1a h;
  h.add("billboards");
  for (const auto& b : inst.billboards()) {
    h.add(b.id);
    h.add(b.location.lat);
    h.add(b.location.lon);
    h.add(b.panel_size);
    h.add(b.base_cost);
  }
  h.add("slots");
  for (const auto& s : inst.slots()) {
    h.add(s.id);
    h.add(s.start);
    h.add(s.duration);
    h.add(s.cost);
  }
  h.add("trajectories");
  for (const auto& r : inst.trajectories()) {
    for (const auto& u : r.user_ids) h.add(u);
    h.add(r.location.lat);
    h.add(r.location.lon);
    h.add(r.interval.start);
    h.add(r.interval.end);
  }
  h.add("edges");
  const auto& ids = inst.graph().node_ids();
  for (const auto& e : inst.graph().edges()) {
    h.add(ids[e.u]);
    h.add(ids[e.v]);
    h.add(e.forward);
    h.add(e.backward);
    h.add(static_cast<std::int64_t>(e.symmetric));
  }
  h.add("advertisers");
  for (const auto& a : inst.advertisers()) {
    h.add(a.id);
    h.add(a.demand);
    h.add(a.payment);
  }
  return h.hex();
}

RunReport run_algorithm(const ProblemInstance& instance, const std::string& algo,
                        const RunConfig& config, std::uint64_t seed) {
  RunReport rep;
  rep.algo = algo;
  rep.alpha = config.gen.alpha;
  rep.lambda = config.gen.lambda;
  rep.n_advertisers = instance.advertiser_count();
  rep.gamma = instance.params().gamma;
  rep.delta = instance.params().delta;
  rep.epsilon = config.abls.epsilon;
  rep.rho = instance.params().rho;
  rep.pi_m = instance.params().pi_meters;
  rep.T = config.pgm.iterations;
  rep.seed = seed;
  rep.fingerprint = instance_fingerprint(instance);

  const InfluenceEstimator est(instance);
  const RegretModel model(est);
  const auto t0 = std::chrono::steady_clock::now();
  if (algo == "pgm") {
    PgmConfig pc = config.pgm;
    pc.rng_seed = seed;
    rep.allocation = pgm_allocate(model, pc).allocation;
  } else if (algo == "abls") {
    rep.allocation = abls_allocate(model, config.abls).allocation;
  } else if (algo == "random") {
    rep.allocation = random_allocate(model, seed);
  } else if (algo == "topk") {
    rep.allocation = topk_allocate(model);
  } else {
    throw ConfigError("unknown algorithm '" + algo + "'");
  }
  const auto t1 = std::chrono::steady_clock::now();
  rep.runtime_ms =
      config.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;

  const auto feas = verify_feasible(instance, rep.allocation);
  if (!feas.ok) throw InvariantBreach(algo + " produced an infeasible allocation: " +
                                      feas.violations.front());
  const auto over = budget_violations(instance, rep.allocation);
  if (!over.empty()) throw InvariantBreach(algo + " exceeded a budget: " + over.front());

  rep.phi = model.phis(rep.allocation);
  for (std::size_t i = 0; i < rep.allocation.per_advertiser.size(); ++i) {
    const auto& a = rep.allocation.per_advertiser[i];
    rep.regret.push_back(model.from_phi(static_cast<Index>(i), rep.phi[i], a.size()));
    if (rep.phi[i] >= instance.advertisers()[i].demand) ++rep.satisfied;
  }
  for (double r : rep.regret) rep.total_regret += r;
  return rep;
}

std::string results_row(const RunReport& r) {
  std::ostringstream o;
  o << r.algo << ',' << num(r.alpha) << ',' << num(r.lambda) << ',' << r.n_advertisers
    << ',' << num(r.gamma) << ',' << num(r.delta) << ',' << num(r.epsilon) << ','
    << num(r.rho) << ',' << num(r.pi_m) << ',' << r.T << ',' << r.seed << ','
    << num(r.total_regret) << ',' << r.satisfied << ',' << fmt("%.3f", r.runtime_ms)
    << ',' << r.fingerprint << ',' << csv_safe(r.status);
  return o.str();
}

void append_results(const std::filesystem::path& csv, const RunReport& report) {
  const bool fresh = !std::filesystem::exists(csv) || std::filesystem::file_size(csv) == 0;
  std::ofstream out(csv, std::ios::app);
  if (!out) throw ConfigError("cannot write " + csv.string());
  if (fresh) out << kResultsHeader << '\n';
  out << results_row(report) << '\n';
}

std::string allocation_json(const ProblemInstance& instance, const RunReport& report) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  const auto ids = instance.to_ids(report.allocation);
  for (std::size_t i = 0; i < instance.advertiser_count(); ++i) {
    const auto& id = instance.advertisers()[i].id;
    const auto& entry = ids.by_advertiser.at(id);
    doc[id] = {{"slots", entry.slots},
               {"seeds", entry.seeds},
               {"phi", report.phi.at(i)},
               {"regret", report.regret.at(i)}};
  }
  return doc.dump(2) + "\n";
}

void write_dataset(const ProblemInstance& instance, const InstanceManifest& m,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_instance_csv(instance, dir);
  std::ofstream out(dir / "manifest.txt");
  if (!out) throw ConfigError("cannot write manifest in " + dir.string());
  out << "generator=" << m.generator << '\n'
      << "fingerprint=" << m.fingerprint << '\n'
      << "horizon_start=" << m.horizon_start << '\n'
      << "horizon_end=" << m.horizon_end << '\n'
      << "slot_duration=" << m.slot_duration << '\n'
      << "A=" << fmt("%.17g", m.panel_normalizer) << '\n'
      << "edge_model=" << m.edge_model << '\n'
      << "alpha=" << fmt("%.17g", m.alpha) << '\n'
      << "lambda=" << fmt("%.17g", m.lambda) << '\n';
}

InstanceManifest read_manifest(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.txt");
  if (!in) throw ConfigError("missing manifest.txt in " + dir.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("bad manifest line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError("manifest lacks '" + k + "'");
    return it->second;
  };
  InstanceManifest m;
  try {
    m.generator = kv.count("generator") ? kv["generator"] : "";
    m.fingerprint = kv.count("fingerprint") ? kv["fingerprint"] : "";
    m.horizon_start = std::stoll(need("horizon_start"));
    m.horizon_end = std::stoll(need("horizon_end"));
    m.slot_duration = std::stoll(need("slot_duration"));
    m.panel_normalizer = kv.count("A") ? std::stod(kv["A"]) : 100.0;
    m.edge_model = kv.count("edge_model") ? kv["edge_model"] : "uniform";
    m.alpha = kv.count("alpha") ? std::stod(kv["alpha"]) : 0.0;
    m.lambda = kv.count("lambda") ? std::stod(kv["lambda"]) : 0.0;
  } catch (const std::logic_error&) {
    throw ConfigError("malformed number in manifest.txt");
  }
  return m;
}

ProblemInstance load_dataset(const std::filesystem::path& dir, ModelParams params) {
  const auto m = read_manifest(dir);
  auto paths = DatasetPaths::in_directory(dir);
  paths.horizon_start = m.horizon_start;
  paths.horizon_end = m.horizon_end;
  paths.slot_duration = m.slot_duration;
  paths.edge_model = EdgeModel::parse(m.edge_model);
  params.panel_normalizer = m.panel_normalizer;
  return load_instance(paths, params);
}

std::size_t thread_cap() {
  const char* env = std::getenv("REGRET_ALLOC_THREADS");
  std::size_t n = 0;
  if (env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) throw ConfigError("REGRET_ALLOC_THREADS must be a count");
    n = static_cast<std::size_t>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

SweepResult run_sweep(const RunConfig& config, std::size_t threads) {
  config.validate();
  struct Cell {
    double alpha, lambda;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double a : config.alphas) {
    for (double l : config.lambdas) {
      for (std::uint64_t s : config.seeds) cells.push_back({a, l, s});
    }
  }

  std::vector<std::vector<RunReport>> per_cell(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      RunConfig cfg = config;
      cfg.gen.alpha = cells[c].alpha;
      cfg.gen.lambda = cells[c].lambda;
      cfg.gen.rng_seed = cells[c].seed;
      cfg.gen.params.rng_seed = cells[c].seed;
      std::optional<ProblemInstance> inst;
      std::string gen_error;
      try {
        inst.emplace(generate_instance(cfg.gen));
      } catch (const std::exception& e) {
        gen_error = std::string("error: generate: ") + e.what();
      }
      for (const auto& algo : cfg.algos) {
        RunReport rep;
        try {
          if (!inst) throw std::runtime_error(gen_error);
          rep = run_algorithm(*inst, algo, cfg, cells[c].seed);
        } catch (const std::exception& e) {
          rep.algo = algo;
          rep.alpha = cfg.gen.alpha;
          rep.lambda = cfg.gen.lambda;
          rep.n_advertisers = cfg.gen.n_advertisers;
          rep.gamma = cfg.gen.params.gamma;
          rep.delta = cfg.gen.params.delta;
          rep.epsilon = cfg.abls.epsilon;
          rep.rho = cfg.gen.params.rho;
          rep.pi_m = cfg.gen.params.pi_meters;
          rep.T = cfg.pgm.iterations;
          rep.seed = cells[c].seed;
          rep.fingerprint = inst ? instance_fingerprint(*inst) : "";
          const std::string what = e.what();
          rep.status = what.rfind("error:", 0) == 0 ? what : "error: " + what;
        }
        per_cell[c].push_back(std::move(rep));
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(threads, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult out;
  for (auto& v : per_cell) {
    for (auto& r : v) {
      if (r.status != "ok") out.all_ok = false;
      out.rows.push_back(std::move(r));
    }
  }
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const RunReport& a, const RunReport& b) {
    return std::tie(a.algo, a.alpha, a.lambda, a.seed) < std::tie(b.algo, b.alpha, b.lambda, b.seed);
  });
  return out;
}

std::string results_csv(const std::vector<RunReport>& rows) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const auto& r : rows) out += results_row(r) + "\n";
  return out;
}

std::string summary_csv(const std::vector<RunReport>& rows) {
  struct Acc {
    std::vector<double> regret, satisfied, runtime;
  };
  std::map<std::tuple<std::string, double, double>, Acc> groups;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    auto& g = groups[{r.algo, r.alpha, r.lambda}];
    g.regret.push_back(r.total_regret);
    g.satisfied.push_back(static_cast<double>(r.satisfied));
    g.runtime.push_back(r.runtime_ms);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto sd = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  std::string out =
      "algo,alpha,lambda,n_seeds,mean_regret,std_regret,mean_satisfied,std_satisfied,"
      "mean_runtime_ms\n";
  for (const auto& [key, g] : groups) {
    const auto& [algo, alpha, lambda] = key;
    out += algo + "," + num(alpha) + "," + num(lambda) + "," +
           std::to_string(g.regret.size()) + "," + num(mean(g.regret)) + "," +
           num(sd(g.regret)) + "," + num(mean(g.satisfied)) + "," + num(sd(g.satisfied)) +
           "," + fmt("%.3f", mean(g.runtime)) + "\n";
  }
  return out;
}

OracleReport oracle_report(const ProblemInstance& instance, const RunConfig& config,
                           std::uint64_t seed) {
  check_oracle_limits(instance);
  const InfluenceEstimator est(instance);
  const RegretModel model(est);
  OracleReport rep;
  const auto opt = brute_force_opt(model);
  rep.opt_regret = opt.regret;
  rep.opt_allocation = opt.allocation;
  rep.phi_violation = phi_violation(est);
  rep.regret_violation = regret_violation(model);
  rep.epsilon_bound = est.epsilon_bound();
  for (const auto& algo : config.algos) {
    rep.algo_regret.emplace_back(algo, run_algorithm(instance, algo, config, seed).total_regret);
  }
  return rep;
}

}  // namespace regalloc
