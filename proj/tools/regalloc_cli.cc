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

// Command-line front end: gen, run, sweep, oracle.
//
// Exit codes: 0 success, 2 bad configuration or input, 3 an allocation broke
// an invariant or a sweep cell failed, 4 the oracle refused the instance.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "regalloc/feasibility.h"
#include "regalloc/harness.h"
#include "regalloc/influence.h"
#include "regalloc/ingest.h"

namespace fs = std::filesystem;
using namespace regalloc;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kInvariant = 3;
constexpr int kRefused = 4;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string mode;
};

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config.empty() ? default_config() : load_config(c.config);
  if (c.seed) cfg.seeds = {*c.seed};
  if (c.mode == "exact") {
    cfg.gen.params.mode = InfluenceMode::kExact;
  } else if (c.mode == "mc") {
    cfg.gen.params.mode = InfluenceMode::kMonteCarlo;
  } else if (!c.mode.empty()) {
    throw ConfigError("--mode must be exact or mc");
  }
  cfg.gen.params.rng_seed = cfg.seeds.front();
  cfg.gen.rng_seed = cfg.seeds.front();
  cfg.validate();
  return cfg;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
}

int cmd_gen(const Common& c) {
  RunConfig cfg = resolve(c);
  if (c.out.empty()) throw ConfigError("gen needs --out");
  cfg.gen.alpha = cfg.alphas.front();
  cfg.gen.lambda = cfg.lambdas.front();
  const auto inst = generate_instance(cfg.gen);
  InstanceManifest m;
  m.generator = kGeneratorLabel;
  m.fingerprint = instance_fingerprint(inst);
  m.horizon_start = 0;
  m.horizon_end = cfg.gen.horizon_s;
  m.slot_duration = cfg.gen.slot_duration_s;
  m.panel_normalizer = cfg.gen.params.panel_normalizer;
  m.edge_model = cfg.gen.edge_model.name();
  m.alpha = cfg.gen.alpha;
  m.lambda = cfg.gen.lambda;
  write_dataset(inst, m, c.out);
  std::cout << "wrote " << c.out << " fingerprint " << m.fingerprint << "\n";
  return kOk;
}

int cmd_run(const Common& c, const std::string& instance_dir, const std::string& algo) {
  RunConfig cfg = resolve(c);
  const auto manifest = read_manifest(instance_dir);
  cfg.gen.alpha = manifest.alpha;
  cfg.gen.lambda = manifest.lambda;
  const auto inst = load_dataset(instance_dir, cfg.gen.params);
  const auto rep = run_algorithm(inst, algo, cfg, cfg.seeds.front());
  const fs::path out = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(out);
  write_text(out / "allocation.json", allocation_json(inst, rep));
  append_results(out / "results.csv", rep);
  std::cout << results_row(rep) << "\n";
  return kOk;
}

int cmd_sweep(const Common& c) {
  const RunConfig cfg = resolve(c);
  if (c.out.empty()) throw ConfigError("sweep needs --out");
  RunConfig grid = cfg;
  if (!c.seed && !c.config.empty()) grid.seeds = load_config(c.config).seeds;
  const auto result = run_sweep(grid, thread_cap());
  fs::create_directories(c.out);
  write_text(fs::path(c.out) / "results.csv", results_csv(result.rows));
  write_text(fs::path(c.out) / "summary.csv", summary_csv(result.rows));
  std::cout << "wrote " << result.rows.size() << " rows to " << c.out << "\n";
  if (!result.all_ok) {
    std::cerr << "some sweep cells failed; see the status column\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_oracle(const Common& c, const std::string& instance_dir) {
  Common exact = c;
  if (exact.mode.empty()) exact.mode = "exact";
  const RunConfig cfg = resolve(exact);
  std::optional<ProblemInstance> inst;
  try {
    inst.emplace(load_dataset(instance_dir, cfg.gen.params));
  } catch (const ModeError& e) {
    // Exact enumeration is what the oracle needs; a graph too large for it is oversize.
    throw OracleRefusal(e.what());
  }
  const auto rep = oracle_report(*inst, cfg, cfg.seeds.front());
  std::printf("opt_regret %.12g\n", rep.opt_regret);
  std::printf("phi_violation %.12g\n", rep.phi_violation);
  std::printf("regret_violation %.12g\n", rep.regret_violation);
  std::printf("epsilon_bound %.12g\n", rep.epsilon_bound);
  for (const auto& [algo, regret] : rep.algo_regret) {
    std::printf("%s regret %.12g gap %.12g\n", algo.c_str(), regret, regret - rep.opt_regret);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regret-minimizing allocation of billboard slots and seed users"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "key = value configuration file");
    sub->add_option("--out", common.out, "output directory");
    sub->add_option("--seed", common.seed, "random seed (overrides the config)");
    sub->add_option("--mode", common.mode, "influence estimator: exact or mc");
  };

  auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
  add_common(gen);
  auto* run = app.add_subcommand("run", "run one algorithm on an instance directory");
  add_common(run);
  std::string instance_dir, algo;
  run->add_option("--instance", instance_dir, "instance directory")->required();
  run->add_option("--algo", algo, "pgm, abls, random or topk")->required();
  auto* sweep = app.add_subcommand("sweep", "run the alpha x lambda x algo x seed grid");
  add_common(sweep);
  auto* oracle = app.add_subcommand("oracle", "exact optimum and gaps for a tiny instance");
  add_common(oracle);
  oracle->add_option("--instance", instance_dir, "instance directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*gen) return cmd_gen(common);
    if (*run) return cmd_run(common, instance_dir, algo);
    if (*sweep) return cmd_sweep(common);
    if (*oracle) return cmd_oracle(common, instance_dir);
  } catch (const OracleRefusal& e) {
    std::cerr << "oracle refused: " << e.what() << "\n";
    return kRefused;
  } catch (const InvariantBreach& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const FeasibilityError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
