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

#include <set>

#include "doctest.h"
#include "examples.h"
#include "fixtures.h"
#include "regalloc/config.h"
#include "regalloc/harness.h"

using namespace regalloc;
using namespace regalloc::testing;

TEST_CASE("configuration parsing") {
  const auto cfg = parse_config(
      "# comment\nalpha = 40%, 1.2\nlambda = 0.05\ngamma = 0.25\nalgos = abls, topk\n"
      "seeds = 1, 2\nmode = exact\nlipschitz = 3\neta_scope = global\n"
      "tie_break = lowest_cost\nbudget_rule = inclusive\ntiming = off\nedge_model = wc\n");
  CHECK(cfg.alphas == std::vector<double>{0.4, 1.2});
  CHECK(cfg.gen.params.gamma == 0.25);
  CHECK(cfg.algos == std::vector<std::string>{"abls", "topk"});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(cfg.gen.params.mode == InfluenceMode::kExact);
  CHECK(cfg.pgm.lipschitz == PgmConfig::Lipschitz::kFixed);
  CHECK(cfg.pgm.fixed_lipschitz == 3.0);
  CHECK(cfg.pgm.eta_scope == PgmConfig::EtaScope::kGlobal);
  CHECK(cfg.abls.tie_break == AblsConfig::TieBreak::kLowestCost);
  CHECK(cfg.abls.allow_exact_budget);
  CHECK_FALSE(cfg.timing);
  CHECK(cfg.gen.edge_model.kind == EdgeModel::Kind::kWeightedCascade);

  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("alpha = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gamma = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("algos = pgm, magic\n"), ConfigError);
}

TEST_CASE("defaults follow the key parameter table") {
  const auto cfg = default_config();
  CHECK(cfg.alphas == std::vector<double>{1.0});
  CHECK(cfg.lambdas == std::vector<double>{0.05});
  CHECK(cfg.gen.params.gamma == 0.5);
  CHECK(cfg.gen.params.delta == 0.5);
  CHECK(cfg.gen.params.rho == 0.5);
  CHECK(cfg.gen.params.pi_meters == 100.0);
  CHECK(cfg.abls.epsilon == 0.05);
}

TEST_CASE("results row layout") {
  const auto inst = tiny_instance();
  RunConfig cfg = default_config();
  cfg.timing = false;
  cfg.gen.params = inst.params();
  const auto rep = run_algorithm(inst, "abls", cfg, 0);
  const auto row = results_row(rep);
  CHECK(std::count(row.begin(), row.end(), ',') == 15);
  CHECK(rep.runtime_ms == 0.0);
  CHECK(rep.total_regret == doctest::Approx(5.0));
  CHECK(rep.fingerprint == instance_fingerprint(inst));
  CHECK(rep.fingerprint.size() == 16);
  CHECK_THROWS_AS(run_algorithm(inst, "magic", cfg, 0), ConfigError);
  const auto json = allocation_json(inst, rep);
  CHECK(json.find("\"a1\"") != std::string::npos);
  CHECK(json.find("\"phi\"") != std::string::npos);
}

TEST_CASE("sweep output does not depend on the thread count") {
  RunConfig cfg = parse_config(
      "nodes = 30\nedges = 60\nbillboards = 5\nhorizon_s = 3600\nn_advertisers = 5\n"
      "mc_samples = 200\nT = 8\ntiming = off\nalpha = 60%, 120%\nseeds = 1, 2\n");
  const auto one = run_sweep(cfg, 1);
  const auto four = run_sweep(cfg, 4);
  CHECK(one.all_ok);
  CHECK(results_csv(one.rows) == results_csv(four.rows));
  CHECK(summary_csv(one.rows) == summary_csv(four.rows));
  REQUIRE(one.rows.size() == 16);
  for (std::size_t i = 1; i < one.rows.size(); ++i) {
    const auto& a = one.rows[i - 1];
    const auto& b = one.rows[i];
    CHECK(std::tie(a.algo, a.alpha, a.lambda, a.seed) < std::tie(b.algo, b.alpha, b.lambda, b.seed));
  }
}

TEST_CASE("thread cap reads the environment") {
  ::setenv("REGRET_ALLOC_THREADS", "3", 1);
  CHECK(thread_cap() == 3);
  ::setenv("REGRET_ALLOC_THREADS", "x", 1);
  CHECK_THROWS_AS(thread_cap(), ConfigError);
  ::setenv("REGRET_ALLOC_THREADS", "0", 1);
  CHECK(thread_cap() >= 1);
  ::unsetenv("REGRET_ALLOC_THREADS");
}

TEST_CASE("cli rejects bad flags with exit code 2") {
  CHECK(run_cli("gen --mode fuzzy --out /tmp/never") == 2);
  CHECK(run_cli("unknown-verb") == 2);
  CHECK(run_cli("run --instance " + fixture_path("tiny").string()) == 2);
}
