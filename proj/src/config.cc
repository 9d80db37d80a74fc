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

#include "regalloc/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace regalloc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, std::string v) {
  bool percent = false;
  if (!v.empty() && v.back() == '%') {
    percent = true;
    v.pop_back();
  }
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
  return percent ? x / 100.0 : x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
    throw ConfigError("key '" + key + "': not a non-negative integer: '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected on/off, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& k, auto field) {
      t[k] = [field](RunConfig& c, const std::string& key, const std::string& v) {
        field(c) = to_double(key, v);
      };
    };
    auto count = [&t](const std::string& k, auto field) {
      t[k] = [field](RunConfig& c, const std::string& key, const std::string& v) {
        field(c) = static_cast<std::remove_reference_t<decltype(field(c))>>(to_uint(key, v));
      };
    };
    t["alpha"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.alphas.clear();
      for (const auto& x : split_list(v)) c.alphas.push_back(to_double(k, x));
    };
    t["lambda"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.lambdas.clear();
      for (const auto& x : split_list(v)) c.lambdas.push_back(to_double(k, x));
    };
    t["algos"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.algos = split_list(v);
    };
    t["seeds"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.seeds.clear();
      for (const auto& x : split_list(v)) c.seeds.push_back(to_uint(k, x));
    };
    t["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.seeds = {to_uint(k, v)};
    };
    num("gamma", [](RunConfig& c) -> double& { return c.gen.params.gamma; });
    num("delta", [](RunConfig& c) -> double& { return c.gen.params.delta; });
    num("rho", [](RunConfig& c) -> double& { return c.gen.params.rho; });
    num("pi", [](RunConfig& c) -> double& { return c.gen.params.pi_meters; });
    num("A", [](RunConfig& c) -> double& { return c.gen.params.panel_normalizer; });
    num("seed_cost_factor", [](RunConfig& c) -> double& { return c.gen.params.seed_cost_factor; });
    num("slot_cost_factor", [](RunConfig& c) -> double& { return c.gen.slot_cost_factor; });
    num("epsilon", [](RunConfig& c) -> double& { return c.abls.epsilon; });
    num("init_value", [](RunConfig& c) -> double& { return c.pgm.init_value; });
    num("near_fraction", [](RunConfig& c) -> double& { return c.gen.near_fraction; });
    num("city_width_m", [](RunConfig& c) -> double& { return c.gen.city_width_m; });
    num("city_height_m", [](RunConfig& c) -> double& { return c.gen.city_height_m; });
    num("panel_min", [](RunConfig& c) -> double& { return c.gen.panel_min; });
    num("panel_max", [](RunConfig& c) -> double& { return c.gen.panel_max; });
    count("T", [](RunConfig& c) -> int& { return c.pgm.iterations; });
    count("mc_samples", [](RunConfig& c) -> int& { return c.gen.params.mc_samples; });
    count("exact_edge_limit", [](RunConfig& c) -> std::size_t& { return c.gen.params.exact_edge_limit; });
    count("cache_capacity", [](RunConfig& c) -> std::size_t& { return c.gen.params.cache_capacity; });
    count("n_advertisers", [](RunConfig& c) -> std::size_t& { return c.gen.n_advertisers; });
    count("nodes", [](RunConfig& c) -> std::size_t& { return c.gen.nodes; });
    count("edges", [](RunConfig& c) -> std::size_t& { return c.gen.edges; });
    count("billboards", [](RunConfig& c) -> std::size_t& { return c.gen.billboards; });
    count("records_per_user", [](RunConfig& c) -> std::size_t& { return c.gen.records_per_user; });
    count("horizon_s", [](RunConfig& c) -> std::int64_t& { return c.gen.horizon_s; });
    count("slot_duration_s", [](RunConfig& c) -> std::int64_t& { return c.gen.slot_duration_s; });
    t["edge_model"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.gen.edge_model = EdgeModel::parse(v);
    };
    t["mode"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v == "exact") {
        c.gen.params.mode = InfluenceMode::kExact;
      } else if (v == "mc") {
        c.gen.params.mode = InfluenceMode::kMonteCarlo;
      } else {
        throw ConfigError("key '" + k + "': expected exact or mc, got '" + v + "'");
      }
    };
    t["lipschitz"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v == "auto") {
        c.pgm.lipschitz = PgmConfig::Lipschitz::kAuto;
      } else {
        c.pgm.lipschitz = PgmConfig::Lipschitz::kFixed;
        c.pgm.fixed_lipschitz = to_double(k, v);
      }
    };
    t["eta_scope"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v == "global") {
        c.pgm.eta_scope = PgmConfig::EtaScope::kGlobal;
      } else if (v == "per_advertiser") {
        c.pgm.eta_scope = PgmConfig::EtaScope::kPerAdvertiser;
      } else {
        throw ConfigError("key '" + k + "': expected global or per_advertiser");
      }
    };
    t["tie_break"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v == "slot_first") {
        c.abls.tie_break = AblsConfig::TieBreak::kSlotFirst;
      } else if (v == "seed_first") {
        c.abls.tie_break = AblsConfig::TieBreak::kSeedFirst;
      } else if (v == "lowest_cost") {
        c.abls.tie_break = AblsConfig::TieBreak::kLowestCost;
      } else {
        throw ConfigError("key '" + k + "': expected slot_first, seed_first or lowest_cost");
      }
    };
    t["budget_rule"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v == "strict") {
        c.abls.allow_exact_budget = false;
      } else if (v == "inclusive") {
        c.abls.allow_exact_budget = true;
      } else {
        throw ConfigError("key '" + k + "': expected strict or inclusive");
      }
    };
    t["timing"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.timing = to_bool(k, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

void RunConfig::validate() const {
  if (alphas.empty() || lambdas.empty() || algos.empty() || seeds.empty()) {
    throw ConfigError("alpha, lambda, algos and seeds must be non-empty");
  }
  for (double a : alphas) {
    if (!(a > 0.0)) throw ConfigError("alpha must be positive");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) throw ConfigError("lambda must be positive");
  }
  for (const auto& a : algos) {
    if (a != "pgm" && a != "abls" && a != "random" && a != "topk") {
      throw ConfigError("unknown algorithm '" + a + "'");
    }
  }
  GenConfig g = gen;
  g.alpha = alphas.front();
  g.lambda = lambdas.front();
  g.validate();
  pgm.validate();
  abls.validate();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg = default_config();
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    it->second(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace regalloc
