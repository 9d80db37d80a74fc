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

// Experiment plumbing shared by the command-line tool and the acceptance
// suite: running one algorithm, the result and allocation files, instance
// fingerprints and manifests, parameter sweeps and oracle reports.

#ifndef REGALLOC_HARNESS_H_
#define REGALLOC_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "regalloc/config.h"
#include "regalloc/oracle.h"

namespace regalloc {

// An algorithm produced an allocation that is infeasible or over budget.
class InvariantBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunReport {
  std::string algo;
  double alpha = 0.0;
  double lambda = 0.0;
  std::size_t n_advertisers = 0;
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double rho = 0.0;
  double pi_m = 0.0;
  int T = 0;
  std::uint64_t seed = 0;
  double total_regret = 0.0;
  std::size_t satisfied = 0;
  double runtime_ms = 0.0;
  std::string fingerprint;
  std::string status = "ok";

  Allocation allocation;
  std::vector<double> phi;     // per advertiser
  std::vector<double> regret;  // per advertiser
};

inline constexpr const char* kResultsHeader =
    "algo,alpha,lambda,n_advertisers,gamma,delta,epsilon,rho,pi_m,T,seed,"
    "total_regret,satisfied,runtime_ms,instance_fingerprint,status";

// FNV-1a 64 over a canonical rendering of the instance data, as 16 hex digits.
std::string instance_fingerprint(const ProblemInstance& instance);

// Runs algo (pgm, abls, random or topk) and checks the result. Throws
// ConfigError for an unknown name and InvariantBreach for an infeasible or
// over-budget allocation.
RunReport run_algorithm(const ProblemInstance& instance, const std::string& algo,
                        const RunConfig& config, std::uint64_t seed);

std::string results_row(const RunReport& report);
void append_results(const std::filesystem::path& csv, const RunReport& report);
std::string allocation_json(const ProblemInstance& instance, const RunReport& report);

// Instance files plus manifest.txt in one directory.
struct InstanceManifest {
  std::string generator;
  std::string fingerprint;
  std::int64_t horizon_start = 0;
  std::int64_t horizon_end = 0;
  std::int64_t slot_duration = 0;
  double panel_normalizer = 100.0;
  std::string edge_model = "uniform";
  double alpha = 0.0;   // generator settings, 0 when unknown
  double lambda = 0.0;
};

void write_dataset(const ProblemInstance& instance, const InstanceManifest& manifest,
                   const std::filesystem::path& dir);
InstanceManifest read_manifest(const std::filesystem::path& dir);
// Loads a dataset directory with the given parameters; A comes from the
// manifest.
ProblemInstance load_dataset(const std::filesystem::path& dir, ModelParams params);

// One sweep cell per (alpha, lambda, seed); every algorithm runs on the same
// generated instance. Rows are sorted by (algo, alpha, lambda, seed).
struct SweepResult {
  std::vector<RunReport> rows;
  bool all_ok = true;
};
SweepResult run_sweep(const RunConfig& config, std::size_t threads);
std::string results_csv(const std::vector<RunReport>& rows);
// Per (algo, alpha, lambda): mean and sample standard deviation over seeds.
std::string summary_csv(const std::vector<RunReport>& rows);

// Thread cap from REGRET_ALLOC_THREADS (0 or unset: hardware concurrency).
std::size_t thread_cap();

struct OracleReport {
  double opt_regret = 0.0;
  Allocation opt_allocation;
  double phi_violation = 0.0;
  double regret_violation = 0.0;
  double epsilon_bound = 0.0;
  std::vector<std::pair<std::string, double>> algo_regret;
};
OracleReport oracle_report(const ProblemInstance& instance, const RunConfig& config,
                           std::uint64_t seed);

}  // namespace regalloc

#endif  // REGALLOC_HARNESS_H_
