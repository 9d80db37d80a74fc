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

// Experiment configuration read from a flat key = value text file.
//
// Blank lines and lines starting with '#' are ignored. List-valued keys
// (alpha, lambda, algos, seeds) take comma-separated values; ratios accept a
// trailing '%'. Unknown keys are errors.

#ifndef REGALLOC_CONFIG_H_
#define REGALLOC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "regalloc/abls.h"
#include "regalloc/datagen.h"
#include "regalloc/pgm.h"

namespace regalloc {

struct RunConfig {
  GenConfig gen;
  std::vector<double> alphas{1.0};
  std::vector<double> lambdas{0.05};
  std::vector<std::string> algos{"pgm", "abls", "random", "topk"};
  std::vector<std::uint64_t> seeds{0};
  PgmConfig pgm;
  AblsConfig abls;
  // When false, runtime_ms is reported as 0 so result files are reproducible
  // byte for byte.
  bool timing = true;

  void validate() const;
};

// Defaults: alpha 100%, lambda 5%, gamma 0.5, delta 0.5,
// epsilon 0.05, rho 0.5, pi 100 m.
RunConfig default_config();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace regalloc

#endif  // REGALLOC_CONFIG_H_
