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

// Dataset loading and the slot/user exposure table.
//
// CSV files are UTF-8, comma separated, with a mandatory header row:
//   billboards.csv    id,lat,lon,panel_size,cost
//   trajectories.csv  user_id,lat,lon,t_start,t_end
//   edges.csv         src,dst[,weight]
//   advertisers.csv   id,demand,payment

#ifndef REGALLOC_INGEST_H_
#define REGALLOC_INGEST_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "regalloc/edge_model.h"
#include "regalloc/types.h"

namespace regalloc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& field,
             const std::string& message);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
};

struct DatasetPaths {
  std::filesystem::path billboards_csv;
  std::filesystem::path trajectories_csv;
  std::filesystem::path edges_csv;
  std::filesystem::path advertisers_csv;
  std::int64_t horizon_start = 0;
  std::int64_t horizon_end = 0;
  std::int64_t slot_duration = 0;
  // Applied when edges.csv has no weight column.
  EdgeModel edge_model;

  // Standard file names inside one directory.
  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

// Parses the four files, tiles every billboard's horizon into slots and
// prices seed nodes at seed_cost_factor times their singleton cascade
// influence. Users that only appear in trajectories become isolated nodes.
ProblemInstance load_instance(const DatasetPaths& paths, const ModelParams& params);

struct Exposure {
  Index user = kNoIndex;
  double probability = 0.0;
};

// Per-slot exposure lists, indexed by slot; each list is sorted by user.
struct ExposureTable {
  std::vector<std::vector<Exposure>> per_slot;

  std::size_t pair_count() const;
  double max_probability() const;
};

// (u, p) is listed for slot s iff one of u's records overlaps the slot window
// (closed intervals) within pi meters of the billboard; p = panel_size / A.
ExposureTable build_exposure_table(const ProblemInstance& instance);

// Writes the four CSV files under `dir`. Edge weights are written only for
// symmetric edges; a graph with any directional edge omits the weight column.
void write_instance_csv(const ProblemInstance& instance,
                        const std::filesystem::path& dir);

}  // namespace regalloc

#endif  // REGALLOC_INGEST_H_
