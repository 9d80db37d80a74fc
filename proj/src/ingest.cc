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

#include "regalloc/ingest.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "regalloc/geo.h"
#include "regalloc/influence.h"

namespace regalloc {

ParseError::ParseError(const std::string& file, std::size_t line,
                       const std::string& field, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": field '" + field +
                         "': " + message),
      file_(file),
      line_(line),
      field_(field) {}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
  DatasetPaths p;
  p.billboards_csv = dir / "billboards.csv";
  p.trajectories_csv = dir / "trajectories.csv";
  p.edges_csv = dir / "edges.csv";
  p.advertisers_csv = dir / "advertisers.csv";
  return p;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(std::string_view(line).substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Reads a CSV file with a header row; rows are addressed by column name.
class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path,
            const std::vector<std::string>& required,
            const std::vector<std::string>& optional = {})
      : file_(path.string()), in_(path) {
    if (!in_) throw ParseError(file_, 0, "", "cannot open file");
    std::string header;
    if (!std::getline(in_, header)) throw ParseError(file_, 1, "", "missing header row");
    if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      header.erase(0, 3);
    }
    line_no_ = 1;
    const auto names = split(header);
    for (std::size_t i = 0; i < names.size(); ++i) columns_[names[i]] = i;
    for (const auto& r : required) {
      if (!columns_.count(r)) throw ParseError(file_, 1, r, "missing column");
    }
    for (const auto& o : optional) has_[o] = columns_.count(o) > 0;
    width_ = names.size();
  }

  bool next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (trim(line).empty()) continue;
      row_ = split(line);
      if (row_.size() != width_) {
        throw ParseError(file_, line_no_, "", "expected " + std::to_string(width_) +
                                                  " fields, got " +
                                                  std::to_string(row_.size()));
      }
      return true;
    }
    return false;
  }

  bool has(const std::string& col) const { return has_.at(col); }

  const std::string& text(const std::string& col) const {
    const auto& v = row_[columns_.at(col)];
    if (v.empty()) throw ParseError(file_, line_no_, col, "empty value");
    return v;
  }

  double real(const std::string& col) const {
    const auto& v = text(col);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ParseError(file_, line_no_, col, "not a number: '" + v + "'");
    }
    return out;
  }

  std::int64_t integer(const std::string& col) const {
    const auto& v = text(col);
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      throw ParseError(file_, line_no_, col, "not an integer: '" + v + "'");
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& col, const std::string& msg) const {
    throw ParseError(file_, line_no_, col, msg);
  }

 private:
  std::string file_;
  std::ifstream in_;
  std::map<std::string, std::size_t> columns_;
  std::map<std::string, bool> has_;
  std::size_t width_ = 0;
  std::size_t line_no_ = 0;
  std::vector<std::string> row_;
};

}  // namespace

ProblemInstance load_instance(const DatasetPaths& paths, const ModelParams& params) {
  if (paths.slot_duration <= 0) throw ConfigError("slot duration must be positive");
  if (paths.horizon_end < paths.horizon_start) {
    throw ConfigError("horizon end precedes start");
  }
  params.validate();

  InstanceBuilder builder;
  builder.set_params(params);

  {
    CsvReader r(paths.billboards_csv, {"id", "lat", "lon", "panel_size", "cost"});
    while (r.next()) {
      Billboard b{r.text("id"), {r.real("lat"), r.real("lon")}, r.real("panel_size"),
                  r.real("cost")};
      if (!(b.panel_size > 0.0)) r.fail("panel_size", "must be positive");
      if (!(b.base_cost >= 0.0)) r.fail("cost", "must be non-negative");
      builder.add_billboard(std::move(b));
    }
  }
  const auto dropped =
      builder.tile_slots(paths.horizon_start, paths.horizon_end, paths.slot_duration);
  if (dropped > 0) {
    std::cerr << "warning: horizon not divisible by slot duration; dropping trailing "
              << dropped << "s window\n";
  }

  {
    CsvReader r(paths.trajectories_csv, {"user_id", "lat", "lon", "t_start", "t_end"});
    while (r.next()) {
      TrajectoryRecord rec{{r.text("user_id")},
                           {r.real("lat"), r.real("lon")},
                           {r.integer("t_start"), r.integer("t_end")}};
      if (rec.interval.start > rec.interval.end) r.fail("t_end", "t_end < t_start");
      builder.add_trajectory(std::move(rec));
    }
  }

  {
    CsvReader r(paths.edges_csv, {"src", "dst"}, {"weight"});
    SocialGraph& g = builder.graph();
    const bool weighted = r.has("weight");
    while (r.next()) {
      const Index u = g.add_node(r.text("src"));
      const Index v = g.add_node(r.text("dst"));
      if (u == v) r.fail("dst", "self-loop");
      double w = 1.0;
      if (weighted) {
        w = r.real("weight");
        if (!(w > 0.0 && w <= 1.0)) r.fail("weight", "must be in (0,1]");
      }
      g.add_edge(u, v, w);
    }
    if (!weighted) apply_edge_model(g, paths.edge_model, params.rng_seed);
  }

  {
    CsvReader r(paths.advertisers_csv, {"id", "demand", "payment"});
    while (r.next()) {
      Advertiser a{r.text("id"), r.real("demand"), r.real("payment")};
      if (!(a.demand > 0.0)) r.fail("demand", "must be positive");
      if (!(a.payment > 0.0)) r.fail("payment", "must be positive");
      builder.add_advertiser(std::move(a));
    }
  }

  ProblemInstance inst = builder.build();
  return with_default_seed_costs(inst);
}

std::size_t ExposureTable::pair_count() const {
  std::size_t n = 0;
  for (const auto& s : per_slot) n += s.size();
  return n;
}

double ExposureTable::max_probability() const {
  double m = 0.0;
  for (const auto& s : per_slot) {
    for (const auto& e : s) m = std::max(m, e.probability);
  }
  return m;
}

ExposureTable build_exposure_table(const ProblemInstance& instance) {
  const auto& params = instance.params();
  const auto& slots = instance.slots();
  ExposureTable table;
  table.per_slot.resize(slots.size());

  // Slots of each billboard, sorted by window start.
  std::vector<std::vector<Index>> by_billboard(instance.billboards().size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    by_billboard[slots[s].billboard].push_back(static_cast<Index>(s));
  }
  for (auto& list : by_billboard) {
    std::sort(list.begin(), list.end(), [&](Index a, Index b) {
      return slots[a].start != slots[b].start ? slots[a].start < slots[b].start : a < b;
    });
  }

  // Longest slot per billboard bounds the backward scan below.
  std::vector<std::int64_t> max_duration(by_billboard.size(), 0);
  for (std::size_t b = 0; b < by_billboard.size(); ++b) {
    for (Index s : by_billboard[b]) {
      max_duration[b] = std::max(max_duration[b], slots[s].duration);
    }
  }

  std::vector<std::vector<Index>> record_users(instance.trajectories().size());
  for (std::size_t r = 0; r < instance.trajectories().size(); ++r) {
    for (const auto& u : instance.trajectories()[r].user_ids) {
      record_users[r].push_back(instance.user_index(u));
    }
  }

  for (std::size_t b = 0; b < by_billboard.size(); ++b) {
    const auto& board = instance.billboards()[b];
    const auto& list = by_billboard[b];
    if (list.empty()) continue;
    const double p = board.panel_size / params.panel_normalizer;
    for (std::size_t r = 0; r < instance.trajectories().size(); ++r) {
      const auto& rec = instance.trajectories()[r];
      if (haversine_meters(rec.location, board.location) > params.pi_meters) continue;
      // Slots whose closed window [start, start + duration] meets the record.
      auto hi = std::upper_bound(list.begin(), list.end(), rec.interval.end,
                                 [&](std::int64_t t, Index s) { return t < slots[s].start; });
      for (auto it = hi; it != list.begin();) {
        --it;
        const auto& slot = slots[*it];
        if (slot.start + max_duration[b] < rec.interval.start) break;
        if (slot.window().intersects(rec.interval)) {
          for (Index u : record_users[r]) table.per_slot[*it].push_back({u, p});
        }
      }
    }
  }

  for (auto& list : table.per_slot) {
    std::sort(list.begin(), list.end(),
              [](const Exposure& a, const Exposure& b) { return a.user < b.user; });
    list.erase(std::unique(list.begin(), list.end(),
                           [](const Exposure& a, const Exposure& b) {
                             return a.user == b.user;
                           }),
               list.end());
  }
  return table;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace

void write_instance_csv(const ProblemInstance& instance,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "billboards.csv");
    out << "id,lat,lon,panel_size,cost\n";
    for (const auto& b : instance.billboards()) {
      out << b.id << ',' << num(b.location.lat) << ',' << num(b.location.lon) << ','
          << num(b.panel_size) << ',' << num(b.base_cost) << '\n';
    }
  }
  {
    auto out = open_out(dir / "trajectories.csv");
    out << "user_id,lat,lon,t_start,t_end\n";
    for (const auto& r : instance.trajectories()) {
      for (const auto& u : r.user_ids) {
        out << u << ',' << num(r.location.lat) << ',' << num(r.location.lon) << ','
            << r.interval.start << ',' << r.interval.end << '\n';
      }
    }
  }
  {
    const auto& g = instance.graph();
    const bool weighted = std::all_of(g.edges().begin(), g.edges().end(),
                                      [](const GraphEdge& e) { return e.symmetric; });
    auto out = open_out(dir / "edges.csv");
    out << (weighted ? "src,dst,weight\n" : "src,dst\n");
    for (const auto& e : g.edges()) {
      out << g.node_ids()[e.u] << ',' << g.node_ids()[e.v];
      if (weighted) out << ',' << num(e.forward);
      out << '\n';
    }
  }
  {
    auto out = open_out(dir / "advertisers.csv");
    out << "id,demand,payment\n";
    for (const auto& a : instance.advertisers()) {
      out << a.id << ',' << num(a.demand) << ',' << num(a.payment) << '\n';
    }
  }
}

}  // namespace regalloc
