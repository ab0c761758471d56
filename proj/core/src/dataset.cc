// Copyright 2026 The Trajcast Authors
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

#include "trajcast/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "trajcast/error.h"

namespace trajcast {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    fields.push_back(line.substr(begin, comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": bad " +
                                              std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".map.json");
  return p;
}

nlohmann::json polylines_json(const std::vector<Trajectory>& lines) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : lines) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : t.points()) pts.push_back({p.x, p.y});
    arr.push_back(std::move(pts));
  }
  return arr;
}

std::vector<Trajectory> polylines_from_json(const nlohmann::json& arr) {
  std::vector<Trajectory> out;
  for (const auto& pts : arr) {
    std::vector<Waypoint> wps;
    for (const auto& p : pts) wps.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    out.emplace_back(std::move(wps));
  }
  return out;
}

void read_sidecar(const std::filesystem::path& path, Scenario& sc) {
  std::ifstream in(path);
  if (!in) return;
  try {
    const auto j = nlohmann::json::parse(in);
    sc.map_polylines = polylines_from_json(j.value("map_polylines", nlohmann::json::array()));
    sc.alternative_futures =
        polylines_from_json(j.value("alternative_futures", nlohmann::json::array()));
    sc.mode = j.value("mode", std::string());
    sc.latent_branch = j.value("latent_branch", -1);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": " + e.what());
  }
}

std::size_t first_present(const AgentTrack& t) {
  return static_cast<std::size_t>(std::find(t.present.begin(), t.present.end(), true) -
                                  t.present.begin());
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

Scenario parse_csv(std::istream& in, const std::string& scenario_id, const LoadOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line() || line != kCsvHeader) {
    throw Error(ErrorCode::kMalformedRow,
                scenario_id + " line " + std::to_string(line_no) + ": expected header " +
                    std::string(kCsvHeader));
  }

  struct Row {
    double timestamp;
    std::string track;
    ObjectType type;
    Waypoint p;
    std::size_t line_no;
  };
  std::vector<Row> rows;
  std::string city;
  while (next_line()) {
    const auto fields = split_fields(line);
    if (fields.size() != 6) {
      throw Error(ErrorCode::kMalformedRow, scenario_id + " line " + std::to_string(line_no) +
                                                ": expected 6 fields, got " +
                                                std::to_string(fields.size()));
    }
    Row r;
    r.line_no = line_no;
    r.timestamp = parse_number(fields[0], line_no, "TIMESTAMP");
    r.track = std::string(fields[1]);
    try {
      r.type = parse_object_type(fields[2]);
    } catch (const Error&) {
      throw Error(ErrorCode::kMalformedRow, scenario_id + " line " + std::to_string(line_no) +
                                                ": unknown OBJECT_TYPE " + std::string(fields[2]));
    }
    r.p = {parse_number(fields[3], line_no, "X"), parse_number(fields[4], line_no, "Y")};
    if (city.empty()) city = std::string(fields[5]);
    rows.push_back(std::move(r));
  }

  std::vector<double> stamps;
  for (const auto& r : rows) stamps.push_back(r.timestamp);
  std::sort(stamps.begin(), stamps.end());
  stamps.erase(std::unique(stamps.begin(), stamps.end()), stamps.end());

  Scenario sc;
  sc.scenario_id = scenario_id;
  sc.city_name = city;
  sc.history_len = options.history_len;
  sc.future_len = options.future_len;
  sc.total_frames = options.history_len + options.future_len;
  if (stamps.size() != sc.total_frames) {
    throw Error(ErrorCode::kWrongFrameCount, scenario_id + ": " + std::to_string(stamps.size()) +
                                                 " frames, expected " +
                                                 std::to_string(sc.total_frames));
  }
  sc.timestamps = stamps;

  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    auto it = index.find(r.track);
    if (it == index.end()) {
      it = index.emplace(r.track, sc.agents.size()).first;
      sc.agents.push_back({r.track, r.type, std::vector<Waypoint>(sc.total_frames),
                           std::vector<bool>(sc.total_frames, false)});
    }
    AgentTrack& track = sc.agents[it->second];
    const auto frame = static_cast<std::size_t>(
        std::lower_bound(stamps.begin(), stamps.end(), r.timestamp) - stamps.begin());
    if (track.present[frame]) {
      throw Error(ErrorCode::kMalformedRow, scenario_id + " line " + std::to_string(r.line_no) +
                                                ": duplicate row for track " + r.track);
    }
    track.points[frame] = r.p;
    track.present[frame] = true;
  }
  std::stable_sort(sc.agents.begin(), sc.agents.end(), [](const AgentTrack& a, const AgentTrack& b) {
    return first_present(a) < first_present(b);
  });

  std::size_t agents = 0;
  for (auto& track : sc.agents) {
    pad_track(track);
    if (track.object_type == ObjectType::kAgent) {
      ++agents;
      sc.target_track_id = track.track_id;
    }
  }
  if (agents != 1) {
    throw Error(ErrorCode::kMissingAgent,
                scenario_id + ": expected exactly one AGENT track, found " + std::to_string(agents));
  }
  sc.validate();
  return sc;
}

std::vector<Scenario> load_csv(const std::filesystem::path& path, const LoadOptions& options,
                               std::vector<std::string>* warnings) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<Scenario> out;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + file.string());
    try {
      Scenario sc = parse_csv(in, file.stem().string(), options);
      read_sidecar(sidecar_path(file), sc);
      sc.validate();
      out.push_back(std::move(sc));
    } catch (const Error& e) {
      if (!options.skip_invalid || e.code() == ErrorCode::kIo) throw;
      const std::string msg = file.string() + ": skipped (" + e.what() + ")";
      if (warnings != nullptr) warnings->push_back(msg);
      std::cerr << "warning: " << msg << '\n';
    }
  }
  return out;
}

void write_csv(std::ostream& out, const Scenario& scenario) {
  std::vector<const AgentTrack*> order;
  for (const auto& t : scenario.agents) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const AgentTrack* a, const AgentTrack* b) {
    return first_present(*a) < first_present(*b);
  });
  out << kCsvHeader << '\n';
  for (std::size_t f = 0; f < scenario.total_frames; ++f) {
    for (const AgentTrack* t : order) {
      if (!t->present[f]) continue;
      out << format_number(scenario.timestamps[f]) << ',' << t->track_id << ','
          << object_type_name(t->object_type) << ',' << format_number(t->points[f].x) << ','
          << format_number(t->points[f].y) << ',' << scenario.city_name << '\n';
    }
  }
}

void save_csv(const std::filesystem::path& path, const Scenario& scenario) {
  {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    write_csv(out, scenario);
  }
  if (scenario.map_polylines.empty() && scenario.alternative_futures.empty() &&
      scenario.mode.empty()) {
    return;
  }
  nlohmann::ordered_json j;
  j["map_polylines"] = polylines_json(scenario.map_polylines);
  j["alternative_futures"] = polylines_json(scenario.alternative_futures);
  j["mode"] = scenario.mode;
  j["latent_branch"] = scenario.latent_branch;
  std::ofstream side(sidecar_path(path));
  if (!side) throw Error(ErrorCode::kIo, "cannot write " + sidecar_path(path).string());
  side << j.dump() << '\n';
}

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries) {
  nlohmann::ordered_json j;
  j["format"] = "trajcast-manifest";
  j["version"] = 1;
  j["scenarios"] = nlohmann::json::array();
  for (const auto& e : entries) j["scenarios"].push_back({{"file", e.file}, {"split", e.split}});
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<ManifestEntry> entries;
  try {
    const auto j = nlohmann::json::parse(in);
    for (const auto& e : j.at("scenarios")) {
      entries.push_back({e.at("file").get<std::string>(), e.value("split", std::string("train"))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": " + e.what());
  }
  return entries;
}

Dataset load_dataset(const std::filesystem::path& manifest, const LoadOptions& options,
                     std::vector<std::string>* warnings) {
  const auto base = manifest.parent_path();
  Dataset ds;
  for (const auto& entry : read_manifest(manifest)) {
    auto loaded = load_csv(base / entry.file, options, warnings);
    auto& dst = entry.split == "val" ? ds.val : ds.train;
    for (auto& sc : loaded) dst.push_back(std::move(sc));
  }
  return ds;
}

void save_dataset(const std::filesystem::path& dir, std::span<const Scenario> scenarios,
                  double val_fraction) {
  std::filesystem::create_directories(dir);
  const auto n_val = static_cast<std::size_t>(
      std::lround(val_fraction * static_cast<double>(scenarios.size())));
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const std::string file = scenarios[i].scenario_id + ".csv";
    save_csv(dir / file, scenarios[i]);
    entries.push_back({file, i + n_val >= scenarios.size() && n_val > 0 ? "val" : "train"});
  }
  write_manifest(dir / "manifest.json", entries);
}

ShiftPair make_shift_pair(const Scenario& scenario, std::size_t shift) {
  const std::size_t needed = scenario.history_len + shift;
  const AgentTrack& target = scenario.target();
  if (needed > scenario.total_frames ||
      std::count(target.present.begin(), target.present.begin() + static_cast<std::ptrdiff_t>(std::min(needed, target.present.size())), true) <
          static_cast<std::ptrdiff_t>(needed)) {
    throw Error(ErrorCode::kInsufficientFrames,
                "scenario " + scenario.scenario_id + " needs the target in its first " +
                    std::to_string(needed) + " frames");
  }
  ShiftPair pair{make_window(scenario, 0), make_window(scenario, shift)};
  pair.b.future.reset();
  pair.b.alternative_futures.clear();
  return pair;
}

}  // namespace trajcast
