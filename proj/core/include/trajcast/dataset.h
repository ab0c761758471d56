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

#ifndef TRAJCAST_DATASET_H_
#define TRAJCAST_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trajcast/types.h"
#include "trajcast/window.h"

namespace trajcast {

inline constexpr std::string_view kCsvHeader = "TIMESTAMP,TRACK_ID,OBJECT_TYPE,X,Y,CITY_NAME";

struct LoadOptions {
  std::size_t history_len = kHistoryLen;
  std::size_t future_len = kFutureLen;
  // Warn and skip files that fail validation instead of throwing.
  bool skip_invalid = false;
};

// One scenario per CSV. Frame indices are the rank of each distinct
// timestamp. A sibling "<stem>.map.json" supplies lane centerlines and
// synthetic annotations when present.
Scenario parse_csv(std::istream& in, const std::string& scenario_id,
                   const LoadOptions& options = {});
// `path` is a single CSV file or a directory of them (sorted by name).
std::vector<Scenario> load_csv(const std::filesystem::path& path, const LoadOptions& options = {},
                               std::vector<std::string>* warnings = nullptr);

// Coordinates and timestamps are written with 9 significant digits.
void write_csv(std::ostream& out, const Scenario& scenario);
void save_csv(const std::filesystem::path& path, const Scenario& scenario);
std::string format_number(double value);

struct ManifestEntry {
  std::string file;   // relative to the manifest's directory
  std::string split;  // "train" or "val"
};

struct Dataset {
  std::vector<Scenario> train;
  std::vector<Scenario> val;
};

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& manifest, const LoadOptions& options = {},
                     std::vector<std::string>* warnings = nullptr);
// Writes one CSV per scenario plus manifest.json into `dir`; the last
// round(val_fraction * n) scenarios form the validation split.
void save_dataset(const std::filesystem::path& dir, std::span<const Scenario> scenarios,
                  double val_fraction);

struct ShiftPair {
  ScenarioWindow a;  // frames [0, M), carries the ground-truth future
  ScenarioWindow b;  // frames [s, M + s), no future attached
};

// Throws kInsufficientFrames unless the target is observed in all of the
// first M + s frames.
ShiftPair make_shift_pair(const Scenario& scenario, std::size_t shift);

}  // namespace trajcast

#endif  // TRAJCAST_DATASET_H_
