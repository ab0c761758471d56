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

#ifndef TRAJCAST_GRID_H_
#define TRAJCAST_GRID_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trajcast/metrics.h"
#include "trajcast/train_config.h"
#include "trajcast/types.h"

namespace trajcast {

// Presets:
//   single    one cell with the base config
//   modules   goal / refine / temp / spatial / mpt ladder, 7 cells
//   matching  {forward, backward, bidirectional, hungarian} x {ade, fde}, mpt off
//   shift     s in {1, 2, 3, 4}
//   targets   J in {1, 3, 6} with mpt on
struct GridSpec {
  std::string preset = "single";
  TrainConfig base;
};

// "preset = ..." plus any TrainConfig key.
GridSpec parse_grid_spec(std::istream& in);

struct GridCell {
  std::vector<std::pair<std::string, std::string>> labels;
  TrainConfig config;
};

std::vector<GridCell> grid_cells(const GridSpec& spec);

struct GridRow {
  GridCell cell;
  MetricReport report;
  double jitter = 0.0;
  std::optional<double> coverage;  // only when the evaluation set has junction branches
};

// Trains every cell on `train_set` and evaluates it on `eval_set`. Cells
// with mpt share one ensemble trained from the base config.
std::vector<GridRow> run_grid(const GridSpec& spec, std::span<const Scenario> train_set,
                              std::span<const Scenario> eval_set, std::ostream* log = nullptr);

void write_grid_csv(std::ostream& out, std::span<const GridRow> rows);

}  // namespace trajcast

#endif  // TRAJCAST_GRID_H_
