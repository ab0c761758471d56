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

#include "trajcast/grid.h"

#include <istream>
#include <map>
#include <ostream>

#include "trajcast/dataset.h"
#include "trajcast/error.h"
#include "trajcast/harness.h"

namespace trajcast {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const char* mark(bool on) { return on ? "x" : ""; }

GridCell toggle_cell(const TrainConfig& base, Toggles t) {
  GridCell cell{{{"goal", mark(t.goal)},
                 {"refine", mark(t.refine)},
                 {"temp", mark(t.temp)},
                 {"spatial", mark(t.spatial)},
                 {"mpt", mark(t.mpt)}},
                base};
  cell.config.toggles = t;
  return cell;
}

}  // namespace

GridSpec parse_grid_spec(std::istream& in) {
  GridSpec spec;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key == "preset") {
      spec.preset = std::string(value);
    } else {
      set_config_value(spec.base, key, value);
    }
  }
  return spec;
}

std::vector<GridCell> grid_cells(const GridSpec& spec) {
  const TrainConfig& base = spec.base;
  std::vector<GridCell> cells;
  if (spec.preset == "single") {
    cells.push_back({{}, base});
  } else if (spec.preset == "modules") {
    cells.push_back(toggle_cell(base, {false, false, false, false, false}));
    cells.push_back(toggle_cell(base, {true, false, false, false, false}));
    cells.push_back(toggle_cell(base, {true, true, false, false, false}));
    cells.push_back(toggle_cell(base, {true, true, true, false, false}));
    cells.push_back(toggle_cell(base, {true, true, true, true, false}));
    cells.push_back(toggle_cell(base, {true, true, false, false, true}));
    cells.push_back(toggle_cell(base, {true, true, true, true, true}));
  } else if (spec.preset == "matching") {
    for (auto strategy : {MatchStrategy::kForward, MatchStrategy::kBackward,
                          MatchStrategy::kBidirectional, MatchStrategy::kHungarian}) {
      for (auto criterion : {Criterion::kAde, Criterion::kFde}) {
        GridCell cell{{{"strategy", std::string(strategy_name(strategy))},
                       {"similarity", std::string(criterion_name(criterion))}},
                      base};
        cell.config.strategy = strategy;
        cell.config.criterion = criterion;
        cell.config.toggles.temp = true;
        cell.config.toggles.mpt = false;
        cells.push_back(std::move(cell));
      }
    }
  } else if (spec.preset == "shift") {
    for (std::size_t s = 1; s <= 4; ++s) {
      GridCell cell{{{"shift", std::to_string(s)}}, base};
      cell.config.shift = s;
      cell.config.toggles.temp = true;
      cells.push_back(std::move(cell));
    }
  } else if (spec.preset == "targets") {
    for (std::size_t j : {1, 3, 6}) {
      GridCell cell{{{"pseudo_targets", std::to_string(j)}}, base};
      cell.config.pseudo_targets = j;
      cell.config.toggles.mpt = true;
      cells.push_back(std::move(cell));
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown grid preset " + spec.preset);
  }
  return cells;
}

std::vector<GridRow> run_grid(const GridSpec& spec, std::span<const Scenario> train_set,
                              std::span<const Scenario> eval_set, std::ostream* log) {
  const auto cells = grid_cells(spec);
  std::optional<EnsembleBank> bank;
  std::map<std::size_t, PseudoTargetMap> pseudo_by_j;
  std::vector<GridRow> rows;
  for (const auto& cell : cells) {
    const PseudoTargetMap* pseudo = nullptr;
    if (cell.config.toggles.mpt) {
      if (!bank) {
        const auto members = train_ensemble(spec.base, train_set);
        bank = ensemble_predictions(members, train_set);
      }
      const std::size_t j = cell.config.pseudo_targets;
      if (!pseudo_by_j.count(j)) {
        pseudo_by_j[j] = to_map(cluster_bank(*bank, j, spec.base.seed));
      }
      pseudo = &pseudo_by_j[j];
    }
    const TrainResult trained = train(cell.config, train_set, pseudo);
    GridRow row{cell, evaluate(trained.predictor, eval_set).report, 0.0, std::nullopt};
    const PredictFn fn = predict_fn(trained.predictor);
    row.jitter = jitter(fn, eval_set, cell.config.shift);
    const Coverage cov = junction_coverage(fn, eval_set);
    if (cov.branches > 0) row.coverage = cov.value();
    if (log != nullptr) {
      *log << "cell " << rows.size() << ": minFDE_6=" << row.report.minFDE_6
           << " jitter=" << row.jitter << '\n';
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_grid_csv(std::ostream& out, std::span<const GridRow> rows) {
  if (rows.empty()) return;
  for (const auto& [name, value] : rows.front().cell.labels) out << name << ',';
  out << "minADE_1,minFDE_1,MR_1,minADE_6,minFDE_6,MR_6,brier_minFDE_6,jitter,coverage\n";
  for (const auto& row : rows) {
    for (const auto& [name, value] : row.cell.labels) out << value << ',';
    const MetricReport& r = row.report;
    out << format_number(r.minADE_1) << ',' << format_number(r.minFDE_1) << ','
        << format_number(r.MR_1) << ',' << format_number(r.minADE_6) << ','
        << format_number(r.minFDE_6) << ',' << format_number(r.MR_6) << ','
        << format_number(r.brier_minFDE_6) << ',' << format_number(row.jitter) << ','
        << (row.coverage ? format_number(*row.coverage) : std::string()) << '\n';
  }
}

}  // namespace trajcast
