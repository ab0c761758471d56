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

// Command-line front end: data generation, training, evaluation, ensembling,
// ablation grids and SVG reports.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trajcast/dataset.h"
#include "trajcast/ensemble.h"
#include "trajcast/error.h"
#include "trajcast/grid.h"
#include "trajcast/harness.h"
#include "trajcast/svg_report.h"
#include "trajcast/synthetic.h"
#include "trajcast/train_config.h"

namespace {

using trajcast::Error;
using trajcast::ErrorCode;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

std::vector<trajcast::Scenario> select_split(trajcast::Dataset ds, const std::string& split) {
  if (split == "train") return std::move(ds.train);
  if (split == "val") return std::move(ds.val);
  if (split == "all") {
    for (auto& sc : ds.val) ds.train.push_back(std::move(sc));
    return std::move(ds.train);
  }
  throw Error(ErrorCode::kInvalidArgument, "split must be train, val or all");
}

trajcast::TrainConfig build_config(const std::string& file, const std::vector<std::string>& sets) {
  trajcast::TrainConfig config = file.empty() ? trajcast::TrainConfig{}
                                              : trajcast::load_train_config(file);
  trajcast::apply_seed_env(config);
  for (const auto& s : sets) trajcast::apply_override(config, s);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trajcast: multi-modal trajectory forecasting toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset (CSV + manifest)");
  trajcast::SyntheticSpec spec;
  std::string gen_out;
  std::string mode_mix;
  std::string branch_probs;
  double val_fraction = 0.2;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--count", spec.scenario_count, "Number of scenarios");
  gen->add_option("--seed", spec.seed, "RNG seed");
  gen->add_option("--mode-mix", mode_mix,
                  "Probabilities for straight,left,right,lane-change,junction");
  gen->add_option("--branch-probs", branch_probs, "Junction branch probabilities straight,left,right");
  gen->add_option("--speed-min", spec.speed_min, "m/s");
  gen->add_option("--speed-max", spec.speed_max, "m/s");
  gen->add_option("--accel-max", spec.accel_max, "m/s^2");
  gen->add_option("--noise", spec.noise_sigma, "Waypoint noise sigma, meters");
  gen->add_option("--neighbors", spec.neighbors, "Neighbor tracks per scenario");
  gen->add_option("--val-fraction", val_fraction, "Fraction held out as the val split");

  // train
  auto* tr = app.add_subcommand("train", "Train a predictor");
  std::string config_file;
  std::vector<std::string> sets;
  std::string data;
  std::string pseudo_file;
  std::string checkpoint_out;
  std::string log_file;
  tr->add_option("--config", config_file, "key = value config file");
  tr->add_option("--set", sets, "Override, key=value (repeatable)");
  tr->add_option("--data", data, "Dataset manifest")->required();
  tr->add_option("--pseudo-targets", pseudo_file, "Pseudo-target JSONL (needed when mpt is on)");
  tr->add_option("--out", checkpoint_out, "Checkpoint path")->required();
  tr->add_option("--log", log_file, "Training log (JSON lines); stdout when omitted");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Evaluate a checkpoint");
  std::string checkpoint;
  std::string split = "val";
  std::string report_out;
  std::string dump_out;
  ev->add_option("--checkpoint", checkpoint)->required();
  ev->add_option("--data", data, "Dataset manifest")->required();
  ev->add_option("--split", split, "train, val or all");
  ev->add_option("--report", report_out, "Report JSON; stdout when omitted");
  ev->add_option("--dump", dump_out, "Prediction dump (JSON lines)");

  // jitter
  auto* ji = app.add_subcommand("jitter", "Temporal jitter score of a checkpoint");
  std::size_t shift = 1;
  ji->add_option("--checkpoint", checkpoint)->required();
  ji->add_option("--data", data, "Dataset manifest")->required();
  ji->add_option("--split", split, "train, val or all");
  ji->add_option("--shift", shift, "Window shift in frames");

  // ensemble-dump
  auto* ed = app.add_subcommand("ensemble-dump", "Dump member predictions into a bank file");
  std::vector<std::string> checkpoints;
  std::string bank_out;
  std::string dump_split = "train";
  ed->add_option("--checkpoint", checkpoints, "Member checkpoints (repeatable)")->required();
  ed->add_option("--data", data, "Dataset manifest")->required();
  ed->add_option("--split", dump_split, "train, val or all");
  ed->add_option("--out", bank_out, "Bank JSONL")->required();

  // cluster
  auto* cl = app.add_subcommand("cluster", "Cluster a bank into pseudo targets");
  std::string bank_in;
  std::string pseudo_out;
  std::size_t clusters = 6;
  std::uint64_t cluster_seed = 0;
  cl->add_option("--bank", bank_in, "Bank JSONL")->required();
  cl->add_option("--clusters", clusters, "J");
  cl->add_option("--seed", cluster_seed, "k-means seed");
  cl->add_option("--out", pseudo_out, "Pseudo-target JSONL")->required();

  // grid
  auto* gr = app.add_subcommand("grid", "Run an ablation grid");
  std::string grid_file;
  std::string preset;
  std::string grid_out;
  gr->add_option("--spec", grid_file, "Grid spec file (preset = ..., config keys)");
  gr->add_option("--preset", preset, "single, modules, matching, shift or targets");
  gr->add_option("--set", sets, "Base config override, key=value (repeatable)");
  gr->add_option("--data", data, "Dataset manifest")->required();
  gr->add_option("--out", grid_out, "CSV path; stdout when omitted");

  // report
  auto* rp = app.add_subcommand("report", "SVG line charts of training loss and grid jitter");
  std::vector<std::string> logs;
  std::string grid_csv;
  std::string report_dir = ".";
  rp->add_option("--log", logs, "Training logs (repeatable)");
  rp->add_option("--grid", grid_csv, "Grid CSV with a jitter column");
  rp->add_option("--out-dir", report_dir, "Directory for loss.svg and jitter.svg");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!mode_mix.empty()) {
        const auto v = parse_list(mode_mix);
        if (v.size() != spec.mode_mix.size()) {
          throw Error(ErrorCode::kInvalidArgument, "--mode-mix needs 5 values");
        }
        std::copy(v.begin(), v.end(), spec.mode_mix.begin());
      }
      if (!branch_probs.empty()) {
        const auto v = parse_list(branch_probs);
        if (v.size() != spec.branch_probs.size()) {
          throw Error(ErrorCode::kInvalidArgument, "--branch-probs needs 3 values");
        }
        std::copy(v.begin(), v.end(), spec.branch_probs.begin());
      }
      const auto scenarios = trajcast::generate(spec);
      trajcast::save_dataset(gen_out, scenarios, val_fraction);
      std::cout << "wrote " << scenarios.size() << " scenarios to " << gen_out << '\n';
    } else if (*tr) {
      const auto config = build_config(config_file, sets);
      const auto ds = trajcast::load_dataset(data);
      trajcast::PseudoTargetMap pseudo;
      if (!pseudo_file.empty()) {
        std::ifstream in(pseudo_file);
        if (!in) throw Error(ErrorCode::kIo, "cannot open " + pseudo_file);
        pseudo = trajcast::read_pseudo_targets(in);
      }
      std::ofstream log_stream;
      std::ostream* log = &std::cout;
      if (!log_file.empty()) {
        log_stream = open_out(log_file);
        log = &log_stream;
      }
      const auto result =
          trajcast::train(config, ds.train, pseudo_file.empty() ? nullptr : &pseudo, log);
      trajcast::save_checkpoint(checkpoint_out, result.predictor, config);
    } else if (*ev) {
      const auto ckpt = trajcast::load_checkpoint(checkpoint);
      const auto scenarios = select_split(trajcast::load_dataset(data), split);
      const auto result = trajcast::evaluate(ckpt.predictor, scenarios);
      if (report_out.empty()) {
        std::cout << trajcast::to_json(result.report) << '\n';
      } else {
        open_out(report_out) << trajcast::to_json(result.report) << '\n';
      }
      if (!dump_out.empty()) {
        auto out = open_out(dump_out);
        trajcast::write_prediction_dump(out, result, "eval");
      }
    } else if (*ji) {
      const auto ckpt = trajcast::load_checkpoint(checkpoint);
      const auto scenarios = select_split(trajcast::load_dataset(data), split);
      const double value = trajcast::jitter(trajcast::predict_fn(ckpt.predictor), scenarios, shift);
      std::cout << "{\"jitter\":" << trajcast::format_number(value) << ",\"shift\":" << shift
                << "}\n";
    } else if (*ed) {
      const auto scenarios = select_split(trajcast::load_dataset(data), dump_split);
      auto out = open_out(bank_out);
      for (std::size_t m = 0; m < checkpoints.size(); ++m) {
        const auto ckpt = trajcast::load_checkpoint(checkpoints[m]);
        trajcast::write_prediction_dump(out, trajcast::evaluate(ckpt.predictor, scenarios),
                                        "m" + std::to_string(m));
      }
    } else if (*cl) {
      std::ifstream in(bank_in);
      if (!in) throw Error(ErrorCode::kIo, "cannot open " + bank_in);
      trajcast::EnsembleBank bank;
      trajcast::read_bank_records(in, bank);
      const auto records = trajcast::cluster_bank(bank, clusters, cluster_seed);
      auto out = open_out(pseudo_out);
      trajcast::write_pseudo_targets(out, records);
    } else if (*gr) {
      trajcast::GridSpec grid;
      if (!grid_file.empty()) {
        std::ifstream in(grid_file);
        if (!in) throw Error(ErrorCode::kIo, "cannot open " + grid_file);
        grid = trajcast::parse_grid_spec(in);
      }
      trajcast::apply_seed_env(grid.base);
      if (!preset.empty()) grid.preset = preset;
      for (const auto& s : sets) trajcast::apply_override(grid.base, s);
      const auto ds = trajcast::load_dataset(data);
      const auto& eval_set = ds.val.empty() ? ds.train : ds.val;
      const auto rows = trajcast::run_grid(grid, ds.train, eval_set, &std::cerr);
      if (grid_out.empty()) {
        trajcast::write_grid_csv(std::cout, rows);
      } else {
        auto out = open_out(grid_out);
        trajcast::write_grid_csv(out, rows);
      }
    } else if (*rp) {
      std::vector<trajcast::Series> loss;
      for (const auto& path : logs) {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
        loss.push_back(trajcast::log_series(in, "total", path));
      }
      if (!loss.empty()) {
        open_out(report_dir + "/loss.svg")
            << trajcast::svg_line_chart("Training loss", "epoch", "total loss", loss);
      }
      if (!grid_csv.empty()) {
        std::ifstream in(grid_csv);
        if (!in) throw Error(ErrorCode::kIo, "cannot open " + grid_csv);
        const std::vector<trajcast::Series> jitter{trajcast::grid_series(in, "jitter")};
        open_out(report_dir + "/jitter.svg")
            << trajcast::svg_line_chart("Jitter per grid cell", "cell", "jitter (m)", jitter);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
