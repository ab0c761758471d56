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

#include "trajcast/train_config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "trajcast/error.h"

namespace trajcast {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidArgument,
              "bad value '" + std::string(value) + "' for " + std::string(key));
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
    bad_value(key, value);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  bad_value(key, value);
}

const char* bool_name(bool b) { return b ? "true" : "false"; }

}  // namespace

void TrainConfig::validate(std::size_t horizon) const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (batch_size == 0) fail("batch_size must be positive");
  if (!(learning_rate >= 0.0)) fail("learning_rate must be non-negative");
  if (!(lr_decay > 0.0)) fail("lr_decay must be positive");
  if (lr_decay_every == 0) fail("lr_decay_every must be positive");
  if (modes == 0) fail("modes must be positive");
  if (hidden == 0) fail("hidden must be positive");
  if (toggles.temp && (shift == 0 || shift >= horizon)) fail("shift must satisfy 1 <= s < T");
  if (toggles.mpt && pseudo_targets == 0) fail("mpt needs pseudo_targets >= 1");
  if (!(spatial_noise >= 0.0)) fail("spatial_noise must be non-negative");
  if (!(spatial_flip_prob >= 0.0 && spatial_flip_prob <= 1.0)) {
    fail("spatial_flip_prob must be in [0, 1]");
  }
  if (ensemble_members == 0) fail("ensemble_members must be positive");
}

void set_config_value(TrainConfig& c, std::string_view key, std::string_view value) {
  if (key == "epochs") c.epochs = parse_unsigned(key, value);
  else if (key == "batch_size") c.batch_size = parse_unsigned(key, value);
  else if (key == "learning_rate") c.learning_rate = parse_double(key, value);
  else if (key == "lr_decay") c.lr_decay = parse_double(key, value);
  else if (key == "lr_decay_every") c.lr_decay_every = parse_unsigned(key, value);
  else if (key == "modes") c.modes = parse_unsigned(key, value);
  else if (key == "pseudo_targets") c.pseudo_targets = parse_unsigned(key, value);
  else if (key == "shift") c.shift = parse_unsigned(key, value);
  else if (key == "hidden") c.hidden = parse_unsigned(key, value);
  else if (key == "strategy") c.strategy = parse_strategy(value);
  else if (key == "criterion") c.criterion = parse_criterion(value);
  else if (key == "goal") c.toggles.goal = parse_bool(key, value);
  else if (key == "refine") c.toggles.refine = parse_bool(key, value);
  else if (key == "temp") c.toggles.temp = parse_bool(key, value);
  else if (key == "spatial") c.toggles.spatial = parse_bool(key, value);
  else if (key == "mpt") c.toggles.mpt = parse_bool(key, value);
  else if (key == "augment") c.augment = parse_bool(key, value);
  else if (key == "spatial_noise") c.spatial_noise = parse_double(key, value);
  else if (key == "spatial_flip_prob") c.spatial_flip_prob = parse_double(key, value);
  else if (key == "ensemble_members") c.ensemble_members = parse_unsigned(key, value);
  else if (key == "seed") c.seed = parse_unsigned(key, value);
  else throw Error(ErrorCode::kInvalidArgument, "unknown config key " + std::string(key));
}

void apply_override(TrainConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected key=value, got '" + std::string(assignment) + "'");
  }
  set_config_value(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

TrainConfig parse_train_config(std::istream& in) {
  TrainConfig config;
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
    try {
      apply_override(config, view);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

TrainConfig load_train_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return parse_train_config(in);
}

bool apply_seed_env(TrainConfig& config) {
  const char* env = std::getenv("TRAJCAST_SEED");
  if (env == nullptr || *env == '\0') return false;
  config.seed = parse_unsigned("TRAJCAST_SEED", env);
  return true;
}

std::string to_string(const TrainConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "epochs = " << c.epochs << '\n'
      << "batch_size = " << c.batch_size << '\n'
      << "learning_rate = " << c.learning_rate << '\n'
      << "lr_decay = " << c.lr_decay << '\n'
      << "lr_decay_every = " << c.lr_decay_every << '\n'
      << "modes = " << c.modes << '\n'
      << "pseudo_targets = " << c.pseudo_targets << '\n'
      << "shift = " << c.shift << '\n'
      << "hidden = " << c.hidden << '\n'
      << "strategy = " << strategy_name(c.strategy) << '\n'
      << "criterion = " << criterion_name(c.criterion) << '\n'
      << "goal = " << bool_name(c.toggles.goal) << '\n'
      << "refine = " << bool_name(c.toggles.refine) << '\n'
      << "temp = " << bool_name(c.toggles.temp) << '\n'
      << "spatial = " << bool_name(c.toggles.spatial) << '\n'
      << "mpt = " << bool_name(c.toggles.mpt) << '\n'
      << "augment = " << bool_name(c.augment) << '\n'
      << "spatial_noise = " << c.spatial_noise << '\n'
      << "spatial_flip_prob = " << c.spatial_flip_prob << '\n'
      << "ensemble_members = " << c.ensemble_members << '\n'
      << "seed = " << c.seed << '\n';
  return out.str();
}

PredictorConfig predictor_config(const TrainConfig& config, std::size_t history_len,
                                 std::size_t horizon) {
  PredictorConfig p;
  p.hidden = config.hidden;
  p.modes = config.modes;
  p.history_len = history_len;
  p.horizon = horizon;
  p.use_goal = config.toggles.goal;
  p.use_refine = config.toggles.refine;
  return p;
}

double learning_rate_at(const TrainConfig& config, std::size_t epoch) {
  const auto steps = static_cast<double>(epoch / config.lr_decay_every);
  return config.learning_rate * std::pow(config.lr_decay, steps);
}

}  // namespace trajcast
