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

#ifndef TRAJCAST_TRAIN_CONFIG_H_
#define TRAJCAST_TRAIN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "trajcast/matching.h"
#include "trajcast/predictor.h"

namespace trajcast {

struct Toggles {
  bool goal = true;
  bool refine = true;
  bool temp = true;
  bool spatial = true;
  bool mpt = false;
};

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  double lr_decay = 0.1;
  std::size_t lr_decay_every = 15;  // epochs
  std::size_t modes = 6;            // K
  std::size_t pseudo_targets = 6;   // J
  std::size_t shift = 1;            // s
  std::size_t hidden = 64;
  MatchStrategy strategy = MatchStrategy::kBidirectional;
  Criterion criterion = Criterion::kFde;
  Toggles toggles;
  bool augment = true;
  double spatial_noise = 0.2;      // meters
  double spatial_flip_prob = 0.5;
  std::size_t ensemble_members = 4;
  std::uint64_t seed = 0;

  // Throws kInvalidArgument. `horizon` bounds the shift.
  void validate(std::size_t horizon = kFutureLen) const;
};

// Plain "key = value" lines; '#' starts a comment. Keys are the field names
// above, with the toggles spelled goal, refine, temp, spatial, mpt.
TrainConfig parse_train_config(std::istream& in);
TrainConfig load_train_config(const std::filesystem::path& path);
void set_config_value(TrainConfig& config, std::string_view key, std::string_view value);
// "key=value".
void apply_override(TrainConfig& config, std::string_view assignment);
// Replaces the seed with $TRAJCAST_SEED when it is set. Returns whether it was.
bool apply_seed_env(TrainConfig& config);
std::string to_string(const TrainConfig& config);

PredictorConfig predictor_config(const TrainConfig& config, std::size_t history_len = kHistoryLen,
                                 std::size_t horizon = kFutureLen);

// Step decay: learning_rate * lr_decay^floor(epoch / lr_decay_every).
double learning_rate_at(const TrainConfig& config, std::size_t epoch);

}  // namespace trajcast

#endif  // TRAJCAST_TRAIN_CONFIG_H_
