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

#ifndef TRAJCAST_SYNTHETIC_H_
#define TRAJCAST_SYNTHETIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "trajcast/types.h"

namespace trajcast {

enum class DrivingMode { kStraight, kTurnLeft, kTurnRight, kLaneChange, kJunction };
inline constexpr std::size_t kDrivingModeCount = 5;

std::string_view driving_mode_name(DrivingMode mode);

// Junction branches, in the order used by Scenario::latent_branch.
enum class JunctionBranch { kStraight = 0, kLeft = 1, kRight = 2 };

struct SyntheticSpec {
  std::size_t scenario_count = 100;
  // Probabilities over {straight, turn-left, turn-right, lane-change, junction}.
  std::array<double, kDrivingModeCount> mode_mix{0.2, 0.2, 0.2, 0.2, 0.2};
  std::array<double, 3> branch_probs{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double speed_min = 6.0;   // m/s
  double speed_max = 12.0;  // m/s
  double accel_max = 0.5;   // m/s^2, longitudinal acceleration drawn from [-max, max]
  double noise_sigma = 0.05;  // meters, on every observed waypoint
  std::size_t neighbors = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

// Scenarios of kTotalFrames frames at kDefaultDt in a random world pose.
// Scenario i depends only on (seed, i).
std::vector<Scenario> generate(const SyntheticSpec& spec);
Scenario generate_one(const SyntheticSpec& spec, std::size_t index);

}  // namespace trajcast

#endif  // TRAJCAST_SYNTHETIC_H_
