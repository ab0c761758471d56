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

#ifndef TRAJCAST_AUGMENT_H_
#define TRAJCAST_AUGMENT_H_

#include <cstdint>

#include "trajcast/types.h"

namespace trajcast {

struct AugmentSpec {
  double flip_prob = 0.5;
  double scale_min = 0.8;
  double scale_max = 1.25;
  // Uniform rotation jitter in [-max, max] about the coordinate origin. Only
  // meaningful for scenes that are not re-centred afterwards.
  double max_heading_jitter = 0.0;
};

// A sampled augmentation: reflect about the x-axis, rotate, then scale.
struct AugmentTransform {
  bool flip = false;
  double rotation = 0.0;
  double scale = 1.0;

  Waypoint apply(const Waypoint& p) const;
  Trajectory apply(const Trajectory& traj) const;
  Scenario apply(const Scenario& scenario) const;
};

AugmentTransform sample_augmentation(const AugmentSpec& spec, std::uint64_t seed);

Scenario augment(const Scenario& scenario, const AugmentSpec& spec,
                 std::uint64_t seed);

}  // namespace trajcast

#endif  // TRAJCAST_AUGMENT_H_
