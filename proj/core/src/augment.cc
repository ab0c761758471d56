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

#include "trajcast/augment.h"

#include <cmath>
#include <random>
#include <vector>

namespace trajcast {

Waypoint AugmentTransform::apply(const Waypoint& p) const {
  const double y = flip ? -p.y : p.y;
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return {scale * (c * p.x - s * y), scale * (s * p.x + c * y)};
}

Trajectory AugmentTransform::apply(const Trajectory& traj) const {
  std::vector<Waypoint> out;
  out.reserve(traj.size());
  for (const auto& p : traj.points()) out.push_back(apply(p));
  return Trajectory(std::move(out), traj.dt());
}

Scenario AugmentTransform::apply(const Scenario& scenario) const {
  Scenario out = scenario;
  for (auto& track : out.agents) {
    for (auto& p : track.points) p = apply(p);
  }
  for (auto& lane : out.map_polylines) lane = apply(lane);
  for (auto& alt : out.alternative_futures) alt = apply(alt);
  return out;
}

AugmentTransform sample_augmentation(const AugmentSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AugmentTransform t;
  t.flip = unit(rng) < spec.flip_prob;
  const double u_scale = unit(rng);
  t.scale = spec.scale_min + (spec.scale_max - spec.scale_min) * u_scale;
  const double u_rot = unit(rng);
  t.rotation = spec.max_heading_jitter * (2.0 * u_rot - 1.0);
  return t;
}

Scenario augment(const Scenario& scenario, const AugmentSpec& spec,
                 std::uint64_t seed) {
  return sample_augmentation(spec, seed).apply(scenario);
}

}  // namespace trajcast
