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

#ifndef TRAJCAST_FRAME_H_
#define TRAJCAST_FRAME_H_

#include <cstddef>

#include "trajcast/types.h"

namespace trajcast {

// Rigid 2-D frame. A world point p maps to R(rotation) * (p - origin).
struct Frame {
  Waypoint origin;
  double rotation = 0.0;  // radians, in (-pi, pi]

  Waypoint to_local(const Waypoint& world) const;
  Waypoint to_world(const Waypoint& local) const;
  // Rotation only, for direction vectors and gradients.
  Waypoint rotate_to_local(const Waypoint& v) const;
  Waypoint rotate_to_world(const Waypoint& v) const;
};

inline constexpr double kStationaryThreshold = 1e-6;

double normalize_angle(double radians);

// Frame centred on the target at t = 0 with the t = -1 -> t = 0 displacement
// along +x. Stationary targets get rotation 0.
Frame agent_frame(const Scenario& scenario);
// Same, with frame_index taking the role of t = 0.
Frame agent_frame_at(const Scenario& scenario, std::size_t frame_index);

Trajectory to_frame(const Trajectory& traj, const Frame& frame);
Trajectory from_frame(const Trajectory& traj, const Frame& frame);

// Expresses every track, polyline and alternative future in `frame`.
Scenario to_frame(const Scenario& scenario, const Frame& frame);

}  // namespace trajcast

#endif  // TRAJCAST_FRAME_H_
