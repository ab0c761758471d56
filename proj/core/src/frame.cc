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

#include "trajcast/frame.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "trajcast/error.h"

namespace trajcast {

Waypoint Frame::rotate_to_local(const Waypoint& v) const {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Waypoint Frame::rotate_to_world(const Waypoint& v) const {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

Waypoint Frame::to_local(const Waypoint& world) const {
  return rotate_to_local({world.x - origin.x, world.y - origin.y});
}

Waypoint Frame::to_world(const Waypoint& local) const {
  const Waypoint r = rotate_to_world(local);
  return {r.x + origin.x, r.y + origin.y};
}

double normalize_angle(double radians) {
  double a = std::remainder(radians, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

Frame agent_frame_at(const Scenario& scenario, std::size_t frame_index) {
  const AgentTrack& target = scenario.target();
  if (frame_index < 1 || frame_index >= target.points.size() ||
      !target.present[frame_index] || !target.present[frame_index - 1]) {
    throw Error(ErrorCode::kMissingTargetFrame,
                "scenario " + scenario.scenario_id + ": target absent at frame " +
                    std::to_string(frame_index) + " or the one before");
  }
  const Waypoint& prev = target.points[frame_index - 1];
  const Waypoint& now = target.points[frame_index];
  Frame frame{now, 0.0};
  const double dx = now.x - prev.x;
  const double dy = now.y - prev.y;
  if (std::hypot(dx, dy) >= kStationaryThreshold) {
    frame.rotation = normalize_angle(-std::atan2(dy, dx));
  }
  return frame;
}

Frame agent_frame(const Scenario& scenario) {
  return agent_frame_at(scenario, scenario.current_frame());
}

Trajectory to_frame(const Trajectory& traj, const Frame& frame) {
  std::vector<Waypoint> out;
  out.reserve(traj.size());
  for (const auto& p : traj.points()) out.push_back(frame.to_local(p));
  return Trajectory(std::move(out), traj.dt());
}

Trajectory from_frame(const Trajectory& traj, const Frame& frame) {
  std::vector<Waypoint> out;
  out.reserve(traj.size());
  for (const auto& p : traj.points()) out.push_back(frame.to_world(p));
  return Trajectory(std::move(out), traj.dt());
}

Scenario to_frame(const Scenario& scenario, const Frame& frame) {
  Scenario out = scenario;
  for (auto& track : out.agents) {
    for (auto& p : track.points) p = frame.to_local(p);
  }
  for (auto& lane : out.map_polylines) lane = to_frame(lane, frame);
  for (auto& alt : out.alternative_futures) alt = to_frame(alt, frame);
  return out;
}

}  // namespace trajcast
