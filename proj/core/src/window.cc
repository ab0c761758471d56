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

#include "trajcast/window.h"

#include <string>

#include "trajcast/error.h"

namespace trajcast {

ScenarioWindow make_window(const Scenario& scenario, std::size_t start) {
  const std::size_t m = scenario.history_len;
  if (start + m > scenario.total_frames) {
    throw Error(ErrorCode::kInsufficientFrames,
                "scenario " + scenario.scenario_id + ": window at frame " +
                    std::to_string(start) + " runs past the last frame");
  }
  const std::size_t now = start + m - 1;
  const AgentTrack& target = scenario.target();

  ScenarioWindow w;
  w.scenario_id = scenario.scenario_id;
  w.start = start;
  w.frame = agent_frame_at(scenario, now);

  std::vector<Waypoint> history;
  history.reserve(m);
  for (std::size_t f = start; f <= now; ++f) history.push_back(w.frame.to_local(target.points[f]));
  w.target_history = Trajectory(std::move(history));

  for (const auto& track : scenario.agents) {
    if (track.track_id == target.track_id) continue;
    std::vector<Waypoint> seen;
    for (std::size_t f = start; f <= now; ++f) {
      if (track.present[f]) seen.push_back(w.frame.to_local(track.points[f]));
    }
    if (!seen.empty()) w.neighbor_histories.emplace_back(std::move(seen));
  }
  for (const auto& lane : scenario.map_polylines) {
    w.map_polylines.push_back(to_frame(lane, w.frame));
  }

  const std::size_t t = scenario.future_len;
  if (now + t < scenario.total_frames) {
    std::vector<Waypoint> future;
    future.reserve(t);
    for (std::size_t f = now + 1; f <= now + t; ++f) {
      future.push_back(w.frame.to_local(target.points[f]));
    }
    w.future = Trajectory(std::move(future));
  }
  if (now == scenario.current_frame()) {
    for (const auto& alt : scenario.alternative_futures) {
      w.alternative_futures.push_back(to_frame(alt, w.frame));
    }
  }
  return w;
}

}  // namespace trajcast
