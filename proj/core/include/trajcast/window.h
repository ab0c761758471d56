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

#ifndef TRAJCAST_WINDOW_H_
#define TRAJCAST_WINDOW_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trajcast/frame.h"
#include "trajcast/types.h"

namespace trajcast {

// The model's view of a scenario: `history_len` frames starting at `start`,
// everything expressed in the agent frame of the window's last frame.
struct ScenarioWindow {
  std::string scenario_id;
  std::size_t start = 0;
  Frame frame;
  Trajectory target_history{{Waypoint{}}};
  // Observed points of the other tracks inside the window; tracks never seen
  // in the window are dropped.
  std::vector<Trajectory> neighbor_histories;
  std::vector<Trajectory> map_polylines;
  std::optional<Trajectory> future;
  std::vector<Trajectory> alternative_futures;
};

// Builds the window whose history covers frames [start, start + history_len).
// The future is attached when the scenario holds future_len frames after it.
ScenarioWindow make_window(const Scenario& scenario, std::size_t start);

}  // namespace trajcast

#endif  // TRAJCAST_WINDOW_H_
