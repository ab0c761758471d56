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

#ifndef TRAJCAST_TYPES_H_
#define TRAJCAST_TYPES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trajcast {

inline constexpr double kDefaultDt = 0.1;
inline constexpr std::size_t kHistoryLen = 20;
inline constexpr std::size_t kFutureLen = 30;
inline constexpr std::size_t kTotalFrames = kHistoryLen + kFutureLen;

struct Waypoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

bool is_finite(const Waypoint& p);
double distance(const Waypoint& a, const Waypoint& b);

// Ordered 2-D waypoints at a fixed timestep. Construction validates; the
// object is immutable afterwards.
class Trajectory {
 public:
  explicit Trajectory(std::vector<Waypoint> points, double dt = kDefaultDt);

  const std::vector<Waypoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Waypoint& operator[](std::size_t i) const { return points_[i]; }
  const Waypoint& front() const { return points_.front(); }
  const Waypoint& back() const { return points_.back(); }
  double dt() const { return dt_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<Waypoint> points_;
  double dt_;
};

enum class ObjectType { kAgent, kAv, kOther };

std::string_view object_type_name(ObjectType type);  // "AGENT", "AV", "OTHERS"
ObjectType parse_object_type(std::string_view name);

struct AgentTrack {
  std::string track_id;
  ObjectType object_type = ObjectType::kOther;
  // One entry per scenario frame. Frames where the track is absent repeat
  // the last observed waypoint (or the first observed one before it appears)
  // and carry present == false.
  std::vector<Waypoint> points;
  std::vector<bool> present;

  std::size_t observed_count() const;
};

// One prediction problem. Frame index history_len - 1 is t = 0.
struct Scenario {
  std::string scenario_id;
  std::string city_name = "SYN";
  std::vector<double> timestamps;
  std::vector<AgentTrack> agents;
  std::vector<Trajectory> map_polylines;
  std::string target_track_id;
  std::size_t history_len = kHistoryLen;
  std::size_t future_len = kFutureLen;
  std::size_t total_frames = kTotalFrames;

  // Synthetic-only annotations: generating mode, the sampled branch, and the
  // noise-free future for every branch the agent could have taken.
  std::string mode;
  int latent_branch = -1;
  std::vector<Trajectory> alternative_futures;

  const AgentTrack& target() const;
  std::size_t current_frame() const { return history_len - 1; }

  // Throws Error on the first violated invariant.
  void validate() const;
};

// Fills padded frames of a partially observed track by repeating the last
// observed waypoint (leading gaps take the first observed one).
void pad_track(AgentTrack& track);

// K trajectories of equal length with a probability per trajectory.
class PredictionSet {
 public:
  PredictionSet(std::vector<Trajectory> trajectories, std::vector<double> scores);

  const std::vector<Trajectory>& trajectories() const { return trajectories_; }
  const std::vector<double>& scores() const { return scores_; }
  std::size_t size() const { return trajectories_.size(); }
  std::size_t horizon() const { return trajectories_.front().size(); }

 private:
  std::vector<Trajectory> trajectories_;
  std::vector<double> scores_;
};

// Ground truth at index 0 (confidence exactly 1) followed by pseudo targets.
class TargetSet {
 public:
  TargetSet(std::vector<Trajectory> targets, std::vector<double> confidences);

  static TargetSet ground_truth_only(const Trajectory& gt);

  const std::vector<Trajectory>& targets() const { return targets_; }
  const std::vector<double>& confidences() const { return confidences_; }
  std::size_t size() const { return targets_.size(); }

 private:
  std::vector<Trajectory> targets_;
  std::vector<double> confidences_;
};

}  // namespace trajcast

#endif  // TRAJCAST_TYPES_H_
