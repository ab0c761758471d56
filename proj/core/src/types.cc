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

#include "trajcast/types.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "trajcast/error.h"

namespace trajcast {

bool is_finite(const Waypoint& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

double distance(const Waypoint& a, const Waypoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Trajectory::Trajectory(std::vector<Waypoint> points, double dt)
    : points_(std::move(points)), dt_(dt) {
  if (points_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "trajectory needs at least one waypoint");
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw Error(ErrorCode::kInvalidArgument, "trajectory dt must be positive");
  }
  for (const auto& p : points_) {
    if (!is_finite(p)) {
      throw Error(ErrorCode::kNonFinite, "trajectory waypoint is not finite");
    }
  }
}

std::string_view object_type_name(ObjectType type) {
  switch (type) {
    case ObjectType::kAgent: return "AGENT";
    case ObjectType::kAv: return "AV";
    case ObjectType::kOther: return "OTHERS";
  }
  return "OTHERS";
}

ObjectType parse_object_type(std::string_view name) {
  if (name == "AGENT") return ObjectType::kAgent;
  if (name == "AV") return ObjectType::kAv;
  if (name == "OTHERS" || name == "OTHER") return ObjectType::kOther;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown object type '" + std::string(name) + "'");
}

std::size_t AgentTrack::observed_count() const {
  return static_cast<std::size_t>(std::count(present.begin(), present.end(), true));
}

void pad_track(AgentTrack& track) {
  const auto first = std::find(track.present.begin(), track.present.end(), true);
  if (first == track.present.end()) return;
  Waypoint last = track.points[static_cast<std::size_t>(first - track.present.begin())];
  for (std::size_t i = 0; i < track.points.size(); ++i) {
    if (track.present[i]) {
      last = track.points[i];
    } else {
      track.points[i] = last;
    }
  }
}

const AgentTrack& Scenario::target() const {
  for (const auto& track : agents) {
    if (track.track_id == target_track_id) return track;
  }
  throw Error(ErrorCode::kMissingAgent,
              "scenario " + scenario_id + " has no track " + target_track_id);
}

void Scenario::validate() const {
  if (history_len < 2) {
    throw Error(ErrorCode::kInvalidArgument, "history_len must be at least 2");
  }
  if (history_len + future_len > total_frames) {
    throw Error(ErrorCode::kWrongFrameCount,
                "scenario " + scenario_id + ": history + future exceeds total frames");
  }
  if (timestamps.size() != total_frames) {
    throw Error(ErrorCode::kWrongFrameCount,
                "scenario " + scenario_id + ": timestamp count differs from total_frames");
  }
  std::size_t agent_count = 0;
  for (const auto& track : agents) {
    if (track.points.size() != total_frames || track.present.size() != total_frames) {
      throw Error(ErrorCode::kWrongFrameCount,
                  "scenario " + scenario_id + ": track " + track.track_id +
                      " does not span all frames");
    }
    for (const auto& p : track.points) {
      if (!is_finite(p)) {
        throw Error(ErrorCode::kNonFinite,
                    "scenario " + scenario_id + ": non-finite waypoint");
      }
    }
    if (track.object_type == ObjectType::kAgent) {
      ++agent_count;
      if (track.track_id != target_track_id) {
        throw Error(ErrorCode::kMissingAgent,
                    "scenario " + scenario_id + ": AGENT track is not the target");
      }
    }
  }
  if (agent_count != 1) {
    throw Error(ErrorCode::kMissingAgent,
                "scenario " + scenario_id + " must contain exactly one AGENT track");
  }
  const auto& t = target();
  const std::size_t now = current_frame();
  if (!t.present[now] || !t.present[now - 1]) {
    throw Error(ErrorCode::kMissingTargetFrame,
                "scenario " + scenario_id + ": target missing at t=-1 or t=0");
  }
}

PredictionSet::PredictionSet(std::vector<Trajectory> trajectories,
                             std::vector<double> scores)
    : trajectories_(std::move(trajectories)), scores_(std::move(scores)) {
  if (trajectories_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "prediction set needs K >= 1");
  }
  if (scores_.size() != trajectories_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one score per trajectory required");
  }
  const std::size_t horizon = trajectories_.front().size();
  for (const auto& t : trajectories_) {
    if (t.size() != horizon) {
      throw Error(ErrorCode::kLengthMismatch, "prediction trajectories differ in length");
    }
  }
  double sum = 0.0;
  for (double s : scores_) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "scores must be finite and nonnegative");
    }
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument, "scores must sum to 1");
  }
}

TargetSet::TargetSet(std::vector<Trajectory> targets, std::vector<double> confidences)
    : targets_(std::move(targets)), confidences_(std::move(confidences)) {
  if (targets_.empty() || targets_.size() != confidences_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "target set needs one confidence per target");
  }
  if (confidences_[0] != 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "ground-truth confidence must be exactly 1");
  }
  for (double c : confidences_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "confidences must lie in [0, 1]");
    }
  }
  const std::size_t horizon = targets_.front().size();
  for (const auto& t : targets_) {
    if (t.size() != horizon) {
      throw Error(ErrorCode::kLengthMismatch, "targets differ in length");
    }
  }
}

TargetSet TargetSet::ground_truth_only(const Trajectory& gt) {
  return TargetSet({gt}, {1.0});
}

}  // namespace trajcast
