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

#include "trajcast/synthetic.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "trajcast/error.h"
#include "trajcast/frame.h"
#include "trajcast/random.h"

namespace trajcast {
namespace {

constexpr double kLaneWidth = 3.5;
constexpr double kLaneSpacing = 2.0;
constexpr double kLaneBehind = 40.0;
constexpr double kLaneAhead = 60.0;

// Centerline parameterised by arc length; s = 0 is the agent at t = 0.
struct Path {
  enum class Kind { kStraight, kArc, kLaneChange } kind = Kind::kStraight;
  double start = 0.0;   // arc length where the manoeuvre begins
  double radius = 0.0;  // kArc
  double sign = 1.0;    // +1 left, -1 right
  double length = 0.0;  // kLaneChange: longitudinal length of the shift

  Waypoint at(double s) const {
    if (s <= start || kind == Kind::kStraight) return {s, 0.0};
    const double u = s - start;
    if (kind == Kind::kLaneChange) {
      const double f = u >= length ? 1.0 : 0.5 - 0.5 * std::cos(std::numbers::pi * u / length);
      return {s, sign * kLaneWidth * f};
    }
    const double quarter = radius * std::numbers::pi / 2.0;
    if (u <= quarter) {
      const double phi = u / radius;
      return {start + radius * std::sin(phi), sign * radius * (1.0 - std::cos(phi))};
    }
    return {start + radius, sign * (radius + (u - quarter))};
  }
};

Trajectory sample_lane(const Path& path, double from, double to) {
  std::vector<Waypoint> pts;
  for (double s = from; s <= to + 1e-9; s += kLaneSpacing) pts.push_back(path.at(s));
  return Trajectory(std::move(pts));
}

Trajectory lateral_lane(double offset, double from, double to) {
  std::vector<Waypoint> pts;
  for (double s = from; s <= to + 1e-9; s += kLaneSpacing) pts.push_back({s, offset});
  return Trajectory(std::move(pts));
}

template <std::size_t N>
std::size_t sample_index(const std::array<double, N>& probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  for (std::size_t i = N; i > 0; --i) {
    if (probs[i - 1] > 0.0) return i - 1;
  }
  return 0;
}

}  // namespace

std::string_view driving_mode_name(DrivingMode mode) {
  switch (mode) {
    case DrivingMode::kStraight: return "straight";
    case DrivingMode::kTurnLeft: return "turn-left";
    case DrivingMode::kTurnRight: return "turn-right";
    case DrivingMode::kLaneChange: return "lane-change";
    case DrivingMode::kJunction: return "junction";
  }
  return "straight";
}

void SyntheticSpec::validate() const {
  const double mix = std::accumulate(mode_mix.begin(), mode_mix.end(), 0.0);
  const double branches = std::accumulate(branch_probs.begin(), branch_probs.end(), 0.0);
  if (std::abs(mix - 1.0) > 1e-9 || std::abs(branches - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "mode and branch probabilities must sum to 1");
  }
  for (double p : mode_mix) {
    if (p < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative mode probability");
  }
  for (double p : branch_probs) {
    if (p < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative branch probability");
  }
  if (!(accel_max >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "accel_max must be >= 0");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
  if (!(speed_min > 0.0) || speed_max < speed_min) {
    throw Error(ErrorCode::kInvalidArgument, "speed range must be positive and ordered");
  }
}

Scenario generate_one(const SyntheticSpec& spec, std::size_t index) {
  std::mt19937_64 rng(derive_seed(spec.seed, index));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::normal_distribution<double> noise(0.0, 1.0);

  const auto mode = static_cast<DrivingMode>(sample_index(spec.mode_mix, unit(rng)));
  const double speed = uniform(spec.speed_min, spec.speed_max);
  const double accel = uniform(-spec.accel_max, spec.accel_max);

  Scenario sc;
  sc.scenario_id = "syn_" + std::to_string(spec.seed) + "_" + std::to_string(index);
  sc.mode = std::string(driving_mode_name(mode));
  sc.target_track_id = "agent";
  for (std::size_t f = 0; f < sc.total_frames; ++f) {
    sc.timestamps.push_back(static_cast<double>(f) * kDefaultDt);
  }

  std::vector<Path> branches;
  std::vector<double> branch_weights;
  Path taken;
  switch (mode) {
    case DrivingMode::kStraight:
      taken.kind = Path::Kind::kStraight;
      sc.map_polylines.push_back(sample_lane(taken, -kLaneBehind, kLaneAhead));
      break;
    case DrivingMode::kTurnLeft:
    case DrivingMode::kTurnRight:
      taken.kind = Path::Kind::kArc;
      taken.start = uniform(0.0, 15.0);
      taken.radius = uniform(12.0, 25.0);
      taken.sign = mode == DrivingMode::kTurnLeft ? 1.0 : -1.0;
      sc.map_polylines.push_back(sample_lane(taken, -kLaneBehind, kLaneAhead));
      break;
    case DrivingMode::kLaneChange:
      taken.kind = Path::Kind::kLaneChange;
      taken.start = uniform(0.0, 10.0);
      taken.length = uniform(20.0, 30.0);
      taken.sign = unit(rng) < 0.5 ? 1.0 : -1.0;
      sc.map_polylines.push_back(lateral_lane(0.0, -kLaneBehind, kLaneAhead));
      sc.map_polylines.push_back(lateral_lane(taken.sign * kLaneWidth, -kLaneBehind, kLaneAhead));
      break;
    case DrivingMode::kJunction: {
      const double junction = uniform(5.0, 15.0);
      Path straight{Path::Kind::kStraight, junction, 0.0, 1.0, 0.0};
      Path left{Path::Kind::kArc, junction, uniform(12.0, 20.0), 1.0, 0.0};
      Path right{Path::Kind::kArc, junction, uniform(8.0, 14.0), -1.0, 0.0};
      branches = {straight, left, right};
      branch_weights.assign(spec.branch_probs.begin(), spec.branch_probs.end());
      sc.latent_branch = static_cast<int>(sample_index(spec.branch_probs, unit(rng)));
      taken = branches[static_cast<std::size_t>(sc.latent_branch)];
      sc.map_polylines.push_back(sample_lane(straight, -kLaneBehind, junction));
      for (std::size_t b = 0; b < branches.size(); ++b) {
        if (branch_weights[b] > 0.0) {
          sc.map_polylines.push_back(sample_lane(branches[b], junction, junction + 50.0));
        }
      }
      break;
    }
  }

  // Local road frame -> random world pose.
  const Frame world{{uniform(-200.0, 200.0), uniform(-200.0, 200.0)},
                    normalize_angle(uniform(-std::numbers::pi, std::numbers::pi))};
  auto arc_at = [&](std::size_t f) {
    const double tau = (static_cast<double>(f) - static_cast<double>(sc.current_frame())) * kDefaultDt;
    return speed * tau + 0.5 * accel * tau * tau;
  };

  AgentTrack agent{"agent", ObjectType::kAgent, {}, std::vector<bool>(sc.total_frames, true)};
  for (std::size_t f = 0; f < sc.total_frames; ++f) {
    const Waypoint p = taken.at(arc_at(f));
    agent.points.push_back(world.to_world(
        {p.x + spec.noise_sigma * noise(rng), p.y + spec.noise_sigma * noise(rng)}));
  }
  sc.agents.push_back(std::move(agent));

  if (mode == DrivingMode::kJunction) {
    for (std::size_t b = 0; b < branches.size(); ++b) {
      if (branch_weights[b] <= 0.0) continue;
      std::vector<Waypoint> future;
      for (std::size_t f = sc.current_frame() + 1; f < sc.total_frames; ++f) {
        future.push_back(world.to_world(branches[b].at(arc_at(f))));
      }
      sc.alternative_futures.emplace_back(std::move(future));
    }
  } else {
    std::vector<Waypoint> future;
    for (std::size_t f = sc.current_frame() + 1; f < sc.total_frames; ++f) {
      future.push_back(world.to_world(taken.at(arc_at(f))));
    }
    sc.alternative_futures.emplace_back(std::move(future));
  }

  for (std::size_t n = 0; n < spec.neighbors; ++n) {
    const bool is_av = n == 0;
    AgentTrack track{is_av ? "av" : "other_" + std::to_string(n),
                     is_av ? ObjectType::kAv : ObjectType::kOther,
                     {},
                     std::vector<bool>(sc.total_frames, true)};
    Waypoint start;
    double heading = 0.0;
    double v = 0.0;
    std::size_t first_frame = 0;
    if (is_av) {
      start = {uniform(-30.0, 10.0), unit(rng) < 0.5 ? -kLaneWidth : kLaneWidth};
      v = uniform(spec.speed_min, spec.speed_max);
    } else {
      start = {uniform(-30.0, 30.0), uniform(-30.0, 30.0)};
      heading = uniform(-std::numbers::pi, std::numbers::pi);
      v = uniform(0.0, 8.0);
      first_frame = static_cast<std::size_t>(uniform(0.0, 10.0));
    }
    for (std::size_t f = 0; f < sc.total_frames; ++f) {
      const double tau = (static_cast<double>(f) - static_cast<double>(sc.current_frame())) * kDefaultDt;
      const Waypoint local{start.x + v * tau * std::cos(heading) + spec.noise_sigma * noise(rng),
                           start.y + v * tau * std::sin(heading) + spec.noise_sigma * noise(rng)};
      track.points.push_back(world.to_world(local));
      track.present[f] = f >= first_frame;
    }
    pad_track(track);
    sc.agents.push_back(std::move(track));
  }

  for (auto& lane : sc.map_polylines) {
    std::vector<Waypoint> pts;
    for (const auto& p : lane.points()) pts.push_back(world.to_world(p));
    lane = Trajectory(std::move(pts));
  }
  return sc;
}

std::vector<Scenario> generate(const SyntheticSpec& spec) {
  spec.validate();
  std::vector<Scenario> out;
  out.reserve(spec.scenario_count);
  for (std::size_t i = 0; i < spec.scenario_count; ++i) out.push_back(generate_one(spec, i));
  return out;
}

}  // namespace trajcast
