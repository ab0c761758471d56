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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "trajcast/augment.h"
#include "trajcast/error.h"
#include "trajcast/frame.h"
#include "trajcast/types.h"

namespace trajcast {
namespace {

Scenario two_frame_scenario(Waypoint before, Waypoint now) {
  Scenario sc;
  sc.scenario_id = "s";
  sc.history_len = 2;
  sc.future_len = 1;
  sc.total_frames = 3;
  sc.timestamps = {0.0, 0.1, 0.2};
  sc.target_track_id = "agent";
  sc.agents.push_back({"agent", ObjectType::kAgent, {before, now, now}, {true, true, true}});
  return sc;
}

TEST(TrajectoryTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Trajectory({}), Error);
  EXPECT_THROW(Trajectory({{0.0, std::nan("")}}), Error);
  EXPECT_THROW(Trajectory({{0.0, 0.0}}, 0.0), Error);
  EXPECT_NO_THROW(Trajectory({{1.0, 2.0}}));
}

TEST(PredictionSetTest, ValidatesScores) {
  const Trajectory t({{0, 0}, {1, 0}});
  EXPECT_NO_THROW(PredictionSet({t, t}, {0.25, 0.75}));
  EXPECT_THROW(PredictionSet({t, t}, {0.5, 0.6}), Error);
  EXPECT_THROW(PredictionSet({t, t}, {-0.5, 1.5}), Error);
  EXPECT_THROW(PredictionSet({t, Trajectory({{0, 0}})}, {0.5, 0.5}), Error);
  EXPECT_THROW(PredictionSet({}, {}), Error);
}

TEST(TargetSetTest, GroundTruthFirstWithUnitConfidence) {
  const Trajectory t({{0, 0}});
  const auto gt = TargetSet::ground_truth_only(t);
  EXPECT_EQ(gt.size(), 1u);
  EXPECT_EQ(gt.confidences()[0], 1.0);
  EXPECT_THROW(TargetSet({t, t}, {0.9, 0.5}), Error);
  EXPECT_THROW(TargetSet({t, t}, {1.0, 1.5}), Error);
}

TEST(ScenarioTest, ValidateCatchesMissingTargetFrame) {
  Scenario sc = two_frame_scenario({0, 0}, {1, 0});
  EXPECT_NO_THROW(sc.validate());
  sc.agents[0].present[0] = false;
  try {
    sc.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingTargetFrame);
  }
}

TEST(AgentFrameTest, StationaryTargetHasZeroRotation) {
  const Frame f = agent_frame(two_frame_scenario({0, 0}, {0, 0}));
  EXPECT_EQ(f.origin, (Waypoint{0, 0}));
  EXPECT_EQ(f.rotation, 0.0);
}

TEST(AgentFrameTest, AxisAlignedHeading) {
  const Frame f = agent_frame(two_frame_scenario({0, 0}, {1, 0}));
  EXPECT_EQ(f.origin, (Waypoint{1, 0}));
  EXPECT_DOUBLE_EQ(f.rotation, 0.0);
}

TEST(AgentFrameTest, NorthHeadingRotatesToPlusX) {
  const Frame f = agent_frame(two_frame_scenario({0, 0}, {0, 2}));
  EXPECT_NEAR(f.rotation, -std::numbers::pi / 2, 1e-12);
  // Hand rotation: (0,0) - (0,2) = (0,-2); rotating by -pi/2 gives (-2, 0).
  const Waypoint prev = f.to_local({0, 0});
  EXPECT_NEAR(prev.x, -2.0, 1e-12);
  EXPECT_NEAR(prev.y, 0.0, 1e-12);
}

TEST(AgentFrameTest, MissingTargetThrows) {
  Scenario sc = two_frame_scenario({0, 0}, {1, 0});
  sc.agents[0].present[1] = false;
  try {
    agent_frame(sc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingTargetFrame);
  }
}

TEST(FrameTest, Examples) {
  const Trajectory t({{1, 2}, {3, -4}});
  EXPECT_EQ(to_frame(t, Frame{}), t);
  const Waypoint p = Frame{{1, 1}, 0.0}.to_local({1, 1});
  EXPECT_EQ(p, (Waypoint{0, 0}));
  const Waypoint q = Frame{{0, 0}, std::numbers::pi}.to_local({1, 0});
  EXPECT_NEAR(q.x, -1.0, 1e-12);
  EXPECT_NEAR(q.y, 0.0, 1e-12);
}

TEST(FrameTest, RoundTripProperty) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const Frame f{{u(rng), u(rng)}, ang(rng)};
    std::vector<Waypoint> pts;
    for (int t = 0; t < 5; ++t) pts.push_back({u(rng), u(rng)});
    const Trajectory traj(pts);
    const Trajectory back = from_frame(to_frame(traj, f), f);
    for (std::size_t t = 0; t < traj.size(); ++t) {
      ASSERT_NEAR(back[t].x, traj[t].x, 1e-9);
      ASSERT_NEAR(back[t].y, traj[t].y, 1e-9);
    }
  }
}

TEST(AugmentTest, Examples) {
  const AugmentTransform identity;
  EXPECT_EQ(identity.apply(Waypoint{3, 4}), (Waypoint{3, 4}));
  AugmentTransform flip;
  flip.flip = true;
  EXPECT_EQ(flip.apply(Waypoint{1, 2}), (Waypoint{1, -2}));
  AugmentTransform scale;
  scale.scale = 1.25;
  EXPECT_EQ(scale.apply(Waypoint{2, 4}), (Waypoint{2.5, 5.0}));
}

TEST(AugmentTest, NoFlipUnitScaleLeavesScenarioUnchanged) {
  const Scenario sc = two_frame_scenario({0, 0}, {1, 0.5});
  AugmentSpec spec;
  spec.flip_prob = 0.0;
  spec.scale_min = 1.0;
  spec.scale_max = 1.0;
  const Scenario out = augment(sc, spec, 9);
  EXPECT_EQ(out.agents[0].points, sc.agents[0].points);
}

TEST(AugmentTest, DeterministicAndWithinBounds) {
  const AugmentSpec spec;
  int flips = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto t = sample_augmentation(spec, seed);
    EXPECT_GE(t.scale, 0.8);
    EXPECT_LE(t.scale, 1.25);
    flips += t.flip ? 1 : 0;
    const auto again = sample_augmentation(spec, seed);
    EXPECT_EQ(t.flip, again.flip);
    EXPECT_EQ(t.scale, again.scale);
  }
  // Binomial(2000, 0.5): 3 sigma is about 67.
  EXPECT_NEAR(flips, 1000, 67);
}

TEST(ErrorTest, MessageCarriesCodeName) {
  const Error e(ErrorCode::kKTooLarge, "k=7");
  EXPECT_EQ(e.code(), ErrorCode::kKTooLarge);
  EXPECT_NE(std::string(e.what()).find("k=7"), std::string::npos);
}

}  // namespace
}  // namespace trajcast
