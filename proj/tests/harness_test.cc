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

#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "trajcast/adam.h"
#include "trajcast/error.h"
#include "trajcast/frame.h"
#include "trajcast/grid.h"
#include "trajcast/harness.h"
#include "trajcast/synthetic.h"

namespace trajcast {
namespace {

std::vector<Scenario> scenarios(std::size_t n, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.scenario_count = n;
  spec.seed = seed;
  return generate(spec);
}

TrainConfig tiny_config() {
  TrainConfig c;
  c.epochs = 2;
  c.batch_size = 4;
  c.hidden = 8;
  c.seed = 3;
  return c;
}

TEST(AdamTest, ZeroGradientLeavesParameters) {
  Adam adam(3);
  std::vector<double> p{1.0, -2.0, 0.5};
  const auto before = p;
  const std::vector<double> g(3, 0.0);
  for (int i = 0; i < 5; ++i) adam.step(p, g, 1e-3);
  EXPECT_EQ(p, before);
  EXPECT_EQ(adam.steps(), 5u);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  Adam adam(2);
  std::vector<double> p{0.0, 0.0};
  adam.step(p, std::vector<double>{4.0, -0.01}, 1e-3);
  EXPECT_NEAR(p[0], -1e-3, 1e-9);
  EXPECT_NEAR(p[1], 1e-3, 1e-8);
  std::vector<double> wrong(3, 0.0);
  EXPECT_THROW(adam.step(wrong, wrong, 1e-3), Error);
}

TEST(TrainConfigTest, ScheduleAndDefaults) {
  TrainConfig c;
  EXPECT_EQ(c.epochs, 50u);
  EXPECT_EQ(c.batch_size, 32u);
  EXPECT_DOUBLE_EQ(learning_rate_at(c, 0), 1e-3);
  EXPECT_DOUBLE_EQ(learning_rate_at(c, 14), 1e-3);
  EXPECT_NEAR(learning_rate_at(c, 15), 1e-4, 1e-18);
  EXPECT_NEAR(learning_rate_at(c, 30), 1e-5, 1e-19);
}

TEST(TrainConfigTest, ParseOverrideAndRoundTrip) {
  std::istringstream in("# comment\nepochs = 3\nstrategy = hungarian\ntemp=false\nseed = 12\n");
  auto c = parse_train_config(in);
  EXPECT_EQ(c.epochs, 3u);
  EXPECT_EQ(c.strategy, MatchStrategy::kHungarian);
  EXPECT_FALSE(c.toggles.temp);
  apply_override(c, "learning_rate=0.25");
  EXPECT_EQ(c.learning_rate, 0.25);
  std::istringstream again(to_string(c));
  EXPECT_EQ(to_string(parse_train_config(again)), to_string(c));

  std::istringstream bad("epochz = 3\n");
  EXPECT_THROW(parse_train_config(bad), Error);
  EXPECT_THROW(apply_override(c, "shift"), Error);
  c.toggles.temp = true;
  c.shift = 30;
  EXPECT_THROW(c.validate(), Error);
}

TEST(TrainConfigTest, SeedEnvironmentOverride) {
  TrainConfig c;
  ::unsetenv("TRAJCAST_SEED");
  EXPECT_FALSE(apply_seed_env(c));
  ::setenv("TRAJCAST_SEED", "77", 1);
  EXPECT_TRUE(apply_seed_env(c));
  EXPECT_EQ(c.seed, 77u);
  ::unsetenv("TRAJCAST_SEED");
}

TEST(TrainTest, ZeroLearningRateKeepsParameters) {
  const auto data = scenarios(6, 1);
  auto c = tiny_config();
  c.learning_rate = 0.0;
  c.epochs = 0;
  const auto init = train(c, data).predictor.params().flatten();
  c.epochs = 1;
  EXPECT_EQ(train(c, data).predictor.params().flatten(), init);
}

TEST(TrainTest, DeterministicGivenSeed) {
  const auto data = scenarios(8, 2);
  const auto c = tiny_config();
  std::ostringstream log_a, log_b;
  const auto a = train(c, data, nullptr, &log_a);
  const auto b = train(c, data, nullptr, &log_b);
  EXPECT_EQ(checkpoint_json(a.predictor, c), checkpoint_json(b.predictor, c));
  EXPECT_EQ(log_a.str(), log_b.str());
  EXPECT_EQ(to_json(evaluate(a.predictor, data).report), to_json(evaluate(b.predictor, data).report));
  auto other = c;
  other.seed = 4;
  EXPECT_NE(train(other, data).predictor.params().flatten(), a.predictor.params().flatten());
}

TEST(TrainTest, DisabledTogglesZeroTheirTerms) {
  const auto data = scenarios(8, 3);
  auto c = tiny_config();
  c.epochs = 1;
  const auto on = train(c, data).log.front().loss;
  EXPECT_GT(on.l_temp, 0.0);
  EXPECT_GT(on.l_spa, 0.0);
  c.toggles.temp = false;
  c.toggles.spatial = false;
  const auto off = train(c, data).log.front().loss;
  EXPECT_EQ(off.l_temp, 0.0);
  EXPECT_EQ(off.l_spa, 0.0);
  EXPECT_NEAR(off.total, off.l_reg + off.l_cls, 1e-9);
}

TEST(TrainTest, MptNeedsPseudoTargets) {
  const auto data = scenarios(2, 4);
  auto c = tiny_config();
  c.toggles.mpt = true;
  EXPECT_THROW(train(c, data), Error);
  const PseudoTargetMap empty;
  try {
    train(c, data, &empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownScenario);
  }
}

TEST(TrainTest, LossDecreasesOverTraining) {
  const auto data = scenarios(200, 5);
  TrainConfig c;
  c.epochs = 20;
  c.hidden = 32;
  c.toggles.temp = false;
  c.toggles.spatial = false;
  const auto result = train(c, data);
  ASSERT_EQ(result.log.size(), 20u);
  EXPECT_LT(result.log.back().loss.total, result.log.front().loss.total);
}

TEST(CheckpointTest, RoundTrip) {
  const auto data = scenarios(4, 6);
  const auto c = tiny_config();
  const auto trained = train(c, data).predictor;
  const auto text = checkpoint_json(trained, c);
  const auto back = parse_checkpoint(text);
  EXPECT_EQ(back.predictor.params().flatten(), trained.params().flatten());
  EXPECT_EQ(to_string(back.config), to_string(c));
  EXPECT_EQ(checkpoint_json(back.predictor, back.config), text);
  EXPECT_THROW(parse_checkpoint("{\"format\": \"other\"}"), Error);
}

TEST(EvaluateTest, EmptyAndRepeatable) {
  const auto p = Predictor::initialize(predictor_config(tiny_config()), 1);
  try {
    evaluate(p, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
  const auto data = scenarios(5, 7);
  const auto a = evaluate(p, data);
  const auto b = evaluate(p, data);
  EXPECT_EQ(to_json(a.report), to_json(b.report));
  EXPECT_EQ(a.scenario_ids.size(), 5u);
  std::ostringstream dump;
  write_prediction_dump(dump, a, "m0");
  EnsembleBank bank;
  std::istringstream in(dump.str());
  read_bank_records(in, bank);
  EXPECT_EQ(bank.scenario_ids().size(), 5u);

  auto other = tiny_config();
  other.modes = 3;
  const auto mismatched = Predictor::initialize(predictor_config(other, kHistoryLen, 10), 1);
  EXPECT_THROW(evaluate(mismatched, data), Error);
}

// Predicts fixed world-frame curves that advance one step per frame.
PredictFn world_stub(std::vector<Waypoint> offsets_a, std::vector<Waypoint> offsets_b) {
  return [=](const ScenarioWindow& w) {
    const auto& offsets = w.start == 0 ? offsets_a : offsets_b;
    std::vector<Trajectory> trajs;
    for (const auto& o : offsets) {
      std::vector<Waypoint> pts;
      for (std::size_t t = 0; t < kFutureLen; ++t) {
        const double i = static_cast<double>(w.start + t);
        pts.push_back({o.x + i, o.y + 0.5 * i});
      }
      trajs.push_back(to_frame(Trajectory(pts), w.frame));
    }
    return PredictionSet(trajs, std::vector<double>(offsets.size(), 1.0 / offsets.size()));
  };
}

TEST(JitterTest, StubAndHandCase) {
  const auto data = scenarios(3, 8);
  const std::vector<Waypoint> base{{0, 0}, {0, 10}};
  EXPECT_NEAR(jitter(world_stub(base, base), data, 1), 0.0, 1e-9);
  const std::vector<Waypoint> moved{{3, 4}, {3, 14}};
  EXPECT_NEAR(jitter(world_stub(base, moved), data, 1), 5.0, 1e-9);
  const auto p = Predictor::initialize(predictor_config(tiny_config()), 2);
  EXPECT_GE(jitter(predict_fn(p), data, 1), 0.0);
  EXPECT_THROW(jitter(predict_fn(p), {}, 1), Error);
}

TEST(GridTest, ModulesPresetHasSevenRows) {
  GridSpec spec;
  spec.preset = "modules";
  const auto cells = grid_cells(spec);
  ASSERT_EQ(cells.size(), 7u);
  EXPECT_FALSE(cells.front().config.toggles.goal);
  EXPECT_TRUE(cells.back().config.toggles.mpt);
  spec.preset = "matching";
  EXPECT_EQ(grid_cells(spec).size(), 8u);
  std::istringstream in("preset = shift\nepochs = 2\n");
  const auto parsed = parse_grid_spec(in);
  EXPECT_EQ(parsed.preset, "shift");
  EXPECT_EQ(parsed.base.epochs, 2u);
}

TEST(GridTest, SingleCellEqualsTrainThenEvaluate) {
  const auto train_set = scenarios(6, 9);
  const auto eval_set = scenarios(3, 10);
  GridSpec spec;
  spec.base = tiny_config();
  const auto rows = run_grid(spec, train_set, eval_set);
  ASSERT_EQ(rows.size(), 1u);
  const auto direct = evaluate(train(spec.base, train_set).predictor, eval_set).report;
  EXPECT_EQ(to_json(rows[0].report), to_json(direct));

  std::ostringstream a, b;
  write_grid_csv(a, rows);
  write_grid_csv(b, run_grid(spec, train_set, eval_set));
  EXPECT_EQ(a.str(), b.str());
}

}  // namespace
}  // namespace trajcast
