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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "trajcast/dataset.h"
#include "trajcast/error.h"
#include "trajcast/synthetic.h"

namespace trajcast {
namespace {

namespace fs = std::filesystem;

std::string single_track_csv(std::size_t rows, const std::string& type = "AGENT") {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    out << 100.0 + 0.1 * static_cast<double>(i) << ",track-0," << type << ","
        << static_cast<double>(i) << ",2,SYN\n";
  }
  return out.str();
}

ErrorCode parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_csv(in, "x");
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

std::string csv_of(const Scenario& sc) {
  std::ostringstream out;
  write_csv(out, sc);
  return out.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("trajcast_data_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SyntheticSpec mode_only(std::size_t mode) {
  SyntheticSpec spec;
  spec.mode_mix = {0, 0, 0, 0, 0};
  spec.mode_mix[mode] = 1.0;
  return spec;
}

TEST(GenerateTest, StraightNoiselessSpeedTen) {
  auto spec = mode_only(0);
  spec.scenario_count = 5;
  spec.noise_sigma = 0.0;
  spec.speed_min = spec.speed_max = 10.0;
  spec.accel_max = 0.0;
  for (const auto& sc : generate(spec)) {
    EXPECT_EQ(sc.mode, "straight");
    const auto& pts = sc.target().points;
    ASSERT_EQ(pts.size(), 50u);
    const Waypoint first = pts[20];
    const double dx = pts[21].x - first.x;
    const double dy = pts[21].y - first.y;
    for (std::size_t t = 20; t + 1 < 50; ++t) {
      EXPECT_NEAR(distance(pts[t], pts[t + 1]), 1.0, 1e-9);
      const double cross = dx * (pts[t + 1].y - first.y) - dy * (pts[t + 1].x - first.x);
      EXPECT_NEAR(cross, 0.0, 1e-9);
    }
  }
}

TEST(GenerateTest, JunctionBranchesAreBinomial) {
  auto spec = mode_only(4);
  spec.scenario_count = 1000;
  spec.branch_probs = {0.5, 0.5, 0.0};
  spec.seed = 3;
  int straight = 0;
  for (const auto& sc : generate(spec)) {
    ASSERT_TRUE(sc.latent_branch == 0 || sc.latent_branch == 1);
    EXPECT_EQ(sc.alternative_futures.size(), 2u);
    straight += sc.latent_branch == 0;
  }
  EXPECT_LE(std::abs(straight - 500), 3.0 * std::sqrt(250.0));
}

TEST(GenerateTest, FrameCountsAndDeterminism) {
  SyntheticSpec spec;
  spec.scenario_count = 25;
  spec.seed = 9;
  const auto a = generate(spec);
  const auto b = generate(spec);
  ASSERT_EQ(a.size(), 25u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].history_len, 20u);
    EXPECT_EQ(a[i].future_len, 30u);
    EXPECT_EQ(a[i].timestamps.size(), 50u);
    EXPECT_NO_THROW(a[i].validate());
    EXPECT_EQ(csv_of(a[i]), csv_of(b[i]));
  }
  EXPECT_EQ(csv_of(generate_one(spec, 17)), csv_of(a[17]));
  spec.seed = 10;
  EXPECT_NE(csv_of(generate(spec)[0]), csv_of(a[0]));
}

TEST(GenerateTest, RejectsInvalidSpec) {
  SyntheticSpec spec;
  spec.mode_mix = {0.5, 0.5, 0.5, 0, 0};
  EXPECT_THROW(spec.validate(), Error);
  spec = SyntheticSpec{};
  spec.noise_sigma = -1.0;
  EXPECT_THROW(spec.validate(), Error);
}

TEST(CsvTest, HandWrittenSingleTrack) {
  std::istringstream in(single_track_csv(50));
  const auto sc = parse_csv(in, "hand");
  ASSERT_EQ(sc.agents.size(), 1u);
  EXPECT_EQ(sc.target().points.size(), 50u);
  EXPECT_EQ(sc.target().points[7], (Waypoint{7.0, 2.0}));
  EXPECT_EQ(sc.target_track_id, "track-0");
}

TEST(CsvTest, Errors) {
  EXPECT_EQ(parse_error(single_track_csv(50, "OTHERS")), ErrorCode::kMissingAgent);
  EXPECT_EQ(parse_error(single_track_csv(49)), ErrorCode::kWrongFrameCount);
  auto text = single_track_csv(50);
  EXPECT_EQ(parse_error("TIME,X\n" + text.substr(text.find('\n') + 1)), ErrorCode::kMalformedRow);
  auto nan_row = text;
  nan_row.replace(nan_row.find(",3,2,"), 5, ",nan,2,");
  EXPECT_EQ(parse_error(nan_row), ErrorCode::kMalformedRow);
  auto short_row = text + "1,2,3\n";
  try {
    std::istringstream in(short_row);
    parse_csv(in, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRow);
    EXPECT_NE(std::string(e.what()).find("52"), std::string::npos);
  }
}

TEST(CsvTest, RoundTripAtNineDigits) {
  SyntheticSpec spec;
  spec.scenario_count = 20;
  spec.seed = 5;
  for (const auto& sc : generate(spec)) {
    const auto text = csv_of(sc);
    std::istringstream in(text);
    const auto back = parse_csv(in, sc.scenario_id);
    EXPECT_EQ(csv_of(back), text);
    ASSERT_EQ(back.agents.size(), sc.agents.size());
    for (std::size_t a = 0; a < sc.agents.size(); ++a) {
      for (std::size_t t = 0; t < 50; ++t) {
        const auto& p = sc.agents[a].points[t];
        const auto& q = back.agents[a].points[t];
        EXPECT_NEAR(p.x, q.x, 1e-8 * std::max(1.0, std::abs(p.x)));
        EXPECT_NEAR(p.y, q.y, 1e-8 * std::max(1.0, std::abs(p.y)));
      }
    }
  }
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
}

TEST(CsvTest, DirectoryLoadAndSkip) {
  const auto dir = scratch("skip");
  std::ofstream(dir / "a.csv") << single_track_csv(50);
  std::ofstream(dir / "b.csv") << single_track_csv(50, "AV");
  EXPECT_THROW(load_csv(dir), Error);
  LoadOptions opts;
  opts.skip_invalid = true;
  std::vector<std::string> warnings;
  const auto loaded = load_csv(dir, opts, &warnings);
  EXPECT_EQ(loaded.size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
  fs::remove_all(dir);
}

TEST(CsvTest, DatasetManifestRoundTrip) {
  const auto dir = scratch("manifest");
  SyntheticSpec spec;
  spec.scenario_count = 10;
  const auto scenarios = generate(spec);
  save_dataset(dir, scenarios, 0.2);
  const auto ds = load_dataset(dir / "manifest.json");
  ASSERT_EQ(ds.train.size(), 8u);
  ASSERT_EQ(ds.val.size(), 2u);
  EXPECT_EQ(csv_of(ds.val[1]), csv_of(scenarios[9]));
  EXPECT_EQ(ds.val[1].mode, scenarios[9].mode);
  EXPECT_EQ(ds.val[1].alternative_futures.size(), scenarios[9].alternative_futures.size());
  EXPECT_EQ(ds.train[0].map_polylines.size(), scenarios[0].map_polylines.size());
  fs::remove_all(dir);
}

TEST(ShiftPairTest, Examples) {
  SyntheticSpec spec;
  spec.scenario_count = 1;
  const auto sc = generate(spec)[0];
  const auto same = make_shift_pair(sc, 0);
  EXPECT_EQ(same.a.target_history, same.b.target_history);

  const auto pair = make_shift_pair(sc, 1);
  EXPECT_EQ(pair.a.start, 0u);
  EXPECT_EQ(pair.b.start, 1u);
  EXPECT_EQ(pair.b.frame.origin, sc.target().points[20]);
  EXPECT_EQ(pair.b.target_history.size(), 20u);
  EXPECT_TRUE(pair.a.future.has_value());
  EXPECT_FALSE(pair.b.future.has_value());
  EXPECT_TRUE(pair.b.alternative_futures.empty());

  for (std::size_t s = 1; s < 20; ++s) {
    const auto p = make_shift_pair(sc, s);
    EXPECT_EQ(p.a.start + 20 - p.b.start, 20 - s);
  }

  auto partial = sc;
  for (auto& agent : partial.agents) {
    if (agent.track_id != partial.target_track_id) continue;
    for (std::size_t t = 35; t < 50; ++t) agent.present[t] = false;
  }
  EXPECT_NO_THROW(make_shift_pair(partial, 15));
  try {
    make_shift_pair(partial, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientFrames);
  }
}

}  // namespace
}  // namespace trajcast
