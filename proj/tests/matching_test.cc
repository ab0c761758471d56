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
#include <iterator>
#include <limits>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"
#include "trajcast/error.h"
#include "trajcast/matching.h"

namespace trajcast {
namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
using testing::as_pairs;
using testing::matrix_of;
using testing::random_matrix;
using testing::to_rows;

TEST(SimilarityTest, IdenticalSetsHaveZeroDiagonal) {
  std::mt19937_64 rng(1);
  std::vector<Trajectory> set;
  for (int i = 0; i < 4; ++i) set.push_back(testing::random_trajectory(rng, 5, 2.0));
  for (auto c : {Criterion::kAde, Criterion::kFde}) {
    const auto s = similarity(set, set, c, Overlap::full(5));
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_EQ(s.cost(i, i), 0.0);
  }
}

TEST(SimilarityTest, ShiftedCopyCostsFive) {
  const Trajectory a({{0, 0}, {1, 0}, {2, 0}});
  const Trajectory b({{3, 4}, {4, 4}, {5, 4}});
  const std::vector<Trajectory> sa{a};
  const std::vector<Trajectory> sb{b};
  EXPECT_DOUBLE_EQ(similarity(sa, sb, Criterion::kFde, Overlap::full(3)).cost(0, 0), 5.0);
}

TEST(SimilarityTest, HandComputedTwoByTwo) {
  const std::vector<Trajectory> sa{Trajectory({{0, 0}, {1, 0}}), Trajectory({{0, 1}, {0, 2}})};
  const std::vector<Trajectory> sb{Trajectory({{0, 0}, {1, 1}}), Trajectory({{2, 0}, {3, 0}})};
  const auto ade = similarity(sa, sb, Criterion::kAde, Overlap::full(2));
  EXPECT_DOUBLE_EQ(ade.cost(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(ade.cost(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(ade.cost(1, 0), (1.0 + std::sqrt(2.0)) / 2.0);
  EXPECT_DOUBLE_EQ(ade.cost(1, 1), (std::sqrt(5.0) + std::sqrt(13.0)) / 2.0);
  const auto fde = similarity(sa, sb, Criterion::kFde, Overlap::full(2));
  EXPECT_DOUBLE_EQ(fde.cost(1, 0), std::sqrt(2.0));
}

TEST(SimilarityTest, ShiftedOverlapComparesLaterStepsOfA) {
  // A = B advanced by one step: A[t + 1] == B[t].
  const std::vector<Trajectory> sa{Trajectory({{0, 0}, {1, 0}, {2, 0}, {3, 0}})};
  const std::vector<Trajectory> sb{Trajectory({{1, 0}, {2, 0}, {3, 0}, {4, 0}})};
  const auto overlap = Overlap::shifted(4, 1);
  EXPECT_EQ(overlap.length, 3u);
  EXPECT_EQ(similarity(sa, sb, Criterion::kAde, overlap).cost(0, 0), 0.0);
  EXPECT_EQ(Overlap::shifted(30, 1).length, 29u);
  try {
    Overlap::shifted(4, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyOverlap);
  }
}

TEST(MatchTest, SpecExamples) {
  const auto diag = matrix_of({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const Pairs identity{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(as_pairs(match_forward(diag)), identity);
  EXPECT_EQ(as_pairs(match_backward(diag)), identity);
  EXPECT_EQ(as_pairs(match_bidirectional(diag)), identity);
  EXPECT_EQ(as_pairs(match_hungarian(diag)), identity);
  EXPECT_EQ(total_cost(diag, match_hungarian(diag)), 0.0);

  const auto m = matrix_of({{0, 1}, {0, 2}});
  EXPECT_EQ(as_pairs(match_forward(m)), (Pairs{{0, 0}, {1, 0}}));
  EXPECT_EQ(as_pairs(match_backward(m)), (Pairs{{0, 0}, {0, 1}}));
  EXPECT_EQ(as_pairs(match_bidirectional(m)), (Pairs{{0, 0}}));

  const auto h = matrix_of({{4, 1}, {2, 3}});
  EXPECT_EQ(as_pairs(match_hungarian(h)), (Pairs{{0, 1}, {1, 0}}));
  EXPECT_EQ(total_cost(h, match_hungarian(h)), 3.0);
}

TEST(MatchTest, AllEqualCostsPairTheDiagonal) {
  const auto eq = matrix_of({{2, 2, 2}, {2, 2, 2}, {2, 2, 2}});
  const Pairs identity{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(as_pairs(match_forward(eq)), identity);
  EXPECT_EQ(as_pairs(match_backward(eq)), identity);
  EXPECT_EQ(as_pairs(match_bidirectional(eq)), identity);
}

TEST(MatchTest, TiesWithoutDiagonalTakeLowestIndex) {
  const auto m = matrix_of({{5, 1, 1}, {1, 5, 5}, {0, 0, 9}});
  EXPECT_EQ(as_pairs(match_forward(m)), (Pairs{{0, 1}, {1, 0}, {2, 0}}));
}

TEST(MatchTest, OneWayStrategiesMatchOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
    EXPECT_EQ(as_pairs(match_forward(s)), oracle::forward_pairs(to_rows(s)));
    EXPECT_EQ(as_pairs(match_backward(s)), oracle::backward_pairs(to_rows(s)));
  }
}

TEST(MatchTest, BidirectionalIsIntersectionAndTransposeInvariant) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
    const auto fwd = oracle::forward_pairs(to_rows(s));
    const auto bwd = oracle::backward_pairs(to_rows(s));
    Pairs both;
    std::set_intersection(fwd.begin(), fwd.end(), bwd.begin(), bwd.end(),
                          std::back_inserter(both));
    const auto bi = as_pairs(match_bidirectional(s));
    EXPECT_EQ(bi, both);
    EXPECT_FALSE(bi.empty());

    SimilarityMatrix t;
    t.cost = s.cost.transpose();
    Pairs swapped;
    for (const auto& [a, b] : as_pairs(match_bidirectional(t))) swapped.emplace_back(b, a);
    std::sort(swapped.begin(), swapped.end());
    EXPECT_EQ(swapped, bi);
  }
}

TEST(MatchTest, HungarianEqualsPermutationMinimum) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 1 + rng() % 6;
    const auto s = random_matrix(rng, k, k);
    const auto m = match_hungarian(s);
    EXPECT_EQ(m.pairs.size(), k);
    EXPECT_EQ(total_cost(s, m), oracle::assignment_minimum(to_rows(s)));
  }
}

TEST(MatchTest, HungarianRectangular) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
    const auto m = match_hungarian(s);
    EXPECT_EQ(m.pairs.size(), std::min(s.rows(), s.cols()));
    EXPECT_NEAR(total_cost(s, m), oracle::assignment_minimum(to_rows(s)), 1e-9);
  }
}

TEST(MatchTest, HungarianNotWorseThanOneToOneBidirectional) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 2 + rng() % 5;
    const auto s = random_matrix(rng, k, k);
    const auto bi = match_bidirectional(s);
    if (bi.pairs.size() != k) continue;
    EXPECT_LE(total_cost(s, match_hungarian(s)), total_cost(s, bi) + 1e-12);
  }
}

TEST(MatchTest, HungarianRejectsNonFinite) {
  auto s = matrix_of({{1, 2}, {3, 4}});
  s.cost(0, 1) = std::numeric_limits<double>::infinity();
  try {
    match_hungarian(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(MatchTest, PermutingRowsPermutesPairs) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t k = 2 + rng() % 5;
    const auto s = random_matrix(rng, k, k);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SimilarityMatrix p = s;
    for (std::size_t r = 0; r < k; ++r) {
      p.cost.row(static_cast<Eigen::Index>(r)) = s.cost.row(static_cast<Eigen::Index>(perm[r]));
    }
    Pairs mapped;
    for (const auto& [a, b] : as_pairs(match_bidirectional(p))) mapped.emplace_back(perm[a], b);
    std::sort(mapped.begin(), mapped.end());
    EXPECT_EQ(mapped, as_pairs(match_bidirectional(s)));
  }
}

TEST(MatchTest, StrategyNamesRoundTrip) {
  for (auto s : {MatchStrategy::kForward, MatchStrategy::kBackward, MatchStrategy::kBidirectional,
                 MatchStrategy::kHungarian}) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_EQ(parse_criterion("ade"), Criterion::kAde);
  EXPECT_THROW(parse_strategy("sideways"), Error);
}

}  // namespace
}  // namespace trajcast
