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

#ifndef TRAJCAST_MATCHING_H_
#define TRAJCAST_MATCHING_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "trajcast/types.h"

namespace trajcast {

enum class Criterion { kAde, kFde };
enum class MatchStrategy { kForward, kBackward, kBidirectional, kHungarian };

std::string_view criterion_name(Criterion c);
Criterion parse_criterion(std::string_view name);
std::string_view strategy_name(MatchStrategy s);
MatchStrategy parse_strategy(std::string_view name);

// Step window compared between two sets: A[a_begin + t] against B[b_begin + t]
// for t in [0, length).
struct Overlap {
  std::size_t a_begin = 0;
  std::size_t b_begin = 0;
  std::size_t length = 0;

  static Overlap full(std::size_t horizon) { return {0, 0, horizon}; }
  // A's steps s+1..T against B's steps 1..T-s (1-based), i.e. B predicted
  // from an input window shifted s frames later.
  static Overlap shifted(std::size_t horizon, std::size_t shift);
};

struct SimilarityMatrix {
  Eigen::MatrixXd cost;  // rows index set A, columns set B; meters
  Criterion criterion = Criterion::kFde;

  std::size_t rows() const { return static_cast<std::size_t>(cost.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(cost.cols()); }
};

SimilarityMatrix similarity(std::span<const Trajectory> set_a,
                            std::span<const Trajectory> set_b, Criterion criterion,
                            const Overlap& overlap);

// Same on trajectory batches stored column-wise as [x1, y1, x2, y2, ...].
SimilarityMatrix similarity(const Eigen::MatrixXd& set_a, const Eigen::MatrixXd& set_b,
                            Criterion criterion, const Overlap& overlap);

struct MatchPair {
  std::size_t a = 0;
  std::size_t b = 0;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
  friend auto operator<=>(const MatchPair&, const MatchPair&) = default;
};

struct MatchResult {
  std::vector<MatchPair> pairs;  // sorted by (a, b)
  MatchStrategy strategy = MatchStrategy::kBidirectional;
};

// Exact ties resolve to the same-index partner when it is among the minima,
// otherwise to the lowest index.
MatchResult match_forward(const SimilarityMatrix& s);
MatchResult match_backward(const SimilarityMatrix& s);
// Mutual nearest neighbours: the intersection of forward and backward.
MatchResult match_bidirectional(const SimilarityMatrix& s);
// Minimum-total-cost one-to-one assignment. Rectangular inputs are padded
// with kHungarianSentinel and padded pairs are dropped.
MatchResult match_hungarian(const SimilarityMatrix& s);

MatchResult match(const SimilarityMatrix& s, MatchStrategy strategy);

inline constexpr double kHungarianSentinel = 1e9;

double total_cost(const SimilarityMatrix& s, const MatchResult& m);

}  // namespace trajcast

#endif  // TRAJCAST_MATCHING_H_
