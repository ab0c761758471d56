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

#include "trajcast/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trajcast/error.h"
#include "trajcast/trajectory_batch.h"

namespace trajcast {
namespace {

// Returns the best column for `row`, preferring column == row among ties.
std::size_t row_argmin(const Eigen::MatrixXd& cost, Eigen::Index row) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < cost.cols(); ++j) {
    const double v = cost(row, j);
    if (v < cost(row, best) || (v == cost(row, best) && j == row)) best = j;
  }
  return static_cast<std::size_t>(best);
}

std::size_t col_argmin(const Eigen::MatrixXd& cost, Eigen::Index col) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < cost.rows(); ++i) {
    const double v = cost(i, col);
    if (v < cost(best, col) || (v == cost(best, col) && i == col)) best = i;
  }
  return static_cast<std::size_t>(best);
}

void require_nonempty(const SimilarityMatrix& s) {
  if (s.cost.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "similarity matrix is empty");
  }
}

double pair_cost(const Eigen::MatrixXd& a, Eigen::Index ia, const Eigen::MatrixXd& b,
                 Eigen::Index ib, Criterion criterion, const Overlap& o) {
  auto step_dist = [&](std::size_t t) {
    const auto ra = static_cast<Eigen::Index>(2 * (o.a_begin + t));
    const auto rb = static_cast<Eigen::Index>(2 * (o.b_begin + t));
    return std::hypot(a(ra, ia) - b(rb, ib), a(ra + 1, ia) - b(rb + 1, ib));
  };
  if (criterion == Criterion::kFde) return step_dist(o.length - 1);
  double sum = 0.0;
  for (std::size_t t = 0; t < o.length; ++t) sum += step_dist(t);
  return sum / static_cast<double>(o.length);
}

}  // namespace

std::string_view criterion_name(Criterion c) {
  return c == Criterion::kAde ? "ade" : "fde";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "ade" || name == "ADE") return Criterion::kAde;
  if (name == "fde" || name == "FDE") return Criterion::kFde;
  throw Error(ErrorCode::kInvalidArgument, "unknown similarity '" + std::string(name) + "'");
}

std::string_view strategy_name(MatchStrategy s) {
  switch (s) {
    case MatchStrategy::kForward: return "forward";
    case MatchStrategy::kBackward: return "backward";
    case MatchStrategy::kBidirectional: return "bidirectional";
    case MatchStrategy::kHungarian: return "hungarian";
  }
  return "bidirectional";
}

MatchStrategy parse_strategy(std::string_view name) {
  if (name == "forward") return MatchStrategy::kForward;
  if (name == "backward") return MatchStrategy::kBackward;
  if (name == "bidirectional") return MatchStrategy::kBidirectional;
  if (name == "hungarian") return MatchStrategy::kHungarian;
  throw Error(ErrorCode::kInvalidArgument, "unknown matching '" + std::string(name) + "'");
}

Overlap Overlap::shifted(std::size_t horizon, std::size_t shift) {
  if (shift >= horizon) {
    throw Error(ErrorCode::kEmptyOverlap, "shift " + std::to_string(shift) +
                                              " leaves no overlap in " +
                                              std::to_string(horizon) + " steps");
  }
  return {shift, 0, horizon - shift};
}

SimilarityMatrix similarity(const Eigen::MatrixXd& set_a, const Eigen::MatrixXd& set_b,
                            Criterion criterion, const Overlap& overlap) {
  if (overlap.length == 0) {
    throw Error(ErrorCode::kEmptyOverlap, "overlap window is empty");
  }
  const auto need_a = static_cast<Eigen::Index>(2 * (overlap.a_begin + overlap.length));
  const auto need_b = static_cast<Eigen::Index>(2 * (overlap.b_begin + overlap.length));
  if (set_a.rows() < need_a || set_b.rows() < need_b) {
    throw Error(ErrorCode::kEmptyOverlap, "overlap window exceeds trajectory length");
  }
  SimilarityMatrix s;
  s.criterion = criterion;
  s.cost.resize(set_a.cols(), set_b.cols());
  for (Eigen::Index i = 0; i < set_a.cols(); ++i) {
    for (Eigen::Index j = 0; j < set_b.cols(); ++j) {
      s.cost(i, j) = pair_cost(set_a, i, set_b, j, criterion, overlap);
    }
  }
  return s;
}

SimilarityMatrix similarity(std::span<const Trajectory> set_a,
                            std::span<const Trajectory> set_b, Criterion criterion,
                            const Overlap& overlap) {
  return similarity(to_matrix(set_a), to_matrix(set_b), criterion, overlap);
}

MatchResult match_forward(const SimilarityMatrix& s) {
  require_nonempty(s);
  MatchResult r{{}, MatchStrategy::kForward};
  for (Eigen::Index i = 0; i < s.cost.rows(); ++i) {
    r.pairs.push_back({static_cast<std::size_t>(i), row_argmin(s.cost, i)});
  }
  return r;
}

MatchResult match_backward(const SimilarityMatrix& s) {
  require_nonempty(s);
  MatchResult r{{}, MatchStrategy::kBackward};
  for (Eigen::Index j = 0; j < s.cost.cols(); ++j) {
    r.pairs.push_back({col_argmin(s.cost, j), static_cast<std::size_t>(j)});
  }
  std::sort(r.pairs.begin(), r.pairs.end());
  return r;
}

MatchResult match_bidirectional(const SimilarityMatrix& s) {
  require_nonempty(s);
  MatchResult r{{}, MatchStrategy::kBidirectional};
  for (Eigen::Index i = 0; i < s.cost.rows(); ++i) {
    const std::size_t j = row_argmin(s.cost, i);
    if (col_argmin(s.cost, static_cast<Eigen::Index>(j)) == static_cast<std::size_t>(i)) {
      r.pairs.push_back({static_cast<std::size_t>(i), j});
    }
  }
  return r;
}

MatchResult match_hungarian(const SimilarityMatrix& s) {
  require_nonempty(s);
  if (!s.cost.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "cost matrix has non-finite entries");
  }
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  const std::size_t n = std::max(rows, cols);
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols)
               ? s.cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
               : kHungarianSentinel;
  };

  // Shortest augmenting path with row/column potentials; 1-based with a
  // virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  MatchResult r{{}, MatchStrategy::kHungarian};
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j] - 1;
    if (i < rows && j - 1 < cols) r.pairs.push_back({i, j - 1});
  }
  std::sort(r.pairs.begin(), r.pairs.end());
  return r;
}

MatchResult match(const SimilarityMatrix& s, MatchStrategy strategy) {
  switch (strategy) {
    case MatchStrategy::kForward: return match_forward(s);
    case MatchStrategy::kBackward: return match_backward(s);
    case MatchStrategy::kBidirectional: return match_bidirectional(s);
    case MatchStrategy::kHungarian: return match_hungarian(s);
  }
  return match_bidirectional(s);
}

double total_cost(const SimilarityMatrix& s, const MatchResult& m) {
  double sum = 0.0;
  for (const auto& pr : m.pairs) {
    sum += s.cost(static_cast<Eigen::Index>(pr.a), static_cast<Eigen::Index>(pr.b));
  }
  return sum;
}

}  // namespace trajcast
