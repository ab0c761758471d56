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

// Independent reference implementations used as test oracles. They share no
// code with the library and favour obviousness over speed.

#ifndef TRAJCAST_TESTS_ORACLES_H_
#define TRAJCAST_TESTS_ORACLES_H_

#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

using Point = std::pair<double, double>;
using Path = std::vector<Point>;
using Matrix = std::vector<std::vector<double>>;

double ade(const Path& a, const Path& b);
double fde(const Path& a, const Path& b);

struct Min {
  double min_ade;
  double min_fde;
  bool miss;
  double brier_fde;
};

// Top-k by (score desc, index asc), then the minima over that subset. The
// brier probability belongs to the first top-k member attaining minFDE in
// index order.
Min min_metrics(const std::vector<Path>& preds, const std::vector<double>& scores,
                const Path& gt, std::size_t k, double threshold);

// Exhaustive minimum over injective row -> column maps (rows <= cols) or the
// transpose otherwise.
double assignment_minimum(const Matrix& cost);

// Tie rule: prefer the same index when it is among the exact minima, else
// the lowest index.
std::vector<std::pair<std::size_t, std::size_t>> forward_pairs(const Matrix& cost);
std::vector<std::pair<std::size_t, std::size_t>> backward_pairs(const Matrix& cost);

// Minimum within-cluster sum of squares over every partition of `points`
// into exactly `clusters` non-empty groups.
double best_partition_sse(const std::vector<std::vector<double>>& points, std::size_t clusters);

double huber(double d);

}  // namespace oracle

#endif  // TRAJCAST_TESTS_ORACLES_H_
