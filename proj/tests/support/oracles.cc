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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracle {

namespace {

double dist(const Point& a, const Point& b) {
  const double dx = a.first - b.first;
  const double dy = a.second - b.second;
  return std::sqrt(dx * dx + dy * dy);
}

std::size_t pick(const std::vector<double>& values, std::size_t preferred) {
  const double best = *std::min_element(values.begin(), values.end());
  if (preferred < values.size() && values[preferred] == best) return preferred;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == best) return i;
  }
  return 0;
}

}  // namespace

double ade(const Path& a, const Path& b) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) sum += dist(a[t], b[t]);
  return sum / static_cast<double>(a.size());
}

double fde(const Path& a, const Path& b) { return dist(a.back(), b.back()); }

Min min_metrics(const std::vector<Path>& preds, const std::vector<double>& scores,
                const Path& gt, std::size_t k, double threshold) {
  std::vector<std::size_t> idx(preds.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Selection sort keeps the rule explicit.
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const bool better = scores[idx[j]] > scores[idx[i]] ||
                          (scores[idx[j]] == scores[idx[i]] && idx[j] < idx[i]);
      if (better) std::swap(idx[i], idx[j]);
    }
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  Min m{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false,
        0.0};
  std::size_t best = idx.front();
  for (std::size_t i : idx) {
    m.min_ade = std::min(m.min_ade, ade(preds[i], gt));
    const double f = fde(preds[i], gt);
    if (f < m.min_fde) {
      m.min_fde = f;
      best = i;
    }
  }
  m.miss = m.min_fde > threshold;
  m.brier_fde = m.min_fde + (1.0 - scores[best]) * (1.0 - scores[best]);
  return m;
}

double assignment_minimum(const Matrix& cost) {
  const std::size_t rows = cost.size();
  const std::size_t cols = cost.front().size();
  if (rows > cols) {
    Matrix t(cols, std::vector<double>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) t[j][i] = cost[i][j];
    }
    return assignment_minimum(t);
  }
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> forward_pairs(const Matrix& cost) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < cost.size(); ++i) out.emplace_back(i, pick(cost[i], i));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> backward_pairs(const Matrix& cost) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < cost.front().size(); ++j) {
    std::vector<double> column;
    for (const auto& row : cost) column.push_back(row[j]);
    out.emplace_back(pick(column, j), j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double best_partition_sse(const std::vector<std::vector<double>>& points, std::size_t clusters) {
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  std::vector<std::size_t> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::size_t> counts(clusters, 0);
    for (std::size_t l : label) ++counts[l];
    if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; })) {
      std::vector<std::vector<double>> mean(clusters, std::vector<double>(dim, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) mean[label[i]][d] += points[i][d];
      }
      for (std::size_t c = 0; c < clusters; ++c) {
        for (double& v : mean[c]) v /= static_cast<double>(counts[c]);
      }
      double sse = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
          const double e = points[i][d] - mean[label[i]][d];
          sse += e * e;
        }
      }
      best = std::min(best, sse);
    }
    // Next label vector in base `clusters`.
    std::size_t pos = 0;
    while (pos < n && ++label[pos] == clusters) label[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

double huber(double d) {
  const double a = std::fabs(d);
  return a <= 1.0 ? 0.5 * a * a : a - 0.5;
}

}  // namespace oracle
