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

#ifndef TRAJCAST_TESTS_TEST_UTIL_H_
#define TRAJCAST_TESTS_TEST_UTIL_H_

#include <random>
#include <vector>

#include "oracles.h"
#include "trajcast/matching.h"
#include "trajcast/types.h"

namespace trajcast::testing {

inline Trajectory random_trajectory(std::mt19937_64& rng, std::size_t length, double spread) {
  std::normal_distribution<double> d(0.0, spread);
  std::vector<Waypoint> pts;
  for (std::size_t t = 0; t < length; ++t) pts.push_back({d(rng), d(rng)});
  return Trajectory(pts);
}

inline std::vector<double> random_scores(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> s(k);
  double sum = 0.0;
  for (auto& v : s) sum += (v = u(rng));
  for (auto& v : s) v /= sum;
  return s;
}

inline oracle::Path to_path(const Trajectory& t) {
  oracle::Path p;
  for (const auto& w : t.points()) p.emplace_back(w.x, w.y);
  return p;
}

inline oracle::Matrix to_rows(const SimilarityMatrix& s) {
  oracle::Matrix m(s.rows(), std::vector<double>(s.cols()));
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      m[i][j] = s.cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return m;
}

inline SimilarityMatrix matrix_of(const oracle::Matrix& rows) {
  SimilarityMatrix s;
  s.cost.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      s.cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return s;
}

inline SimilarityMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  oracle::Matrix m(rows, std::vector<double>(cols));
  for (auto& r : m) {
    for (auto& v : r) v = u(rng);
  }
  return matrix_of(m);
}

inline std::vector<std::pair<std::size_t, std::size_t>> as_pairs(const MatchResult& m) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : m.pairs) out.emplace_back(p.a, p.b);
  return out;
}

}  // namespace trajcast::testing

#endif  // TRAJCAST_TESTS_TEST_UTIL_H_
