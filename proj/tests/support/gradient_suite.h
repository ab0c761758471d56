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

// Central finite-difference checks shared by the unit tests and the
// acceptance gate.

#ifndef TRAJCAST_TESTS_GRADIENT_SUITE_H_
#define TRAJCAST_TESTS_GRADIENT_SUITE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gradcheck {

inline constexpr double kStep = 1e-5;
inline constexpr double kTolerance = 1e-4;
// One-sided slopes differing by more than this mark a non-differentiable point.
inline constexpr double kKinkAbsolute = 1e-6;
inline constexpr double kKinkRelative = 1e-3;

// Central differences. When `kinks` is given, coordinate i is flagged if the
// two one-sided slopes disagree, i.e. a rectifier, Huber or max switch lies
// inside [x_i - h, x_i + h] and the central difference is not a derivative.
Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                 Eigen::VectorXd x, double h = kStep,
                                 std::vector<bool>* kinks = nullptr);

// ||a - n|| / (||a|| + ||n||); 0 when both norms are below 1e-10.
double relative_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric);

// Same, over the coordinates not flagged in `skip`.
double relative_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric,
                      const std::vector<bool>& skip);

struct CheckResult {
  std::string name;
  double max_rel_err = 0.0;
  std::size_t points = 0;
  std::size_t coordinates = 0;
  std::size_t kink_coordinates = 0;  // excluded from the comparison
};

// Every loss and predictor head, each at `points` random parameter (or
// input) points on a tiny network.
std::vector<CheckResult> run_suite(std::size_t points, std::uint64_t seed, double h = kStep);

}  // namespace gradcheck

#endif  // TRAJCAST_TESTS_GRADIENT_SUITE_H_
