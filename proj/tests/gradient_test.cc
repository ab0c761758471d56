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

#include <gtest/gtest.h>

#include "gradient_suite.h"

namespace {

TEST(GradientSuiteTest, EveryHeadAndLossMatchesFiniteDifferences) {
  const auto results = gradcheck::run_suite(20, 17);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) {
    EXPECT_LT(r.max_rel_err, gradcheck::kTolerance) << r.name;
    EXPECT_EQ(r.points, 20u) << r.name;
  }
}

TEST(GradientSuiteTest, RelativeErrorConvention) {
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 1.0, 0.0;
  EXPECT_EQ(gradcheck::relative_error(a, b), 0.0);
  EXPECT_EQ(gradcheck::relative_error(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)), 0.0);
  b << -1.0, 0.0;
  EXPECT_DOUBLE_EQ(gradcheck::relative_error(a, b), 1.0);
}

}  // namespace
