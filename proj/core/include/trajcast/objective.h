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

#ifndef TRAJCAST_OBJECTIVE_H_
#define TRAJCAST_OBJECTIVE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "trajcast/frame.h"
#include "trajcast/losses.h"
#include "trajcast/matching.h"
#include "trajcast/predictor.h"

namespace trajcast {

struct ObjectiveOptions {
  bool temporal = false;
  bool spatial = false;
  std::size_t shift = 1;
  MatchStrategy strategy = MatchStrategy::kBidirectional;
  Criterion criterion = Criterion::kFde;
};

// One training example: the unshifted window (with its targets) and, for the
// temporal term, the window shifted `shift` frames later.
struct ObjectiveSample {
  ModelInput input_a;
  Frame frame_a;
  std::optional<ModelInput> input_b;
  Frame frame_b;
  Eigen::MatrixXd targets;  // 2T x (J + 1), frame_a
  std::vector<double> confidences;
  SpatialPermutation z;
};

// The non-differentiable choices made while evaluating the objective. Passing
// them back in freezes them, which is what finite-difference checks need.
struct ObjectiveDecisions {
  std::vector<TargetAssignment> targets;
  MatchResult temporal;
};

struct ObjectiveResult {
  LossBreakdown loss;
  PredictorParams grad;
  ObjectiveDecisions decisions;
};

ObjectiveResult evaluate_objective(const Predictor& predictor, const ObjectiveSample& sample,
                                   const ObjectiveOptions& options, bool with_gradient,
                                   const ObjectiveDecisions* frozen = nullptr);

}  // namespace trajcast

#endif  // TRAJCAST_OBJECTIVE_H_
