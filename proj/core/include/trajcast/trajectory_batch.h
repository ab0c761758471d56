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

#ifndef TRAJCAST_TRAJECTORY_BATCH_H_
#define TRAJCAST_TRAJECTORY_BATCH_H_

#include <span>

#include <Eigen/Core>

#include "trajcast/frame.h"
#include "trajcast/types.h"

namespace trajcast {

// Trajectory batches are matrices with one trajectory per column laid out as
// [x1, y1, x2, y2, ...].
Eigen::MatrixXd to_matrix(std::span<const Trajectory> set);
Eigen::VectorXd to_vector(const Trajectory& traj);
Trajectory column_trajectory(const Eigen::MatrixXd& batch, Eigen::Index col,
                             double dt = kDefaultDt);
std::vector<Trajectory> to_trajectories(const Eigen::MatrixXd& batch, double dt = kDefaultDt);

// Re-expresses a batch given in frame `from` in frame `to`.
Eigen::MatrixXd change_frame(const Eigen::MatrixXd& batch, const Frame& from, const Frame& to);
// Pulls a gradient taken with respect to change_frame's output back to its input.
Eigen::MatrixXd change_frame_gradient(const Eigen::MatrixXd& grad, const Frame& from,
                                      const Frame& to);

}  // namespace trajcast

#endif  // TRAJCAST_TRAJECTORY_BATCH_H_
