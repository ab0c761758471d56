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

#include "trajcast/trajectory_batch.h"

#include <cmath>
#include <vector>

#include "trajcast/error.h"

namespace trajcast {

Eigen::MatrixXd to_matrix(std::span<const Trajectory> set) {
  if (set.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(2 * set.front().size()),
                    static_cast<Eigen::Index>(set.size()));
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k].size() != set.front().size()) {
      throw Error(ErrorCode::kLengthMismatch, "trajectory set has mixed lengths");
    }
    m.col(static_cast<Eigen::Index>(k)) = to_vector(set[k]);
  }
  return m;
}

Eigen::VectorXd to_vector(const Trajectory& traj) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(2 * traj.size()));
  for (std::size_t t = 0; t < traj.size(); ++t) {
    v(static_cast<Eigen::Index>(2 * t)) = traj[t].x;
    v(static_cast<Eigen::Index>(2 * t + 1)) = traj[t].y;
  }
  return v;
}

Trajectory column_trajectory(const Eigen::MatrixXd& batch, Eigen::Index col, double dt) {
  std::vector<Waypoint> pts(static_cast<std::size_t>(batch.rows() / 2));
  for (std::size_t t = 0; t < pts.size(); ++t) {
    pts[t] = {batch(static_cast<Eigen::Index>(2 * t), col),
              batch(static_cast<Eigen::Index>(2 * t + 1), col)};
  }
  return Trajectory(std::move(pts), dt);
}

std::vector<Trajectory> to_trajectories(const Eigen::MatrixXd& batch, double dt) {
  std::vector<Trajectory> out;
  out.reserve(static_cast<std::size_t>(batch.cols()));
  for (Eigen::Index k = 0; k < batch.cols(); ++k) out.push_back(column_trajectory(batch, k, dt));
  return out;
}

Eigen::MatrixXd change_frame(const Eigen::MatrixXd& batch, const Frame& from, const Frame& to) {
  Eigen::MatrixXd out(batch.rows(), batch.cols());
  for (Eigen::Index k = 0; k < batch.cols(); ++k) {
    for (Eigen::Index r = 0; r + 1 < batch.rows(); r += 2) {
      const Waypoint p = to.to_local(from.to_world({batch(r, k), batch(r + 1, k)}));
      out(r, k) = p.x;
      out(r + 1, k) = p.y;
    }
  }
  return out;
}

Eigen::MatrixXd change_frame_gradient(const Eigen::MatrixXd& grad, const Frame& from,
                                      const Frame& to) {
  // Output = R_to R_from^T input + c, so the pullback applies R_from R_to^T.
  Eigen::MatrixXd out(grad.rows(), grad.cols());
  for (Eigen::Index k = 0; k < grad.cols(); ++k) {
    for (Eigen::Index r = 0; r + 1 < grad.rows(); r += 2) {
      const Waypoint g = from.rotate_to_local(to.rotate_to_world({grad(r, k), grad(r + 1, k)}));
      out(r, k) = g.x;
      out(r + 1, k) = g.y;
    }
  }
  return out;
}

}  // namespace trajcast
