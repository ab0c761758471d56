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

#ifndef TRAJCAST_LOSSES_H_
#define TRAJCAST_LOSSES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trajcast/matching.h"
#include "trajcast/types.h"

namespace trajcast {

inline constexpr double kHuberDelta = 1.0;

// Smooth L1 with the quadratic/linear transition at kHuberDelta.
double huber(double a, double b);
// Summed over both coordinates.
double huber(const Waypoint& a, const Waypoint& b);
// d huber(a, b) / da.
double huber_derivative(double a, double b);

// exp(-d_k / T) / sum_j exp(-d_j / T), shifted by the minimum for stability.
Eigen::VectorXd softmin_scores(const Eigen::VectorXd& displacements, double temperature = 1.0);
std::vector<double> softmin_scores(std::span<const double> displacements,
                                   double temperature = 1.0);
// Pulls dL/dp back through p = softmin(d).
Eigen::VectorXd softmin_backward(const Eigen::VectorXd& probabilities,
                                 const Eigen::VectorXd& d_probabilities,
                                 double temperature = 1.0);

struct LossBreakdown {
  double l_reg = 0.0;
  double l_cls = 0.0;
  double l_temp = 0.0;
  double l_spa = 0.0;
  double total = 0.0;

  void finalize() { total = l_reg + l_cls + (l_temp + l_spa); }
  LossBreakdown& operator+=(const LossBreakdown& other);
  LossBreakdown& operator*=(double factor);
};

std::string to_json(const LossBreakdown& loss);

// ---------------------------------------------------------------------------
// Per-target winner-takes-all supervision.

// Discrete and stop-gradient parts of the supervision for one target: the
// winning prediction (lowest FDE to the target, lowest index on ties) and the
// classification target, softmin over each prediction's FDE to the target.
struct TargetAssignment {
  std::size_t winner = 0;
  Eigen::VectorXd soft_scores;
  double confidence = 1.0;
};

TargetAssignment assign_target(const Eigen::MatrixXd& predictions, const Eigen::VectorXd& target,
                               double confidence);

// confidence / T * sum_t huber(pred_t, target_t). Adds d/dpred to *grad.
double regression_loss(const Eigen::VectorXd& pred, const Eigen::VectorXd& target,
                       double confidence, Eigen::VectorXd* grad = nullptr);
// confidence / K * sum_k huber(softmin(raw)_k, soft_target_k). Adds d/draw.
double classification_loss(const Eigen::VectorXd& raw_scores, const Eigen::VectorXd& soft_targets,
                           double confidence, Eigen::VectorXd* d_raw = nullptr);

struct WtaLoss {
  double l_cls = 0.0;
  double l_reg = 0.0;
  std::size_t winner = 0;
};

// Same supervision on an already-normalised prediction set.
WtaLoss wta_target_loss(const PredictionSet& preds, const Trajectory& target, double confidence);

// ---------------------------------------------------------------------------
// Temporal consistency.

// Matches set_a against set_b over `overlap` with the given strategy.
MatchResult consistency_matching(const Eigen::MatrixXd& set_a, const Eigen::MatrixXd& set_b,
                                 const Overlap& overlap, MatchStrategy strategy,
                                 Criterion criterion);

// Huber over matched pairs and overlapping steps, normalised by
// (#pairs * overlap length). No pairs -> 0.
double overlap_consistency_loss(const Eigen::MatrixXd& set_a, const Eigen::MatrixXd& set_b,
                                const Overlap& overlap, const MatchResult& pairs,
                                Eigen::MatrixXd* d_a = nullptr, Eigen::MatrixXd* d_b = nullptr);

// set_b comes from the input window shifted `shift` frames later and must be
// expressed in set_a's frame. Throws kInvalidShift unless 1 <= shift < T.
double temporal_consistency(const PredictionSet& set_a, const PredictionSet& set_b,
                            std::size_t shift, MatchStrategy strategy, Criterion criterion);

// ---------------------------------------------------------------------------
// Spatial consistency.

// Z: optional reflection about the x-axis followed by additive anchor noise.
// The history is reflected with the anchors; noise only touches anchors.
// Z^-1 on offsets adds the noise back and undoes the reflection.
struct SpatialPermutation {
  bool flip = false;
  Eigen::MatrixXd noise;  // 2T x K, empty for none

  static SpatialPermutation identity() { return {}; }
  static SpatialPermutation sample(std::size_t horizon, std::size_t modes, double noise_amplitude,
                                   double flip_prob, std::uint64_t seed);

  Eigen::MatrixXd apply_anchors(const Eigen::MatrixXd& anchors) const;
  Eigen::VectorXd apply_history(const Eigen::VectorXd& history) const;
  Eigen::MatrixXd invert_offsets(const Eigen::MatrixXd& offsets) const;
  // Jacobian-transpose of both maps (they share the reflection).
  Eigen::MatrixXd reflect(const Eigen::MatrixXd& batch) const;
};

inline constexpr double kDefaultSpatialNoise = 0.2;  // meters

// Mean Huber over all K x T waypoints between `offsets` and `mapped_offsets`.
double spatial_loss(const Eigen::MatrixXd& offsets, const Eigen::MatrixXd& mapped_offsets,
                    Eigen::MatrixXd* d_offsets = nullptr,
                    Eigen::MatrixXd* d_mapped = nullptr);

using RefineFn =
    std::function<Eigen::MatrixXd(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& history)>;

// huber(offsets, Z^-1(refine(Z(anchors, history)))).
double spatial_consistency(const Eigen::MatrixXd& offsets, const Eigen::MatrixXd& anchors,
                           const Eigen::VectorXd& history, const SpatialPermutation& z,
                           const RefineFn& refine);

// ---------------------------------------------------------------------------
// Supervision over a whole target set.

struct SupervisionTerms {
  bool refine_term = true;  // supervise refined trajectories as well as anchors
};

// Sum over targets j of regression on the anchors and on the refined
// trajectories (both at the winner chosen on the refined set) plus the
// classification term. Gradients are added into the optional outputs.
LossBreakdown supervision_loss(const Eigen::MatrixXd& anchors, const Eigen::MatrixXd& refined,
                               const Eigen::VectorXd& raw_scores, const Eigen::MatrixXd& targets,
                               std::span<const TargetAssignment> assignments,
                               const SupervisionTerms& terms, Eigen::MatrixXd* d_anchors = nullptr,
                               Eigen::MatrixXd* d_refined = nullptr,
                               Eigen::VectorXd* d_raw = nullptr);

std::vector<TargetAssignment> assign_targets(const Eigen::MatrixXd& refined,
                                             const Eigen::MatrixXd& targets,
                                             std::span<const double> confidences);

// L = L_reg + L_cls + L_cons on one prediction's outputs.
LossBreakdown total_loss(const Eigen::MatrixXd& anchors, const Eigen::MatrixXd& refined,
                         const Eigen::VectorXd& raw_scores, const TargetSet& targets,
                         double l_temp, double l_spa, const SupervisionTerms& terms = {});

}  // namespace trajcast

#endif  // TRAJCAST_LOSSES_H_
