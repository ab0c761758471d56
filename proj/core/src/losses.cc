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

#include "trajcast/losses.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "json.hpp"
#include "trajcast/error.h"
#include "trajcast/metrics.h"
#include "trajcast/trajectory_batch.h"

namespace trajcast {

double huber(double a, double b) {
  const double d = std::abs(a - b);
  return d < kHuberDelta ? 0.5 * d * d : kHuberDelta * (d - 0.5 * kHuberDelta);
}

double huber(const Waypoint& a, const Waypoint& b) {
  return huber(a.x, b.x) + huber(a.y, b.y);
}

double huber_derivative(double a, double b) {
  const double d = a - b;
  if (std::abs(d) < kHuberDelta) return d;
  return d > 0.0 ? kHuberDelta : -kHuberDelta;
}

Eigen::VectorXd softmin_scores(const Eigen::VectorXd& displacements, double temperature) {
  if (displacements.size() == 0) return {};
  const double lowest = displacements.minCoeff();
  Eigen::VectorXd e = (-(displacements.array() - lowest) / temperature).exp();
  return e / e.sum();
}

std::vector<double> softmin_scores(std::span<const double> displacements, double temperature) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(displacements.size()));
  for (std::size_t i = 0; i < displacements.size(); ++i) d(static_cast<Eigen::Index>(i)) = displacements[i];
  const Eigen::VectorXd p = softmin_scores(d, temperature);
  return {p.data(), p.data() + p.size()};
}

Eigen::VectorXd softmin_backward(const Eigen::VectorXd& p, const Eigen::VectorXd& d_p,
                                 double temperature) {
  const double mean = p.dot(d_p);
  return (-1.0 / temperature) * p.cwiseProduct((d_p.array() - mean).matrix());
}

LossBreakdown& LossBreakdown::operator+=(const LossBreakdown& o) {
  l_reg += o.l_reg;
  l_cls += o.l_cls;
  l_temp += o.l_temp;
  l_spa += o.l_spa;
  total += o.total;
  return *this;
}

LossBreakdown& LossBreakdown::operator*=(double f) {
  l_reg *= f;
  l_cls *= f;
  l_temp *= f;
  l_spa *= f;
  total *= f;
  return *this;
}

std::string to_json(const LossBreakdown& loss) {
  nlohmann::ordered_json j;
  j["l_reg"] = loss.l_reg;
  j["l_cls"] = loss.l_cls;
  j["l_temp"] = loss.l_temp;
  j["l_spa"] = loss.l_spa;
  j["total"] = loss.total;
  return j.dump();
}

namespace {

double final_error(const Eigen::MatrixXd& preds, Eigen::Index k, const Eigen::VectorXd& target) {
  const Eigen::Index last = preds.rows() - 2;
  return std::hypot(preds(last, k) - target(last), preds(last + 1, k) - target(last + 1));
}

}  // namespace

TargetAssignment assign_target(const Eigen::MatrixXd& predictions, const Eigen::VectorXd& target,
                               double confidence) {
  if (predictions.rows() != target.size() || predictions.cols() == 0) {
    throw Error(ErrorCode::kLengthMismatch, "target and predictions differ in length");
  }
  Eigen::VectorXd fdes(predictions.cols());
  for (Eigen::Index k = 0; k < predictions.cols(); ++k) fdes(k) = final_error(predictions, k, target);
  TargetAssignment a;
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < fdes.size(); ++k) {
    if (fdes(k) < fdes(best)) best = k;
  }
  a.winner = static_cast<std::size_t>(best);
  a.soft_scores = softmin_scores(fdes);
  a.confidence = confidence;
  return a;
}

double regression_loss(const Eigen::VectorXd& pred, const Eigen::VectorXd& target,
                       double confidence, Eigen::VectorXd* grad) {
  if (pred.size() != target.size()) {
    throw Error(ErrorCode::kLengthMismatch, "regression inputs differ in length");
  }
  const double steps = static_cast<double>(pred.size() / 2);
  const double w = confidence / steps;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pred.size(); ++i) {
    sum += huber(pred(i), target(i));
    if (grad != nullptr) (*grad)(i) += w * huber_derivative(pred(i), target(i));
  }
  return w * sum;
}

double classification_loss(const Eigen::VectorXd& raw_scores, const Eigen::VectorXd& soft_targets,
                           double confidence, Eigen::VectorXd* d_raw) {
  const Eigen::VectorXd p = softmin_scores(raw_scores);
  const double w = confidence / static_cast<double>(p.size());
  double sum = 0.0;
  Eigen::VectorXd d_p(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    sum += huber(p(k), soft_targets(k));
    d_p(k) = w * huber_derivative(p(k), soft_targets(k));
  }
  if (d_raw != nullptr) *d_raw += softmin_backward(p, d_p);
  return w * sum;
}

WtaLoss wta_target_loss(const PredictionSet& preds, const Trajectory& target, double confidence) {
  const Eigen::MatrixXd batch = to_matrix(preds.trajectories());
  const Eigen::VectorXd tgt = to_vector(target);
  const TargetAssignment a = assign_target(batch, tgt, confidence);
  WtaLoss out;
  out.winner = a.winner;
  out.l_reg = regression_loss(batch.col(static_cast<Eigen::Index>(a.winner)), tgt, confidence);
  double sum = 0.0;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    sum += huber(preds.scores()[k], a.soft_scores(static_cast<Eigen::Index>(k)));
  }
  out.l_cls = confidence * sum / static_cast<double>(preds.size());
  return out;
}

MatchResult consistency_matching(const Eigen::MatrixXd& set_a, const Eigen::MatrixXd& set_b,
                                 const Overlap& overlap, MatchStrategy strategy,
                                 Criterion criterion) {
  return match(similarity(set_a, set_b, criterion, overlap), strategy);
}

double overlap_consistency_loss(const Eigen::MatrixXd& set_a, const Eigen::MatrixXd& set_b,
                                const Overlap& overlap, const MatchResult& pairs,
                                Eigen::MatrixXd* d_a, Eigen::MatrixXd* d_b) {
  if (pairs.pairs.empty()) return 0.0;
  const double norm = static_cast<double>(pairs.pairs.size() * overlap.length);
  double sum = 0.0;
  for (const auto& pr : pairs.pairs) {
    const auto ka = static_cast<Eigen::Index>(pr.a);
    const auto kb = static_cast<Eigen::Index>(pr.b);
    for (std::size_t t = 0; t < overlap.length; ++t) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        const auto ra = static_cast<Eigen::Index>(2 * (overlap.a_begin + t)) + c;
        const auto rb = static_cast<Eigen::Index>(2 * (overlap.b_begin + t)) + c;
        const double va = set_a(ra, ka);
        const double vb = set_b(rb, kb);
        sum += huber(va, vb);
        const double g = huber_derivative(va, vb) / norm;
        if (d_a != nullptr) (*d_a)(ra, ka) += g;
        if (d_b != nullptr) (*d_b)(rb, kb) -= g;
      }
    }
  }
  return sum / norm;
}

double temporal_consistency(const PredictionSet& set_a, const PredictionSet& set_b,
                            std::size_t shift, MatchStrategy strategy, Criterion criterion) {
  const std::size_t horizon = set_a.horizon();
  if (shift < 1 || shift >= horizon || set_b.horizon() != horizon) {
    throw Error(ErrorCode::kInvalidShift, "shift must satisfy 1 <= s < T");
  }
  const Eigen::MatrixXd a = to_matrix(set_a.trajectories());
  const Eigen::MatrixXd b = to_matrix(set_b.trajectories());
  const Overlap overlap = Overlap::shifted(horizon, shift);
  return overlap_consistency_loss(a, b, overlap,
                                  consistency_matching(a, b, overlap, strategy, criterion));
}

SpatialPermutation SpatialPermutation::sample(std::size_t horizon, std::size_t modes,
                                              double noise_amplitude, double flip_prob,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SpatialPermutation z;
  z.flip = unit(rng) < flip_prob;
  z.noise.resize(static_cast<Eigen::Index>(2 * horizon), static_cast<Eigen::Index>(modes));
  for (Eigen::Index i = 0; i < z.noise.size(); ++i) {
    z.noise.data()[i] = noise_amplitude * (2.0 * unit(rng) - 1.0);
  }
  return z;
}

Eigen::MatrixXd SpatialPermutation::reflect(const Eigen::MatrixXd& batch) const {
  if (!flip) return batch;
  Eigen::MatrixXd out = batch;
  for (Eigen::Index r = 1; r < out.rows(); r += 2) out.row(r) *= -1.0;
  return out;
}

Eigen::MatrixXd SpatialPermutation::apply_anchors(const Eigen::MatrixXd& anchors) const {
  Eigen::MatrixXd out = reflect(anchors);
  if (noise.size() != 0) out += noise;
  return out;
}

Eigen::VectorXd SpatialPermutation::apply_history(const Eigen::VectorXd& history) const {
  return reflect(history);
}

Eigen::MatrixXd SpatialPermutation::invert_offsets(const Eigen::MatrixXd& offsets) const {
  return noise.size() != 0 ? reflect(offsets + noise) : reflect(offsets);
}

double spatial_loss(const Eigen::MatrixXd& offsets, const Eigen::MatrixXd& mapped_offsets,
                    Eigen::MatrixXd* d_offsets, Eigen::MatrixXd* d_mapped) {
  if (offsets.rows() != mapped_offsets.rows() || offsets.cols() != mapped_offsets.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "spatial consistency inputs differ in shape");
  }
  const double norm = static_cast<double>(offsets.size() / 2);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < offsets.size(); ++i) {
    const double a = offsets.data()[i];
    const double b = mapped_offsets.data()[i];
    sum += huber(a, b);
    const double g = huber_derivative(a, b) / norm;
    if (d_offsets != nullptr) d_offsets->data()[i] += g;
    if (d_mapped != nullptr) d_mapped->data()[i] -= g;
  }
  return sum / norm;
}

double spatial_consistency(const Eigen::MatrixXd& offsets, const Eigen::MatrixXd& anchors,
                           const Eigen::VectorXd& history, const SpatialPermutation& z,
                           const RefineFn& refine) {
  const Eigen::MatrixXd perturbed = refine(z.apply_anchors(anchors), z.apply_history(history));
  return spatial_loss(offsets, z.invert_offsets(perturbed));
}

std::vector<TargetAssignment> assign_targets(const Eigen::MatrixXd& refined,
                                             const Eigen::MatrixXd& targets,
                                             std::span<const double> confidences) {
  if (static_cast<std::size_t>(targets.cols()) != confidences.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one confidence per target required");
  }
  std::vector<TargetAssignment> out;
  out.reserve(confidences.size());
  for (Eigen::Index j = 0; j < targets.cols(); ++j) {
    out.push_back(assign_target(refined, targets.col(j), confidences[static_cast<std::size_t>(j)]));
  }
  return out;
}

LossBreakdown supervision_loss(const Eigen::MatrixXd& anchors, const Eigen::MatrixXd& refined,
                               const Eigen::VectorXd& raw_scores, const Eigen::MatrixXd& targets,
                               std::span<const TargetAssignment> assignments,
                               const SupervisionTerms& terms, Eigen::MatrixXd* d_anchors,
                               Eigen::MatrixXd* d_refined, Eigen::VectorXd* d_raw) {
  if (static_cast<std::size_t>(targets.cols()) != assignments.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one assignment per target required");
  }
  LossBreakdown loss;
  Eigen::VectorXd grad(refined.rows());
  for (std::size_t j = 0; j < assignments.size(); ++j) {
    const TargetAssignment& a = assignments[j];
    const auto w = static_cast<Eigen::Index>(a.winner);
    const Eigen::VectorXd target = targets.col(static_cast<Eigen::Index>(j));

    grad.setZero();
    loss.l_reg += regression_loss(refined.col(w), target, a.confidence, &grad);
    if (d_refined != nullptr) d_refined->col(w) += grad;
    if (terms.refine_term) {
      grad.setZero();
      loss.l_reg += regression_loss(anchors.col(w), target, a.confidence, &grad);
      if (d_anchors != nullptr) d_anchors->col(w) += grad;
    }
    loss.l_cls += classification_loss(raw_scores, a.soft_scores, a.confidence, d_raw);
  }
  loss.finalize();
  return loss;
}

LossBreakdown total_loss(const Eigen::MatrixXd& anchors, const Eigen::MatrixXd& refined,
                         const Eigen::VectorXd& raw_scores, const TargetSet& targets,
                         double l_temp, double l_spa, const SupervisionTerms& terms) {
  const Eigen::MatrixXd target_batch = to_matrix(targets.targets());
  const auto assignments = assign_targets(refined, target_batch, targets.confidences());
  LossBreakdown loss =
      supervision_loss(anchors, refined, raw_scores, target_batch, assignments, terms);
  loss.l_temp = l_temp;
  loss.l_spa = l_spa;
  loss.finalize();
  return loss;
}

}  // namespace trajcast
