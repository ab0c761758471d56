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

#include "trajcast/predictor.h"

#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "trajcast/error.h"
#include "trajcast/losses.h"

namespace trajcast {
namespace {

std::uint64_t next_version() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

Eigen::MatrixXd relu(const Eigen::MatrixXd& x) { return x.cwiseMax(0.0); }

Eigen::MatrixXd relu_mask(const Eigen::MatrixXd& pre, const Eigen::MatrixXd& upstream) {
  return (pre.array() > 0.0).select(upstream, 0.0);
}

// dY = upstream for Y = W X + b.
void accumulate_linear(Linear& grad, const Eigen::MatrixXd& upstream, const Eigen::MatrixXd& input) {
  grad.weight.noalias() += upstream * input.transpose();
  grad.bias.noalias() += upstream.rowwise().sum();
}

void append_polyline(std::vector<Eigen::Matrix<double, kPointFeatures, 1>>& out,
                     const Trajectory& line, std::size_t tag) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    Eigen::Matrix<double, kPointFeatures, 1> f = Eigen::Matrix<double, kPointFeatures, 1>::Zero();
    const Waypoint& p = line[i];
    const Waypoint& prev = i == 0 ? p : line[i - 1];
    f(0) = p.x / kCoordinateUnit;
    f(1) = p.y / kCoordinateUnit;
    f(2) = (p.x - prev.x) / kCoordinateUnit;
    f(3) = (p.y - prev.y) / kCoordinateUnit;
    f(4 + tag) = 1.0;
    out.push_back(f);
  }
}

}  // namespace

Linear::Linear(std::size_t out, std::size_t in)
    : weight(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in))),
      bias(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out))) {}

PredictorParams PredictorParams::zeros(const PredictorConfig& c) {
  const std::size_t k = c.modes;
  const std::size_t traj = 2 * c.horizon;
  PredictorParams p;
  p.enc1 = Linear(c.hidden, kPointFeatures);
  p.enc2 = Linear(c.hidden, c.hidden);
  p.goal = Linear(2 * k, c.hidden);
  p.comp1 = Linear(c.hidden, c.hidden + 2);
  p.comp2 = Linear(traj, c.hidden);
  p.ref_in = Linear(c.hidden, traj + 2 * c.history_len);
  p.ref_res = Linear(c.hidden, c.hidden);
  p.ref_reg = Linear(traj, c.hidden);
  p.ref_cls = Linear(1, c.hidden);
  return p;
}

PredictorParams PredictorParams::random(const PredictorConfig& config, std::uint64_t seed) {
  PredictorParams p = zeros(config);
  std::mt19937_64 rng(seed);
  visit(p, [&](std::string_view, Linear& layer) {
    const double a = std::sqrt(1.0 / static_cast<double>(layer.weight.cols()));
    std::uniform_real_distribution<double> dist(-a, a);
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) layer.weight.data()[i] = dist(rng);
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = dist(rng);
  });
  if (!config.use_goal) p.goal.weight.setZero();
  return p;
}

std::size_t PredictorParams::size() const {
  std::size_t n = 0;
  visit(*this, [&](std::string_view, const Linear& layer) { n += layer.size(); });
  return n;
}

std::vector<double> PredictorParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(size());
  visit(*this, [&](std::string_view, const Linear& layer) {
    flat.insert(flat.end(), layer.weight.data(), layer.weight.data() + layer.weight.size());
    flat.insert(flat.end(), layer.bias.data(), layer.bias.data() + layer.bias.size());
  });
  return flat;
}

void PredictorParams::assign(std::span<const double> flat) {
  if (flat.size() != size()) {
    throw Error(ErrorCode::kShapeMismatch, "parameter vector has " + std::to_string(flat.size()) +
                                               " entries, expected " + std::to_string(size()));
  }
  std::size_t at = 0;
  visit(*this, [&](std::string_view, Linear& layer) {
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) layer.weight.data()[i] = flat[at++];
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = flat[at++];
  });
}

PredictorParams& PredictorParams::operator+=(const PredictorParams& other) {
  enc1.weight += other.enc1.weight; enc1.bias += other.enc1.bias;
  enc2.weight += other.enc2.weight; enc2.bias += other.enc2.bias;
  goal.weight += other.goal.weight; goal.bias += other.goal.bias;
  comp1.weight += other.comp1.weight; comp1.bias += other.comp1.bias;
  comp2.weight += other.comp2.weight; comp2.bias += other.comp2.bias;
  ref_in.weight += other.ref_in.weight; ref_in.bias += other.ref_in.bias;
  ref_res.weight += other.ref_res.weight; ref_res.bias += other.ref_res.bias;
  ref_reg.weight += other.ref_reg.weight; ref_reg.bias += other.ref_reg.bias;
  ref_cls.weight += other.ref_cls.weight; ref_cls.bias += other.ref_cls.bias;
  return *this;
}

PredictorParams& PredictorParams::operator*=(double factor) {
  visit(*this, [&](std::string_view, Linear& layer) {
    layer.weight *= factor;
    layer.bias *= factor;
  });
  return *this;
}

ModelInput build_input(const ScenarioWindow& window, std::size_t history_len) {
  if (window.target_history.size() != history_len) {
    throw Error(ErrorCode::kEmptyHistory, "window " + window.scenario_id + " has " +
                                              std::to_string(window.target_history.size()) +
                                              " history frames, expected " +
                                              std::to_string(history_len));
  }
  std::vector<Eigen::Matrix<double, kPointFeatures, 1>> points;
  append_polyline(points, window.target_history, 0);
  for (const auto& n : window.neighbor_histories) append_polyline(points, n, 1);
  for (const auto& lane : window.map_polylines) append_polyline(points, lane, 2);

  ModelInput input;
  input.points.resize(kPointFeatures, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    input.points.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  input.history = to_vector(window.target_history);
  return input;
}

OutputGradients OutputGradients::zeros(const PredictorConfig& c) {
  const auto traj = static_cast<Eigen::Index>(2 * c.horizon);
  const auto k = static_cast<Eigen::Index>(c.modes);
  OutputGradients g;
  g.d_anchors = Eigen::MatrixXd::Zero(traj, k);
  g.d_offsets = Eigen::MatrixXd::Zero(traj, k);
  g.d_refined = Eigen::MatrixXd::Zero(traj, k);
  g.d_raw_scores = Eigen::VectorXd::Zero(k);
  g.d_goals = Eigen::VectorXd::Zero(2 * k);
  return g;
}

Predictor::Predictor(PredictorConfig config, PredictorParams params)
    : config_(config), params_(std::move(params)), version_(next_version()) {
  const PredictorParams shape = PredictorParams::zeros(config_);
  bool ok = true;
  PredictorParams::visit(shape, [&](std::string_view name, const Linear& ref) {
    PredictorParams::visit(params_, [&](std::string_view other, const Linear& layer) {
      if (name == other && (layer.weight.rows() != ref.weight.rows() ||
                            layer.weight.cols() != ref.weight.cols() ||
                            layer.bias.size() != ref.bias.size())) {
        ok = false;
      }
    });
  });
  if (!ok) throw Error(ErrorCode::kShapeMismatch, "parameters do not match predictor config");
}

Predictor Predictor::initialize(const PredictorConfig& config, std::uint64_t seed) {
  return Predictor(config, PredictorParams::random(config, seed));
}

void Predictor::set_params(PredictorParams params) {
  params_ = std::move(params);
  if (!config_.use_goal) params_.goal.weight.setZero();
  version_ = next_version();
}

void Predictor::assign(std::span<const double> flat) {
  params_.assign(flat);
  if (!config_.use_goal) params_.goal.weight.setZero();
  version_ = next_version();
}

void Predictor::check_trace(std::uint64_t version) const {
  if (version != version_) {
    throw Error(ErrorCode::kStaleTrace, "trace was recorded with different parameters");
  }
}

EncoderTrace Predictor::encode_traced(const ModelInput& input) const {
  if (input.points.cols() == 0) {
    throw Error(ErrorCode::kEmptyHistory, "encoder input has no points");
  }
  EncoderTrace t;
  t.input = input.points;
  t.pre1 = params_.enc1.forward(t.input);
  t.act1 = relu(t.pre1);
  t.pre2 = params_.enc2.forward(t.act1);
  t.act2 = relu(t.pre2);
  t.phi = t.act2.rowwise().mean();
  return t;
}

Eigen::VectorXd Predictor::encode(const ModelInput& input) const {
  return encode_traced(input).phi;
}

Eigen::VectorXd Predictor::predict_goals(const Eigen::VectorXd& phi) const {
  const Eigen::VectorXd g = config_.use_goal
                                ? Eigen::VectorXd(params_.goal.weight * phi + params_.goal.bias)
                                : params_.goal.bias;
  return kCoordinateUnit * g;
}

CompletionTrace Predictor::complete_traced(const Eigen::VectorXd& phi,
                                           const Eigen::VectorXd& goals) const {
  const auto c = static_cast<Eigen::Index>(config_.hidden);
  const auto k = static_cast<Eigen::Index>(config_.modes);
  CompletionTrace t;
  t.goals = goals / kCoordinateUnit;
  t.input.resize(c + 2, k);
  for (Eigen::Index m = 0; m < k; ++m) {
    t.input.col(m).head(c) = phi;
    t.input(c, m) = t.goals(2 * m);
    t.input(c + 1, m) = t.goals(2 * m + 1);
  }
  t.pre = params_.comp1.forward(t.input);
  t.act = relu(t.pre);
  t.anchors = kCoordinateUnit * params_.comp2.forward(t.act);
  return t;
}

Eigen::MatrixXd Predictor::complete_trajectories(const Eigen::VectorXd& phi,
                                                 const Eigen::VectorXd& goals) const {
  return complete_traced(phi, goals).anchors;
}

RefineTrace Predictor::refine(const Eigen::MatrixXd& anchors,
                              const Eigen::VectorXd& history) const {
  const auto traj = static_cast<Eigen::Index>(2 * config_.horizon);
  const auto hist = static_cast<Eigen::Index>(2 * config_.history_len);
  if (anchors.rows() != traj || history.size() != hist) {
    throw Error(ErrorCode::kShapeMismatch, "refinement input has the wrong shape");
  }
  RefineTrace t;
  t.version = version_;
  t.input.resize(traj + hist, anchors.cols());
  t.input.topRows(traj) = anchors / kCoordinateUnit;
  t.input.bottomRows(hist) = (history / kCoordinateUnit).replicate(1, anchors.cols());
  t.pre0 = params_.ref_in.forward(t.input);
  t.act0 = relu(t.pre0);
  t.pre_res = params_.ref_res.forward(t.act0);
  t.act1 = t.act0 + relu(t.pre_res);
  if (config_.use_refine) {
    t.offsets = kCoordinateUnit * params_.ref_reg.forward(t.act1);
  } else {
    t.offsets = Eigen::MatrixXd::Zero(traj, anchors.cols());
  }
  t.raw_scores = params_.ref_cls.forward(t.act1).row(0).transpose();
  return t;
}

ForwardTrace Predictor::forward(const ModelInput& input) const {
  ForwardTrace t;
  t.version = version_;
  t.encoder = encode_traced(input);
  t.output.goals = predict_goals(t.encoder.phi);
  t.completion = complete_traced(t.encoder.phi, t.output.goals);
  t.refine = refine(t.completion.anchors, input.history);
  t.output.anchors = t.completion.anchors;
  t.output.offsets = t.refine.offsets;
  t.output.refined = t.output.anchors + t.output.offsets;
  t.output.raw_scores = t.refine.raw_scores;
  t.output.probabilities = softmin_scores(t.output.raw_scores);
  return t;
}

Eigen::MatrixXd Predictor::refine_backward(const RefineTrace& t, const Eigen::MatrixXd& d_offsets,
                                           const Eigen::VectorXd& d_raw_scores,
                                           PredictorParams& grads) const {
  check_trace(t.version);
  const auto traj = static_cast<Eigen::Index>(2 * config_.horizon);
  Eigen::MatrixXd d_act1 = params_.ref_cls.weight.transpose() * d_raw_scores.transpose();
  accumulate_linear(grads.ref_cls, d_raw_scores.transpose(), t.act1);
  if (config_.use_refine) {
    const Eigen::MatrixXd d_reg = kCoordinateUnit * d_offsets;
    d_act1.noalias() += params_.ref_reg.weight.transpose() * d_reg;
    accumulate_linear(grads.ref_reg, d_reg, t.act1);
  }
  const Eigen::MatrixXd d_pre_res = relu_mask(t.pre_res, d_act1);
  accumulate_linear(grads.ref_res, d_pre_res, t.act0);
  const Eigen::MatrixXd d_act0 = d_act1 + params_.ref_res.weight.transpose() * d_pre_res;
  const Eigen::MatrixXd d_pre0 = relu_mask(t.pre0, d_act0);
  accumulate_linear(grads.ref_in, d_pre0, t.input);
  const Eigen::MatrixXd d_input = params_.ref_in.weight.transpose() * d_pre0;
  return d_input.topRows(traj) / kCoordinateUnit;
}

PredictorParams Predictor::backward(const ForwardTrace& t, const OutputGradients& g) const {
  check_trace(t.version);
  const auto c = static_cast<Eigen::Index>(config_.hidden);
  const auto k = static_cast<Eigen::Index>(config_.modes);
  PredictorParams grads = PredictorParams::zeros(config_);

  const Eigen::MatrixXd d_offsets = g.d_offsets + g.d_refined;
  Eigen::MatrixXd d_anchors = g.d_anchors + g.d_refined;
  d_anchors += refine_backward(t.refine, d_offsets, g.d_raw_scores, grads);

  // Completion.
  const Eigen::MatrixXd d_out = kCoordinateUnit * d_anchors;
  accumulate_linear(grads.comp2, d_out, t.completion.act);
  const Eigen::MatrixXd d_pre = relu_mask(t.completion.pre, params_.comp2.weight.transpose() * d_out);
  accumulate_linear(grads.comp1, d_pre, t.completion.input);
  const Eigen::MatrixXd d_in = params_.comp1.weight.transpose() * d_pre;

  Eigen::VectorXd d_phi = d_in.topRows(c).rowwise().sum();
  // Goal units: completion sees goals / unit, the goal head emits unit * (W phi + b).
  Eigen::VectorXd d_goal_net(2 * k);
  for (Eigen::Index m = 0; m < k; ++m) {
    d_goal_net(2 * m) = d_in(c, m);
    d_goal_net(2 * m + 1) = d_in(c + 1, m);
  }
  if (g.d_goals.size() == 2 * k) d_goal_net += kCoordinateUnit * g.d_goals;
  grads.goal.bias += d_goal_net;
  if (config_.use_goal) {
    grads.goal.weight.noalias() += d_goal_net * t.encoder.phi.transpose();
    d_phi.noalias() += params_.goal.weight.transpose() * d_goal_net;
  }

  // Encoder: phi is a column mean, so every point receives d_phi / N.
  const auto n = t.encoder.act2.cols();
  const Eigen::MatrixXd d_act2 = (d_phi / static_cast<double>(n)).replicate(1, n);
  const Eigen::MatrixXd d_pre2 = relu_mask(t.encoder.pre2, d_act2);
  accumulate_linear(grads.enc2, d_pre2, t.encoder.act1);
  const Eigen::MatrixXd d_pre1 =
      relu_mask(t.encoder.pre1, params_.enc2.weight.transpose() * d_pre2);
  accumulate_linear(grads.enc1, d_pre1, t.encoder.input);
  return grads;
}

PredictionSet to_prediction_set(const PredictorOutput& output, double dt) {
  std::vector<Trajectory> trajs;
  std::vector<double> scores;
  for (Eigen::Index k = 0; k < output.refined.cols(); ++k) {
    trajs.push_back(column_trajectory(output.refined, k, dt));
    scores.push_back(output.probabilities(k));
  }
  return PredictionSet(std::move(trajs), std::move(scores));
}

}  // namespace trajcast
