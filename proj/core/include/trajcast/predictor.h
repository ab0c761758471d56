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

#ifndef TRAJCAST_PREDICTOR_H_
#define TRAJCAST_PREDICTOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "trajcast/trajectory_batch.h"
#include "trajcast/types.h"
#include "trajcast/window.h"

namespace trajcast {

// Per-point encoder input: x, y, dx, dy (scaled by kCoordinateUnit) and a
// one-hot tag {target history, neighbour history, lane centerline}.
inline constexpr std::size_t kPointFeatures = 7;
// Network-internal length unit. Positions enter divided by it and positional
// heads are multiplied by it, so layers see O(1) values.
inline constexpr double kCoordinateUnit = 10.0;

struct PredictorConfig {
  std::size_t hidden = 64;  // C
  std::size_t modes = 6;    // K
  std::size_t history_len = kHistoryLen;
  std::size_t horizon = kFutureLen;
  bool use_goal = true;
  bool use_refine = true;
};

struct Linear {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;

  Linear() = default;
  Linear(std::size_t out, std::size_t in);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const {
    return (weight * x).colwise() + bias;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(weight.size() + bias.size());
  }
};

// All trainable layers. Also used as the gradient container.
struct PredictorParams {
  Linear enc1, enc2;                        // pointwise encoder
  Linear goal;                              // phi -> K goals
  Linear comp1, comp2;                      // [phi; goal] -> trajectory
  Linear ref_in, ref_res, ref_reg, ref_cls; // refinement

  static PredictorParams zeros(const PredictorConfig& config);
  // Uniform in [-a, a] with a = sqrt(1 / fan_in).
  static PredictorParams random(const PredictorConfig& config, std::uint64_t seed);

  template <typename Self, typename F>
  static void visit(Self& self, F&& f) {
    f("enc1", self.enc1);
    f("enc2", self.enc2);
    f("goal", self.goal);
    f("comp1", self.comp1);
    f("comp2", self.comp2);
    f("ref_in", self.ref_in);
    f("ref_res", self.ref_res);
    f("ref_reg", self.ref_reg);
    f("ref_cls", self.ref_cls);
  }

  std::size_t size() const;
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);
  PredictorParams& operator+=(const PredictorParams& other);
  PredictorParams& operator*=(double factor);
};

struct ModelInput {
  Eigen::MatrixXd points;   // kPointFeatures x N
  Eigen::VectorXd history;  // 2M, target history in meters, oldest first
};

ModelInput build_input(const ScenarioWindow& window, std::size_t history_len);

struct EncoderTrace {
  Eigen::MatrixXd input, pre1, act1, pre2, act2;
  Eigen::VectorXd phi;
};

struct CompletionTrace {
  Eigen::VectorXd goals;    // 2K, network units
  Eigen::MatrixXd input;    // (C + 2) x K
  Eigen::MatrixXd pre, act;
  Eigen::MatrixXd anchors;  // 2T x K, meters
};

struct RefineTrace {
  std::uint64_t version = 0;
  Eigen::MatrixXd input;    // (2T + 2M) x K
  Eigen::MatrixXd pre0, act0, pre_res, act1;
  Eigen::MatrixXd offsets;  // 2T x K, meters
  Eigen::VectorXd raw_scores;
};

struct PredictorOutput {
  Eigen::VectorXd goals;     // 2K, meters
  Eigen::MatrixXd anchors;   // completion output tau_reg
  Eigen::MatrixXd offsets;   // refinement residual
  Eigen::MatrixXd refined;   // anchors + offsets
  Eigen::VectorXd raw_scores;
  Eigen::VectorXd probabilities;
};

struct ForwardTrace {
  std::uint64_t version = 0;
  EncoderTrace encoder;
  CompletionTrace completion;
  RefineTrace refine;
  PredictorOutput output;
};

// Upstream gradients. d_refined is folded into both anchors and offsets.
struct OutputGradients {
  Eigen::MatrixXd d_anchors;
  Eigen::MatrixXd d_offsets;
  Eigen::MatrixXd d_refined;
  Eigen::VectorXd d_raw_scores;
  Eigen::VectorXd d_goals;  // meters

  static OutputGradients zeros(const PredictorConfig& config);
};

class Predictor {
 public:
  Predictor(PredictorConfig config, PredictorParams params);
  static Predictor initialize(const PredictorConfig& config, std::uint64_t seed);

  const PredictorConfig& config() const { return config_; }
  const PredictorParams& params() const { return params_; }
  // Every parameter change invalidates traces taken before it.
  void set_params(PredictorParams params);
  void assign(std::span<const double> flat);
  std::uint64_t version() const { return version_; }

  Eigen::VectorXd encode(const ModelInput& input) const;
  Eigen::VectorXd predict_goals(const Eigen::VectorXd& phi) const;  // 2K, meters
  Eigen::MatrixXd complete_trajectories(const Eigen::VectorXd& phi,
                                        const Eigen::VectorXd& goals) const;
  RefineTrace refine(const Eigen::MatrixXd& anchors, const Eigen::VectorXd& history) const;

  ForwardTrace forward(const ModelInput& input) const;

  PredictorParams backward(const ForwardTrace& trace, const OutputGradients& grads) const;
  // Accumulates refinement-layer gradients into `grads` and returns the
  // gradient with respect to the anchors fed to `refine`.
  Eigen::MatrixXd refine_backward(const RefineTrace& trace, const Eigen::MatrixXd& d_offsets,
                                  const Eigen::VectorXd& d_raw_scores,
                                  PredictorParams& grads) const;

 private:
  EncoderTrace encode_traced(const ModelInput& input) const;
  CompletionTrace complete_traced(const Eigen::VectorXd& phi, const Eigen::VectorXd& goals) const;
  void check_trace(std::uint64_t version) const;

  PredictorConfig config_;
  PredictorParams params_;
  std::uint64_t version_;
};

PredictionSet to_prediction_set(const PredictorOutput& output, double dt = kDefaultDt);

}  // namespace trajcast

#endif  // TRAJCAST_PREDICTOR_H_
