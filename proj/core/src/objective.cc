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

#include "trajcast/objective.h"

#include "trajcast/error.h"
#include "trajcast/trajectory_batch.h"

namespace trajcast {

ObjectiveResult evaluate_objective(const Predictor& predictor, const ObjectiveSample& sample,
                                   const ObjectiveOptions& options, bool with_gradient,
                                   const ObjectiveDecisions* frozen) {
  const PredictorConfig& config = predictor.config();
  const ForwardTrace trace_a = predictor.forward(sample.input_a);
  const PredictorOutput& out = trace_a.output;
  OutputGradients grad_a = OutputGradients::zeros(config);

  ObjectiveResult result;
  result.decisions.targets =
      frozen != nullptr ? frozen->targets
                        : assign_targets(out.refined, sample.targets, sample.confidences);
  SupervisionTerms terms;
  terms.refine_term = config.use_refine;
  result.loss = supervision_loss(out.anchors, out.refined, out.raw_scores, sample.targets,
                                 result.decisions.targets, terms, &grad_a.d_anchors,
                                 &grad_a.d_refined, &grad_a.d_raw_scores);

  std::optional<ForwardTrace> trace_b;
  Eigen::MatrixXd grad_b;
  if (options.temporal) {
    if (!sample.input_b) {
      throw Error(ErrorCode::kInvalidArgument, "temporal consistency needs a shifted window");
    }
    if (options.shift < 1 || options.shift >= config.horizon) {
      throw Error(ErrorCode::kInvalidShift, "shift must satisfy 1 <= s < T");
    }
    trace_b = predictor.forward(*sample.input_b);
    const Eigen::MatrixXd b_in_a = change_frame(trace_b->output.refined, sample.frame_b,
                                                sample.frame_a);
    const Overlap overlap = Overlap::shifted(config.horizon, options.shift);
    result.decisions.temporal =
        frozen != nullptr ? frozen->temporal
                          : consistency_matching(out.refined, b_in_a, overlap, options.strategy,
                                                 options.criterion);
    Eigen::MatrixXd d_b_in_a = Eigen::MatrixXd::Zero(b_in_a.rows(), b_in_a.cols());
    result.loss.l_temp = overlap_consistency_loss(out.refined, b_in_a, overlap,
                                                  result.decisions.temporal, &grad_a.d_refined,
                                                  &d_b_in_a);
    grad_b = change_frame_gradient(d_b_in_a, sample.frame_b, sample.frame_a);
  }

  PredictorParams extra = PredictorParams::zeros(config);
  if (options.spatial && config.use_refine) {
    const SpatialPermutation& z = sample.z;
    const RefineTrace perturbed =
        predictor.refine(z.apply_anchors(out.anchors), z.apply_history(sample.input_a.history));
    const Eigen::MatrixXd mapped = z.invert_offsets(perturbed.offsets);
    Eigen::MatrixXd d_mapped = Eigen::MatrixXd::Zero(mapped.rows(), mapped.cols());
    result.loss.l_spa = spatial_loss(out.offsets, mapped, &grad_a.d_offsets, &d_mapped);
    if (with_gradient) {
      const Eigen::MatrixXd d_perturbed_anchors = predictor.refine_backward(
          perturbed, z.reflect(d_mapped), Eigen::VectorXd::Zero(mapped.cols()), extra);
      grad_a.d_anchors += z.reflect(d_perturbed_anchors);
    }
  }
  result.loss.finalize();

  if (with_gradient) {
    result.grad = predictor.backward(trace_a, grad_a);
    result.grad += extra;
    if (trace_b) {
      OutputGradients g = OutputGradients::zeros(config);
      g.d_refined = grad_b;
      result.grad += predictor.backward(*trace_b, g);
    }
  }
  return result;
}

}  // namespace trajcast
