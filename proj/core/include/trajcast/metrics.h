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

#ifndef TRAJCAST_METRICS_H_
#define TRAJCAST_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trajcast/types.h"

namespace trajcast {

inline constexpr double kMissThreshold = 2.0;  // meters

// Mean per-step Euclidean error. Throws kLengthMismatch on unequal lengths.
double ade(const Trajectory& pred, const Trajectory& gt);
// Euclidean error at the last step.
double fde(const Trajectory& pred, const Trajectory& gt);

// Indices of the k highest-scoring trajectories; equal scores keep index order.
std::vector<std::size_t> top_k_indices(std::span<const double> scores, std::size_t k);

struct MinMetrics {
  double min_ade = 0.0;
  double min_fde = 0.0;
  bool miss = false;
  // min_fde + (1 - p)^2 with p the probability of the FDE-minimizing trajectory.
  double brier_fde = 0.0;
  // min_ade + (1 - p)^2 with p taken from the ADE-minimizing trajectory.
  double brier_ade = 0.0;
  std::size_t best_fde_index = 0;
};

MinMetrics min_metrics(const PredictionSet& preds, const Trajectory& gt, std::size_t k,
                       double threshold = kMissThreshold);

struct MetricReport {
  double minADE_1 = 0.0;
  double minFDE_1 = 0.0;
  double MR_1 = 0.0;
  double minADE_6 = 0.0;
  double minFDE_6 = 0.0;
  double MR_6 = 0.0;
  double brier_minFDE_6 = 0.0;
  double brier_minADE_6 = 0.0;
  std::size_t n_scenarios = 0;
};

// Arithmetic means over scenarios. `multi_k` is the "6" in the field names.
MetricReport report(std::span<const PredictionSet> predictions,
                    std::span<const Trajectory> ground_truth,
                    std::size_t multi_k = 6, double threshold = kMissThreshold);

std::string to_json(const MetricReport& r);
MetricReport metric_report_from_json(const std::string& text);

}  // namespace trajcast

#endif  // TRAJCAST_METRICS_H_
