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

#include "trajcast/metrics.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "trajcast/error.h"

namespace trajcast {
namespace {

void check_lengths(const Trajectory& pred, const Trajectory& gt) {
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "prediction has " + std::to_string(pred.size()) +
                    " steps, ground truth " + std::to_string(gt.size()));
  }
}

}  // namespace

double ade(const Trajectory& pred, const Trajectory& gt) {
  check_lengths(pred, gt);
  double sum = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) sum += distance(pred[t], gt[t]);
  return sum / static_cast<double>(pred.size());
}

double fde(const Trajectory& pred, const Trajectory& gt) {
  check_lengths(pred, gt);
  return distance(pred.back(), gt.back());
}

std::vector<std::size_t> top_k_indices(std::span<const double> scores, std::size_t k) {
  if (k > scores.size()) {
    throw Error(ErrorCode::kKTooLarge, "k=" + std::to_string(k) + " exceeds K=" +
                                           std::to_string(scores.size()));
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(k);
  return order;
}

MinMetrics min_metrics(const PredictionSet& preds, const Trajectory& gt, std::size_t k,
                       double threshold) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  auto chosen = top_k_indices(preds.scores(), k);
  // Lowest original index wins among equal errors.
  std::sort(chosen.begin(), chosen.end());

  MinMetrics m;
  m.min_ade = std::numeric_limits<double>::infinity();
  m.min_fde = std::numeric_limits<double>::infinity();
  std::size_t best_ade_index = chosen.front();
  for (std::size_t idx : chosen) {
    const double a = ade(preds.trajectories()[idx], gt);
    const double f = fde(preds.trajectories()[idx], gt);
    if (a < m.min_ade) {
      m.min_ade = a;
      best_ade_index = idx;
    }
    if (f < m.min_fde) {
      m.min_fde = f;
      m.best_fde_index = idx;
    }
  }
  m.miss = m.min_fde > threshold;
  const double p_fde = preds.scores()[m.best_fde_index];
  const double p_ade = preds.scores()[best_ade_index];
  m.brier_fde = m.min_fde + (1.0 - p_fde) * (1.0 - p_fde);
  m.brier_ade = m.min_ade + (1.0 - p_ade) * (1.0 - p_ade);
  return m;
}

MetricReport report(std::span<const PredictionSet> predictions,
                    std::span<const Trajectory> ground_truth, std::size_t multi_k,
                    double threshold) {
  if (predictions.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no scenarios to report on");
  }
  if (predictions.size() != ground_truth.size()) {
    throw Error(ErrorCode::kShapeMismatch, "one ground truth per prediction set required");
  }
  MetricReport r;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const MinMetrics one = min_metrics(predictions[i], ground_truth[i], 1, threshold);
    const MinMetrics six = min_metrics(predictions[i], ground_truth[i], multi_k, threshold);
    r.minADE_1 += one.min_ade;
    r.minFDE_1 += one.min_fde;
    r.MR_1 += one.miss ? 1.0 : 0.0;
    r.minADE_6 += six.min_ade;
    r.minFDE_6 += six.min_fde;
    r.MR_6 += six.miss ? 1.0 : 0.0;
    r.brier_minFDE_6 += six.brier_fde;
    r.brier_minADE_6 += six.brier_ade;
  }
  const double n = static_cast<double>(predictions.size());
  for (double* field : {&r.minADE_1, &r.minFDE_1, &r.MR_1, &r.minADE_6, &r.minFDE_6,
                        &r.MR_6, &r.brier_minFDE_6, &r.brier_minADE_6}) {
    *field /= n;
  }
  r.n_scenarios = predictions.size();
  return r;
}

std::string to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["minADE_1"] = r.minADE_1;
  j["minFDE_1"] = r.minFDE_1;
  j["MR_1"] = r.MR_1;
  j["minADE_6"] = r.minADE_6;
  j["minFDE_6"] = r.minFDE_6;
  j["MR_6"] = r.MR_6;
  j["brier_minFDE_6"] = r.brier_minFDE_6;
  j["brier_minADE_6"] = r.brier_minADE_6;
  j["n_scenarios"] = r.n_scenarios;
  return j.dump();
}

MetricReport metric_report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MetricReport r;
  r.minADE_1 = j.at("minADE_1").get<double>();
  r.minFDE_1 = j.at("minFDE_1").get<double>();
  r.MR_1 = j.at("MR_1").get<double>();
  r.minADE_6 = j.at("minADE_6").get<double>();
  r.minFDE_6 = j.at("minFDE_6").get<double>();
  r.MR_6 = j.at("MR_6").get<double>();
  r.brier_minFDE_6 = j.at("brier_minFDE_6").get<double>();
  r.brier_minADE_6 = j.value("brier_minADE_6", 0.0);
  r.n_scenarios = j.value("n_scenarios", std::size_t{0});
  return r;
}

}  // namespace trajcast
