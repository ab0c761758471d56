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

#ifndef TRAJCAST_ENSEMBLE_H_
#define TRAJCAST_ENSEMBLE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trajcast/types.h"

namespace trajcast {

struct ScoredTrajectory {
  Trajectory trajectory;
  double score = 0.0;
};

// Predictions of several trained models, keyed by scenario id.
class EnsembleBank {
 public:
  void add(const std::string& scenario_id, const std::string& model_tag, PredictionSet preds);

  bool contains(const std::string& scenario_id) const;
  std::size_t model_count(const std::string& scenario_id) const;  // distinct tags
  std::vector<std::string> scenario_ids() const;
  const std::vector<std::pair<std::string, PredictionSet>>& entries(
      const std::string& scenario_id) const;

 private:
  std::map<std::string, std::vector<std::pair<std::string, PredictionSet>>> entries_;
};

// Every model's K trajectories with their probabilities, in insertion order.
std::vector<ScoredTrajectory> pool(const EnsembleBank& bank, const std::string& scenario_id);

struct ClusterResult {
  std::vector<Trajectory> centroids;
  std::vector<double> scores;  // probability-mass fraction per cluster
  std::vector<std::size_t> member_counts;
  std::vector<std::size_t> assignment;  // cluster of each pooled trajectory
  std::vector<double> sse_history;      // after every centroid update
  std::size_t iterations = 0;

  double sse() const { return sse_history.empty() ? 0.0 : sse_history.back(); }
};

inline constexpr std::size_t kDefaultKMeansIterations = 100;
inline constexpr std::size_t kDefaultKMeansRestarts = 10;

// Lloyd's k-means on flattened waypoint vectors with k-means++ seeding.
// Empty clusters are re-seeded from the point farthest from its centroid.
// Runs `restarts` seedings and keeps the lowest-SSE result (first on ties).
ClusterResult kmeans_trajectories(std::span<const ScoredTrajectory> pooled, std::size_t clusters,
                                  std::uint64_t seed,
                                  std::size_t max_iter = kDefaultKMeansIterations,
                                  std::size_t restarts = kDefaultKMeansRestarts);

// Pools one scenario and clusters it; requires at least two distinct models.
ClusterResult cluster_scenario(const EnsembleBank& bank, const std::string& scenario_id,
                               std::size_t clusters, std::uint64_t seed);

// [gt, centroids...] with confidences [1, scores...].
TargetSet build_target_set(const ClusterResult& cluster, const Trajectory& gt);

struct PseudoTargetRecord {
  std::string scenario_id;
  std::vector<Trajectory> trajectories;
  std::vector<double> confidences;
};

// JSON lines, one record per scenario: {"scenario_id", "trajectories": [[[x, y], ...], ...],
// "confidences": [...]}. Coordinates are in the scenario's agent frame.
void write_pseudo_targets(std::ostream& out, std::span<const PseudoTargetRecord> records);
std::map<std::string, PseudoTargetRecord> read_pseudo_targets(std::istream& in);

// JSON lines, one record per (scenario, model): {"scenario_id", "model_tag",
// "trajectories", "scores"}.
void write_bank_record(std::ostream& out, const std::string& scenario_id,
                       const std::string& model_tag, const PredictionSet& preds);
void read_bank_records(std::istream& in, EnsembleBank& bank);

}  // namespace trajcast

#endif  // TRAJCAST_ENSEMBLE_H_
