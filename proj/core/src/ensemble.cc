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

#include "trajcast/ensemble.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include <Eigen/Core>

#include "json.hpp"
#include "trajcast/error.h"
#include "trajcast/random.h"
#include "trajcast/trajectory_batch.h"

namespace trajcast {
namespace {

nlohmann::json trajectories_json(std::span<const Trajectory> trajs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : trajs) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : t.points()) pts.push_back({p.x, p.y});
    arr.push_back(std::move(pts));
  }
  return arr;
}

std::vector<Trajectory> trajectories_from_json(const nlohmann::json& arr) {
  std::vector<Trajectory> out;
  for (const auto& pts : arr) {
    std::vector<Waypoint> wps;
    for (const auto& p : pts) wps.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    out.emplace_back(std::move(wps));
  }
  return out;
}

// Squared distances from every column of `points` to `centroid`.
Eigen::VectorXd squared_distances(const Eigen::MatrixXd& points, const Eigen::VectorXd& centroid) {
  return (points.colwise() - centroid).colwise().squaredNorm().transpose();
}

}  // namespace

void EnsembleBank::add(const std::string& scenario_id, const std::string& model_tag,
                       PredictionSet preds) {
  auto& list = entries_[scenario_id];
  if (!list.empty() && list.front().second.horizon() != preds.horizon()) {
    throw Error(ErrorCode::kLengthMismatch, "ensemble predictions for " + scenario_id +
                                                " differ in horizon");
  }
  list.emplace_back(model_tag, std::move(preds));
}

bool EnsembleBank::contains(const std::string& scenario_id) const {
  return entries_.count(scenario_id) != 0;
}

std::size_t EnsembleBank::model_count(const std::string& scenario_id) const {
  std::set<std::string> tags;
  for (const auto& [tag, preds] : entries(scenario_id)) tags.insert(tag);
  return tags.size();
}

std::vector<std::string> EnsembleBank::scenario_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, list] : entries_) ids.push_back(id);
  return ids;
}

const std::vector<std::pair<std::string, PredictionSet>>& EnsembleBank::entries(
    const std::string& scenario_id) const {
  const auto it = entries_.find(scenario_id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kUnknownScenario, "no ensemble predictions for " + scenario_id);
  }
  return it->second;
}

std::vector<ScoredTrajectory> pool(const EnsembleBank& bank, const std::string& scenario_id) {
  std::vector<ScoredTrajectory> out;
  for (const auto& [tag, preds] : bank.entries(scenario_id)) {
    for (std::size_t k = 0; k < preds.size(); ++k) {
      out.push_back({preds.trajectories()[k], preds.scores()[k]});
    }
  }
  return out;
}

namespace {

// One Lloyd run from a single k-means++ seeding.
ClusterResult kmeans_once(std::span<const ScoredTrajectory> pooled, std::size_t clusters,
                          std::uint64_t seed, std::size_t max_iter) {
  std::vector<Trajectory> trajs;
  trajs.reserve(pooled.size());
  for (const auto& s : pooled) trajs.push_back(s.trajectory);
  const Eigen::MatrixXd points = to_matrix(trajs);
  const auto n = points.cols();
  const auto j = static_cast<Eigen::Index>(clusters);

  // k-means++ seeding.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd centroids(points.rows(), j);
  centroids.col(0) = points.col(static_cast<Eigen::Index>(
      std::min<double>(static_cast<double>(n) - 1, std::floor(unit(rng) * static_cast<double>(n)))));
  Eigen::VectorXd nearest = squared_distances(points, centroids.col(0));
  for (Eigen::Index c = 1; c < j; ++c) {
    const double total = nearest.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double r = unit(rng) * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        r -= nearest(i);
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(
          std::min<double>(static_cast<double>(n) - 1, std::floor(unit(rng) * static_cast<double>(n))));
    }
    centroids.col(c) = points.col(pick);
    nearest = nearest.cwiseMin(squared_distances(points, centroids.col(c)));
  }

  ClusterResult result;
  std::vector<std::size_t> assignment(static_cast<std::size_t>(n),
                                      std::numeric_limits<std::size_t>::max());
  Eigen::MatrixXd dist(n, j);
  auto assign = [&]() {
    bool changed = false;
    for (Eigen::Index c = 0; c < j; ++c) dist.col(c) = squared_distances(points, centroids.col(c));
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      for (Eigen::Index c = 1; c < j; ++c) {
        if (dist(i, c) < dist(i, best)) best = c;
      }
      auto& a = assignment[static_cast<std::size_t>(i)];
      if (a != static_cast<std::size_t>(best)) {
        a = static_cast<std::size_t>(best);
        changed = true;
      }
    }
    return changed;
  };
  auto point_cost = [&](Eigen::Index i) {
    return (points.col(i) - centroids.col(static_cast<Eigen::Index>(assignment[static_cast<std::size_t>(i)])))
        .squaredNorm();
  };

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    if (!assign() && iter > 0) break;
    result.iterations = iter + 1;

    std::vector<std::size_t> counts(clusters, 0);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(points.rows(), j);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = assignment[static_cast<std::size_t>(i)];
      sums.col(static_cast<Eigen::Index>(c)) += points.col(i);
      ++counts[c];
    }
    for (Eigen::Index c = 0; c < j; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centroids.col(c) = sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    for (Eigen::Index c = 0; c < j; ++c) {
      if (counts[static_cast<std::size_t>(c)] != 0) continue;
      Eigen::Index far = -1;
      double far_cost = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[assignment[static_cast<std::size_t>(i)]] < 2) continue;
        const double cost = point_cost(i);
        if (cost > far_cost) {
          far_cost = cost;
          far = i;
        }
      }
      if (far < 0) break;
      --counts[assignment[static_cast<std::size_t>(far)]];
      assignment[static_cast<std::size_t>(far)] = static_cast<std::size_t>(c);
      counts[static_cast<std::size_t>(c)] = 1;
      centroids.col(c) = points.col(far);
    }
    double sse = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) sse += point_cost(i);
    result.sse_history.push_back(sse);
  }

  result.assignment = assignment;
  result.member_counts.assign(clusters, 0);
  std::vector<double> mass(clusters, 0.0);
  double total_mass = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    ++result.member_counts[assignment[i]];
    mass[assignment[i]] += pooled[i].score;
    total_mass += pooled[i].score;
  }
  for (std::size_t c = 0; c < clusters; ++c) {
    result.centroids.push_back(
        column_trajectory(centroids, static_cast<Eigen::Index>(c), pooled.front().trajectory.dt()));
    result.scores.push_back(total_mass > 0.0
                                ? mass[c] / total_mass
                                : static_cast<double>(result.member_counts[c]) /
                                      static_cast<double>(assignment.size()));
  }
  return result;
}

}  // namespace

ClusterResult kmeans_trajectories(std::span<const ScoredTrajectory> pooled, std::size_t clusters,
                                  std::uint64_t seed, std::size_t max_iter,
                                  std::size_t restarts) {
  if (clusters == 0 || pooled.size() < clusters) {
    throw Error(ErrorCode::kTooFewTrajectories,
                std::to_string(pooled.size()) + " trajectories cannot form " +
                    std::to_string(clusters) + " clusters");
  }
  ClusterResult best = kmeans_once(pooled, clusters, derive_seed(seed, 0), max_iter);
  for (std::size_t r = 1; r < restarts; ++r) {
    ClusterResult candidate = kmeans_once(pooled, clusters, derive_seed(seed, r), max_iter);
    if (candidate.sse() < best.sse()) best = std::move(candidate);
  }
  return best;
}

ClusterResult cluster_scenario(const EnsembleBank& bank, const std::string& scenario_id,
                               std::size_t clusters, std::uint64_t seed) {
  if (bank.model_count(scenario_id) < 2) {
    throw Error(ErrorCode::kTooFewTrajectories,
                "scenario " + scenario_id + " needs predictions from at least two models");
  }
  const auto pooled = pool(bank, scenario_id);
  return kmeans_trajectories(pooled, clusters, seed);
}

TargetSet build_target_set(const ClusterResult& cluster, const Trajectory& gt) {
  std::vector<Trajectory> targets{gt};
  std::vector<double> confidences{1.0};
  for (std::size_t c = 0; c < cluster.centroids.size(); ++c) {
    if (cluster.centroids[c].size() != gt.size()) {
      throw Error(ErrorCode::kLengthMismatch, "pseudo target length differs from ground truth");
    }
    targets.push_back(cluster.centroids[c]);
    confidences.push_back(std::clamp(cluster.scores[c], 0.0, 1.0));
  }
  return TargetSet(std::move(targets), std::move(confidences));
}

void write_pseudo_targets(std::ostream& out, std::span<const PseudoTargetRecord> records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["scenario_id"] = r.scenario_id;
    j["trajectories"] = trajectories_json(r.trajectories);
    j["confidences"] = r.confidences;
    out << j.dump() << '\n';
  }
}

std::map<std::string, PseudoTargetRecord> read_pseudo_targets(std::istream& in) {
  std::map<std::string, PseudoTargetRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      PseudoTargetRecord r;
      r.scenario_id = j.at("scenario_id").get<std::string>();
      r.trajectories = trajectories_from_json(j.at("trajectories"));
      r.confidences = j.at("confidences").get<std::vector<double>>();
      if (r.confidences.size() != r.trajectories.size()) {
        throw Error(ErrorCode::kShapeMismatch, "confidence count differs from trajectory count");
      }
      out[r.scenario_id] = std::move(r);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRow,
                  "pseudo-target line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_bank_record(std::ostream& out, const std::string& scenario_id,
                       const std::string& model_tag, const PredictionSet& preds) {
  nlohmann::ordered_json j;
  j["scenario_id"] = scenario_id;
  j["model_tag"] = model_tag;
  j["trajectories"] = trajectories_json(preds.trajectories());
  j["scores"] = preds.scores();
  out << j.dump() << '\n';
}

void read_bank_records(std::istream& in, EnsembleBank& bank) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      bank.add(j.at("scenario_id").get<std::string>(), j.at("model_tag").get<std::string>(),
               PredictionSet(trajectories_from_json(j.at("trajectories")),
                             j.at("scores").get<std::vector<double>>()));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRow,
                  "bank line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace trajcast
