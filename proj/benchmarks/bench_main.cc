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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "trajcast/ensemble.h"
#include "trajcast/harness.h"
#include "trajcast/matching.h"
#include "trajcast/synthetic.h"

namespace {

trajcast::SimilarityMatrix random_similarity(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  trajcast::SimilarityMatrix s;
  s.cost.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < s.cost.size(); ++i) s.cost.data()[i] = dist(rng);
  return s;
}

void BM_Bidirectional(benchmark::State& state) {
  const auto s = random_similarity(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(trajcast::match_bidirectional(s));
}
BENCHMARK(BM_Bidirectional)->Arg(6)->Arg(36);

void BM_Hungarian(benchmark::State& state) {
  const auto s = random_similarity(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(trajcast::match_hungarian(s));
}
BENCHMARK(BM_Hungarian)->Arg(6)->Arg(36);

void BM_Similarity(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd a(60, 6);
  Eigen::MatrixXd b(60, 6);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = dist(rng), b.data()[i] = dist(rng);
  const auto overlap = trajcast::Overlap::shifted(30, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajcast::similarity(a, b, trajcast::Criterion::kFde, overlap));
  }
}
BENCHMARK(BM_Similarity);

struct PredictorFixture {
  PredictorFixture() {
    trajcast::SyntheticSpec spec;
    spec.scenario_count = 1;
    scenario = trajcast::generate(spec).front();
    predictor = trajcast::Predictor::initialize(trajcast::PredictorConfig{}, 7);
    sample = trajcast::make_training_sample(scenario, config, 11);
  }
  trajcast::Scenario scenario;
  trajcast::TrainConfig config;
  trajcast::Predictor predictor = trajcast::Predictor::initialize(trajcast::PredictorConfig{}, 7);
  trajcast::ObjectiveSample sample;
};

void BM_PredictorForward(benchmark::State& state) {
  const PredictorFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(f.predictor.forward(f.sample.input_a));
}
BENCHMARK(BM_PredictorForward);

void BM_ObjectiveWithGradient(benchmark::State& state) {
  const PredictorFixture f;
  const auto options = trajcast::objective_options(f.config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajcast::evaluate_objective(f.predictor, f.sample, options, true));
  }
}
BENCHMARK(BM_ObjectiveWithGradient);

void BM_KMeans(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  std::vector<trajcast::ScoredTrajectory> pooled;
  for (int i = 0; i < 24; ++i) {
    std::vector<trajcast::Waypoint> pts;
    for (int t = 0; t < 30; ++t) pts.push_back({t + dist(rng), (i % 3) * 5.0 + dist(rng)});
    pooled.push_back({trajcast::Trajectory(pts), 1.0 / 24.0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(trajcast::kmeans_trajectories(pooled, 6, 9));
}
BENCHMARK(BM_KMeans);

}  // namespace
BENCHMARK_MAIN();
