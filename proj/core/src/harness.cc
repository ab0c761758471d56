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

#include "trajcast/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "trajcast/adam.h"
#include "trajcast/augment.h"
#include "trajcast/dataset.h"
#include "trajcast/error.h"
#include "trajcast/frame.h"
#include "trajcast/matching.h"
#include "trajcast/random.h"
#include "trajcast/trajectory_batch.h"

namespace trajcast {
namespace {

enum SeedStream : std::uint64_t {
  kInitStream = 1,
  kShuffleStream = 2,
  kSampleStream = 3,
  kAugmentStream = 4,
  kSpatialStream = 5,
  kClusterStream = 6,
};

void check_shape(const Predictor& predictor, const Scenario& scenario) {
  const PredictorConfig& c = predictor.config();
  if (scenario.history_len != c.history_len || scenario.future_len != c.horizon) {
    throw Error(ErrorCode::kShapeMismatch,
                "scenario " + scenario.scenario_id + " has " +
                    std::to_string(scenario.history_len) + "+" +
                    std::to_string(scenario.future_len) + " frames, model expects " +
                    std::to_string(c.history_len) + "+" + std::to_string(c.horizon));
  }
}

}  // namespace

ObjectiveOptions objective_options(const TrainConfig& config) {
  ObjectiveOptions o;
  o.temporal = config.toggles.temp;
  o.spatial = config.toggles.spatial;
  o.shift = config.shift;
  o.strategy = config.strategy;
  o.criterion = config.criterion;
  return o;
}

ObjectiveSample make_training_sample(const Scenario& scenario, const TrainConfig& config,
                                     std::uint64_t sample_seed,
                                     const PseudoTargetRecord* pseudo) {
  AugmentTransform transform;
  if (config.augment) {
    transform = sample_augmentation(AugmentSpec{}, derive_seed(sample_seed, kAugmentStream));
  }
  const Scenario sc = config.augment ? transform.apply(scenario) : scenario;

  ObjectiveSample sample;
  ScenarioWindow a;
  if (config.toggles.temp) {
    ShiftPair pair = make_shift_pair(sc, config.shift);
    a = std::move(pair.a);
    sample.input_b = build_input(pair.b, sc.history_len);
    sample.frame_b = pair.b.frame;
  } else {
    a = make_window(sc, 0);
  }
  if (!a.future) {
    throw Error(ErrorCode::kInsufficientFrames,
                "scenario " + sc.scenario_id + " has no future after its history");
  }
  sample.input_a = build_input(a, sc.history_len);
  sample.frame_a = a.frame;

  std::vector<Trajectory> targets{*a.future};
  sample.confidences = {1.0};
  if (pseudo != nullptr) {
    const Frame original = agent_frame_at(scenario, scenario.history_len - 1);
    const std::size_t count = std::min(config.pseudo_targets, pseudo->trajectories.size());
    for (std::size_t j = 0; j < count; ++j) {
      Trajectory world = from_frame(pseudo->trajectories[j], original);
      if (config.augment) world = transform.apply(world);
      targets.push_back(to_frame(world, a.frame));
      sample.confidences.push_back(pseudo->confidences[j]);
    }
  }
  sample.targets = to_matrix(targets);

  if (config.toggles.spatial) {
    sample.z = SpatialPermutation::sample(sc.future_len, config.modes, config.spatial_noise,
                                          config.spatial_flip_prob,
                                          derive_seed(sample_seed, kSpatialStream));
  }
  return sample;
}

std::string to_json(const EpochLog& log) {
  nlohmann::ordered_json j;
  j["epoch"] = log.epoch;
  j["lr"] = log.learning_rate;
  j["steps"] = log.steps;
  j["l_reg"] = log.loss.l_reg;
  j["l_cls"] = log.loss.l_cls;
  j["l_temp"] = log.loss.l_temp;
  j["l_spa"] = log.loss.l_spa;
  j["total"] = log.loss.total;
  return j.dump();
}

TrainResult train(const TrainConfig& config, std::span<const Scenario> dataset,
                  const PseudoTargetMap* pseudo_targets, std::ostream* log) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "training set is empty");
  const std::size_t history_len = dataset.front().history_len;
  const std::size_t horizon = dataset.front().future_len;
  config.validate(horizon);
  if (config.toggles.mpt && pseudo_targets == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "mpt is on but no pseudo targets were given");
  }

  Predictor predictor = Predictor::initialize(predictor_config(config, history_len, horizon),
                                              derive_seed(config.seed, kInitStream));
  for (const auto& sc : dataset) check_shape(predictor, sc);
  const ObjectiveOptions options = objective_options(config);
  Adam adam(predictor.params().size());
  std::vector<double> flat = predictor.params().flatten();

  TrainResult result{predictor, {}};
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 shuffle_rng(derive_seed(config.seed, kShuffleStream, epoch));
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    const double lr = learning_rate_at(config, epoch);

    EpochLog entry;
    entry.epoch = epoch;
    entry.learning_rate = lr;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      PredictorParams grad = PredictorParams::zeros(predictor.config());
      for (std::size_t i = begin; i < end; ++i) {
        const Scenario& sc = dataset[order[i]];
        const PseudoTargetRecord* pseudo = nullptr;
        if (config.toggles.mpt) {
          const auto it = pseudo_targets->find(sc.scenario_id);
          if (it == pseudo_targets->end()) {
            throw Error(ErrorCode::kUnknownScenario, "no pseudo targets for " + sc.scenario_id);
          }
          pseudo = &it->second;
        }
        const ObjectiveSample sample = make_training_sample(
            sc, config, derive_seed(config.seed, kSampleStream, epoch, order[i]), pseudo);
        const ObjectiveResult r = evaluate_objective(predictor, sample, options, true);
        if (!std::isfinite(r.loss.total)) {
          throw Error(ErrorCode::kNonFiniteLoss, "non-finite loss on scenario " + sc.scenario_id +
                                                     " at epoch " + std::to_string(epoch));
        }
        grad += r.grad;
        entry.loss += r.loss;
      }
      grad *= 1.0 / static_cast<double>(end - begin);
      const std::vector<double> g = grad.flatten();
      adam.step(flat, g, lr);
      predictor.assign(flat);
      ++entry.steps;
    }
    entry.loss *= 1.0 / static_cast<double>(dataset.size());
    entry.loss.finalize();
    if (log != nullptr) *log << to_json(entry) << '\n';
    result.log.push_back(entry);
  }
  result.predictor = predictor;
  return result;
}

std::string checkpoint_json(const Predictor& predictor, const TrainConfig& config) {
  const PredictorConfig& c = predictor.config();
  nlohmann::ordered_json j;
  j["format"] = "trajcast-checkpoint";
  j["version"] = 1;
  j["model"] = {{"hidden", c.hidden},           {"modes", c.modes},
                {"history_len", c.history_len}, {"horizon", c.horizon},
                {"use_goal", c.use_goal},       {"use_refine", c.use_refine}};
  j["train_config"] = to_string(config);
  j["params"] = predictor.params().flatten();
  return j.dump();
}

Checkpoint parse_checkpoint(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "trajcast-checkpoint") {
      throw Error(ErrorCode::kShapeMismatch, "not a trajcast checkpoint");
    }
    const auto& m = j.at("model");
    PredictorConfig c;
    c.hidden = m.at("hidden").get<std::size_t>();
    c.modes = m.at("modes").get<std::size_t>();
    c.history_len = m.at("history_len").get<std::size_t>();
    c.horizon = m.at("horizon").get<std::size_t>();
    c.use_goal = m.at("use_goal").get<bool>();
    c.use_refine = m.at("use_refine").get<bool>();
    const auto flat = j.at("params").get<std::vector<double>>();
    PredictorParams params = PredictorParams::zeros(c);
    if (flat.size() != params.size()) {
      throw Error(ErrorCode::kShapeMismatch, "checkpoint holds " + std::to_string(flat.size()) +
                                                 " parameters, model needs " +
                                                 std::to_string(params.size()));
    }
    params.assign(flat);
    std::istringstream config_text(j.at("train_config").get<std::string>());
    return Checkpoint{Predictor(c, std::move(params)), parse_train_config(config_text)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kShapeMismatch, std::string("bad checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Predictor& predictor,
                     const TrainConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << checkpoint_json(predictor, config) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_checkpoint(buffer.str());
}

PredictionSet predict(const Predictor& predictor, const ScenarioWindow& window) {
  const PredictorConfig& c = predictor.config();
  if (window.target_history.size() != c.history_len) {
    throw Error(ErrorCode::kShapeMismatch,
                "window has " + std::to_string(window.target_history.size()) +
                    " history frames, model expects " + std::to_string(c.history_len));
  }
  return to_prediction_set(predictor.forward(build_input(window, c.history_len)).output);
}

PredictFn predict_fn(const Predictor& predictor) {
  return [&predictor](const ScenarioWindow& w) { return predict(predictor, w); };
}

Evaluation evaluate(const Predictor& predictor, std::span<const Scenario> dataset) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "evaluation set is empty");
  Evaluation ev;
  std::vector<Trajectory> gts;
  for (const auto& sc : dataset) {
    check_shape(predictor, sc);
    const ScenarioWindow w = make_window(sc, 0);
    if (!w.future) {
      throw Error(ErrorCode::kShapeMismatch, "scenario " + sc.scenario_id + " has no future");
    }
    ev.scenario_ids.push_back(sc.scenario_id);
    ev.predictions.push_back(predict(predictor, w));
    gts.push_back(*w.future);
  }
  ev.report = report(ev.predictions, gts, std::min<std::size_t>(6, predictor.config().modes));
  return ev;
}

void write_prediction_dump(std::ostream& out, const Evaluation& evaluation,
                           const std::string& model_tag) {
  for (std::size_t i = 0; i < evaluation.predictions.size(); ++i) {
    write_bank_record(out, evaluation.scenario_ids[i], model_tag, evaluation.predictions[i]);
  }
}

double jitter(const PredictFn& predict, std::span<const Scenario> dataset, std::size_t shift) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "jitter needs scenarios");
  double sum = 0.0;
  for (const auto& sc : dataset) {
    const ShiftPair pair = make_shift_pair(sc, shift);
    const PredictionSet a = predict(pair.a);
    const PredictionSet b = predict(pair.b);
    std::vector<Trajectory> b_in_a;
    for (const auto& t : b.trajectories()) {
      b_in_a.push_back(to_frame(from_frame(t, pair.b.frame), pair.a.frame));
    }
    const Overlap overlap = shift == 0 ? Overlap::full(a.horizon())
                                       : Overlap::shifted(a.horizon(), shift);
    const SimilarityMatrix s = similarity(a.trajectories(), b_in_a, Criterion::kAde, overlap);
    const MatchResult m = match_bidirectional(s);
    double scenario_sum = 0.0;
    for (const auto& p : m.pairs) scenario_sum += s.cost(p.a, p.b);
    sum += scenario_sum / static_cast<double>(m.pairs.size());
  }
  return sum / static_cast<double>(dataset.size());
}

Coverage junction_coverage(const PredictFn& predict, std::span<const Scenario> dataset,
                           double threshold) {
  Coverage c;
  for (const auto& sc : dataset) {
    if (sc.alternative_futures.empty()) continue;
    const ScenarioWindow w = make_window(sc, 0);
    const PredictionSet preds = predict(w);
    for (const auto& alt : w.alternative_futures) {
      ++c.branches;
      for (const auto& p : preds.trajectories()) {
        if (fde(p, alt) <= threshold) {
          ++c.hits;
          break;
        }
      }
    }
  }
  return c;
}

TrainConfig ensemble_member_config(const TrainConfig& base, std::size_t member) {
  TrainConfig c = base;
  c.toggles.mpt = false;
  c.seed = base.seed + member;
  return c;
}

std::vector<Predictor> train_ensemble(const TrainConfig& base, std::span<const Scenario> dataset,
                                      std::ostream* log) {
  std::vector<Predictor> members;
  for (std::size_t m = 0; m < base.ensemble_members; ++m) {
    members.push_back(train(ensemble_member_config(base, m), dataset, nullptr, log).predictor);
  }
  return members;
}

EnsembleBank ensemble_predictions(std::span<const Predictor> members,
                                  std::span<const Scenario> dataset) {
  EnsembleBank bank;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const Evaluation ev = evaluate(members[m], dataset);
    for (std::size_t i = 0; i < ev.predictions.size(); ++i) {
      bank.add(ev.scenario_ids[i], "m" + std::to_string(m), ev.predictions[i]);
    }
  }
  return bank;
}

std::vector<PseudoTargetRecord> cluster_bank(const EnsembleBank& bank, std::size_t clusters,
                                             std::uint64_t seed) {
  std::vector<PseudoTargetRecord> records;
  const auto ids = bank.scenario_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const ClusterResult r =
        kmeans_trajectories(pool(bank, ids[i]), clusters, derive_seed(seed, kClusterStream, i));
    records.push_back({ids[i], r.centroids, r.scores});
  }
  return records;
}

PseudoTargetMap to_map(std::span<const PseudoTargetRecord> records) {
  PseudoTargetMap out;
  for (const auto& r : records) out[r.scenario_id] = r;
  return out;
}

}  // namespace trajcast
