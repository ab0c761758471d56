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

#ifndef TRAJCAST_HARNESS_H_
#define TRAJCAST_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trajcast/ensemble.h"
#include "trajcast/losses.h"
#include "trajcast/metrics.h"
#include "trajcast/objective.h"
#include "trajcast/predictor.h"
#include "trajcast/train_config.h"
#include "trajcast/types.h"
#include "trajcast/window.h"

namespace trajcast {

using PseudoTargetMap = std::map<std::string, PseudoTargetRecord>;

// ---------------------------------------------------------------------------
// Training.

ObjectiveOptions objective_options(const TrainConfig& config);

// Pseudo targets are stored in the unaugmented window-A agent frame and are
// carried through the same augmentation as the scenario.
ObjectiveSample make_training_sample(const Scenario& scenario, const TrainConfig& config,
                                     std::uint64_t sample_seed,
                                     const PseudoTargetRecord* pseudo = nullptr);

struct EpochLog {
  std::size_t epoch = 0;
  double learning_rate = 0.0;
  LossBreakdown loss;  // mean over the epoch's scenarios
  std::size_t steps = 0;
};

std::string to_json(const EpochLog& log);

struct TrainResult {
  Predictor predictor;
  std::vector<EpochLog> log;
};

// Throws kEmptyDataset, kNonFiniteLoss (naming the scenario) and kUnknownScenario
// when mpt is on and a scenario has no pseudo-target record.
TrainResult train(const TrainConfig& config, std::span<const Scenario> dataset,
                  const PseudoTargetMap* pseudo_targets = nullptr, std::ostream* log = nullptr);

struct Checkpoint {
  Predictor predictor;
  TrainConfig config;
};

std::string checkpoint_json(const Predictor& predictor, const TrainConfig& config);
Checkpoint parse_checkpoint(const std::string& text);
void save_checkpoint(const std::filesystem::path& path, const Predictor& predictor,
                     const TrainConfig& config);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Evaluation.

using PredictFn = std::function<PredictionSet(const ScenarioWindow&)>;

// Throws kShapeMismatch when the window does not fit the predictor.
PredictionSet predict(const Predictor& predictor, const ScenarioWindow& window);
PredictFn predict_fn(const Predictor& predictor);

struct Evaluation {
  MetricReport report;
  std::vector<std::string> scenario_ids;
  std::vector<PredictionSet> predictions;  // window-A agent frame
};

Evaluation evaluate(const Predictor& predictor, std::span<const Scenario> dataset);
// One bank record per scenario, readable by read_bank_records.
void write_prediction_dump(std::ostream& out, const Evaluation& evaluation,
                           const std::string& model_tag);

// Mean over scenarios of the mean overlap ADE between bidirectionally
// matched predictions of the window at frame 0 and the window shifted by
// `shift`, compared in the first window's frame.
double jitter(const PredictFn& predict, std::span<const Scenario> dataset, std::size_t shift);

struct Coverage {
  std::size_t hits = 0;
  std::size_t branches = 0;
  double value() const {
    return branches == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(branches);
  }
};

// Over scenarios carrying alternative futures: the fraction of those futures
// whose endpoint some prediction reaches within `threshold` meters.
Coverage junction_coverage(const PredictFn& predict, std::span<const Scenario> dataset,
                           double threshold = kMissThreshold);

// ---------------------------------------------------------------------------
// Self-ensembling.

// Member m trains the base config with mpt off and seed base.seed + m.
TrainConfig ensemble_member_config(const TrainConfig& base, std::size_t member);
std::vector<Predictor> train_ensemble(const TrainConfig& base, std::span<const Scenario> dataset,
                                      std::ostream* log = nullptr);
// Tags are "m0", "m1", ...
EnsembleBank ensemble_predictions(std::span<const Predictor> members,
                                  std::span<const Scenario> dataset);
std::vector<PseudoTargetRecord> cluster_bank(const EnsembleBank& bank, std::size_t clusters,
                                             std::uint64_t seed);
PseudoTargetMap to_map(std::span<const PseudoTargetRecord> records);

}  // namespace trajcast

#endif  // TRAJCAST_HARNESS_H_
