// Copyright 2026 The SwRL Authors
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

#include "swrl/experiment.h"

#include <algorithm>

#include "swrl/io.h"

namespace swrl {

const std::vector<std::string>& TrainableAlgorithms() {
  static const std::vector<std::string> names = {"swrl", "swrl_sk", "swrl_sr", "vanilla", "bc"};
  return names;
}

const std::vector<std::string>& EvaluableAlgorithms() {
  static const std::vector<std::string> names = {"manual", "swrl", "swrl_sk", "swrl_sr",
                                                 "vanilla", "bc"};
  return names;
}

SwrlMode ModeFor(const std::string& algo) {
  if (algo == "swrl_sk") return SwrlMode::kForceOnly;
  if (algo == "swrl_sr") return SwrlMode::kRedundantOnly;
  return SwrlMode::kFull;
}

namespace {

void Prefix(ParamBlocks& out, const std::string& prefix, ParamBlocks in) {
  for (ParamBlock& b : in) {
    b.name = prefix + b.name;
    out.push_back(std::move(b));
  }
}

}  // namespace

Model::Model(const ScenarioConfig& config, const std::string& algo)
    : config_(config), algo_(algo) {
  const auto& names = TrainableAlgorithms();
  if (std::find(names.begin(), names.end(), algo) == names.end()) {
    throw ConfigError("algo", "unknown algorithm '" + algo +
                                  "' (swrl, swrl_sk, swrl_sr, vanilla, bc)");
  }
  if (algo == "vanilla") {
    vanilla_ = MakeVanillaLearner(config);
  } else if (algo == "bc") {
    bc_ = MakeBcModel(config);
  } else {
    swrl_ = MakeSwrlAgent(config);
  }
}

ParamBlocks Model::Parameters() {
  if (vanilla_) return vanilla_->Parameters();
  if (bc_) return bc_->Parameters();
  ParamBlocks blocks;
  Prefix(blocks, "force/", swrl_.force->Parameters());
  Prefix(blocks, "redundant/", swrl_.redundant->Parameters());
  return blocks;
}

PolicyFactory Model::Factory() const {
  if (vanilla_) {
    const VanillaLearner* l = vanilla_.get();
    return [l] { return std::make_unique<VanillaPolicy>(l); };
  }
  if (bc_) {
    const BcModel* m = bc_.get();
    return [m] { return std::make_unique<BcPolicy>(m); };
  }
  const DqnLearner* f = swrl_.force.get();
  const SacLearner* r = swrl_.redundant.get();
  const ScenarioConfig config = config_;
  const SwrlMode mode = ModeFor(algo_);
  return [f, r, config, mode] { return std::make_unique<SwrlPolicy>(f, r, config, mode); };
}

PolicyFactory ManualFactory(const ScenarioConfig& config) {
  return [config] { return std::make_unique<ManualPolicy>(config); };
}

std::vector<Transition> OfflineData(const ScenarioConfig& config,
                                    const std::string& algo, int workers) {
  const LearnerConfig& lc = config.learner;
  if (algo == "bc") {
    if (lc.offline_dataset.empty()) {
      throw ConfigError("learner.offline_dataset",
                        "behaviour cloning needs a dataset path (run collect-offline first)");
    }
    return ReadDataset(lc.offline_dataset);
  }
  if (!lc.offline_mixing) return {};
  if (!lc.offline_dataset.empty()) return ReadDataset(lc.offline_dataset);
  return CollectOffline(config, lc.offline_episodes, workers);
}

TrainOutcome Train(const ScenarioConfig& config, Model& model, int episodes,
                   const std::vector<Transition>& offline,
                   const std::function<void(const EpisodeSummary&)>& on_episode) {
  TrainOutcome out;
  if (model.algo() == "bc") {
    out.bc = TrainBc(config, offline, model.bc(), config.learner.bc_epochs);
    return out;
  }
  TrainOptions options;
  options.episodes = episodes;
  options.offline = offline.empty() ? nullptr : &offline;
  options.mode = ModeFor(model.algo());
  options.on_episode = on_episode;
  out.curve = model.algo() == "vanilla" ? TrainVanilla(config, model.vanilla(), options)
                                        : TrainSwrl(config, model.swrl(), options);
  return out;
}

EvalReport EvaluateAgainstManual(const ScenarioConfig& config,
                                 const std::string& method,
                                 const PolicyFactory& factory, int cases,
                                 int workers, std::vector<EpisodeLog>* method_logs) {
  const std::vector<EpisodeLog> manual = RunCases(config, ManualFactory(config), cases, workers);
  const std::vector<EpisodeLog> logs =
      method == "manual" ? manual : RunCases(config, factory, cases, workers);
  if (method_logs) *method_logs = logs;
  return Evaluate(method, logs, manual, config);
}

}  // namespace swrl
