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

#ifndef SWRL_EXPERIMENT_H_
#define SWRL_EXPERIMENT_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swrl/baselines.h"
#include "swrl/config.h"
#include "swrl/training.h"

namespace swrl {

// Trainable algorithms: swrl, swrl_sk, swrl_sr, vanilla, bc.
const std::vector<std::string>& TrainableAlgorithms();
// Trainable algorithms plus "manual".
const std::vector<std::string>& EvaluableAlgorithms();

// Parameters and acting for one algorithm.
class Model {
 public:
  // Throws ConfigError naming "algo" for an unknown name.
  Model(const ScenarioConfig& config, const std::string& algo);

  const std::string& algo() const { return algo_; }
  ParamBlocks Parameters();
  PolicyFactory Factory() const;

  SwrlAgent& swrl() { return swrl_; }
  VanillaLearner& vanilla() { return *vanilla_; }
  BcModel& bc() { return *bc_; }

 private:
  ScenarioConfig config_;
  std::string algo_;
  SwrlAgent swrl_;
  std::unique_ptr<VanillaLearner> vanilla_;
  std::unique_ptr<BcModel> bc_;
};

SwrlMode ModeFor(const std::string& algo);
PolicyFactory ManualFactory(const ScenarioConfig& config);

// Offline manual transitions: read from learner.offline_dataset when set,
// otherwise collected in-process. Empty when mixing is disabled (and not
// required by `algo`). bc without a dataset path is a ConfigError.
std::vector<Transition> OfflineData(const ScenarioConfig& config,
                                    const std::string& algo, int workers);

struct TrainOutcome {
  std::vector<EpisodeSummary> curve;
  std::optional<BcReport> bc;
};
TrainOutcome Train(const ScenarioConfig& config, Model& model, int episodes,
                   const std::vector<Transition>& offline,
                   const std::function<void(const EpisodeSummary&)>& on_episode = {});

// Runs the method and the manual baseline on the same evaluation cases.
EvalReport EvaluateAgainstManual(const ScenarioConfig& config,
                                 const std::string& method,
                                 const PolicyFactory& factory, int cases,
                                 int workers,
                                 std::vector<EpisodeLog>* method_logs = nullptr);

}  // namespace swrl

#endif  // SWRL_EXPERIMENT_H_
