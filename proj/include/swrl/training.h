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

#ifndef SWRL_TRAINING_H_
#define SWRL_TRAINING_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "swrl/config.h"
#include "swrl/env.h"
#include "swrl/learners.h"
#include "swrl/policy.h"
#include "swrl/replay.h"

namespace swrl {

// One row of a learning curve.
struct EpisodeSummary {
  int episode = 0;
  std::uint64_t seed = 0;
  double return_k = 0.0;  // includes the terminal penalty
  double return_r = 0.0;
  int band_steps = 0;  // steps with reward_K = 1
  int length = 0;
  TerminationCause cause = TerminationCause::kNone;
  double terminal_theta = 0.0;
};

EpisodeSummary Summarize(int episode, const EpisodeLog& log, const Range& band);

// Fraction of the episode step budget spent inside the velocity band.
double BandOccupancy(const EpisodeSummary& e, int max_steps);

FeatureLayout LayoutFor(const ManipEnv& env);

// Seeds of training, evaluation and offline-collection cases are drawn from
// disjoint streams of the scenario seed.
std::uint64_t TrainCaseSeed(std::uint64_t seed, int episode);
std::uint64_t EvalCaseSeed(std::uint64_t seed, int index);
std::uint64_t CollectCaseSeed(std::uint64_t seed, int episode);

struct SwrlAgent {
  std::unique_ptr<DqnLearner> force;
  std::unique_ptr<SacLearner> redundant;
};
SwrlAgent MakeSwrlAgent(const ScenarioConfig& config);
std::unique_ptr<VanillaLearner> MakeVanillaLearner(const ScenarioConfig& config);
std::unique_ptr<BcModel> MakeBcModel(const ScenarioConfig& config);

struct TrainOptions {
  int episodes = 0;
  const std::vector<Transition>* offline = nullptr;
  SwrlMode mode = SwrlMode::kFull;
  std::function<void(const EpisodeSummary&)> on_episode;
};

// Both policies act in the same episodes; each learns from its own reward
// channel with its own critics. A non-finite loss throws std::runtime_error.
std::vector<EpisodeSummary> TrainSwrl(const ScenarioConfig& config,
                                      SwrlAgent& agent,
                                      const TrainOptions& options);

// Single learner over the product action space fed r_K + r_R.
std::vector<EpisodeSummary> TrainVanilla(const ScenarioConfig& config,
                                         VanillaLearner& learner,
                                         const TrainOptions& options);

struct BcReport {
  std::vector<double> epoch_loss;  // full training-split loss after each epoch
  double initial_loss = 0.0;
  double holdout_accuracy = 0.0;
  double holdout_mse = 0.0;
  int train_size = 0;
  int holdout_size = 0;
};
// Throws std::invalid_argument on an empty dataset.
BcReport TrainBc(const ScenarioConfig& config,
                 const std::vector<Transition>& dataset, BcModel& model,
                 int epochs);

// Manual-baseline transitions over `episodes` cases, in case order.
std::vector<Transition> CollectOffline(const ScenarioConfig& config,
                                       int episodes, int workers,
                                       std::vector<EpisodeLog>* logs = nullptr);

// Runs `policy` on one case to the end of the episode. With `transitions`
// the step stream is recorded.
EpisodeLog RunEpisode(ManipEnv& env, Policy& policy, std::uint64_t case_seed,
                      std::vector<Transition>* transitions = nullptr);

// Worker count: SWRL_WORKERS overrides `requested`; at least 1.
int ResolveWorkers(int requested);

// Runs fn(i) for i in [0, n) on up to `workers` threads.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

}  // namespace swrl

#endif  // SWRL_TRAINING_H_
