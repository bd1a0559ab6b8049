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

#include "swrl/training.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "swrl/scenario.h"

namespace swrl {

namespace {

constexpr std::uint64_t kTrainStream = 0x1000000;
constexpr std::uint64_t kEvalStream = 0x2000000;
constexpr std::uint64_t kCollectStream = 0x3000000;
constexpr std::uint64_t kLearnerStream = 0x4000000;

Transition Record(const VectorXd& obs, const ManipEnv& env,
                  const StepResult& res, VectorXd next) {
  const StepRecord& rec = env.log().steps.back();
  Transition t;
  t.obs = obs;
  t.force_index = rec.force_index;
  t.accel = rec.accel;
  t.r_k = res.r_k;
  t.r_r = res.r_r;
  t.next_obs = std::move(next);
  t.done = res.done;
  t.cause = res.cause;
  return t;
}

bool Mixing(const ScenarioConfig& config, const TrainOptions& options) {
  return config.learner.offline_mixing && options.offline != nullptr &&
         !options.offline->empty();
}

}  // namespace

EpisodeSummary Summarize(int episode, const EpisodeLog& log, const Range& band) {
  EpisodeSummary s;
  s.episode = episode;
  s.seed = log.case_seed;
  s.return_k = log.return_k;
  s.return_r = log.return_r;
  s.length = static_cast<int>(log.steps.size());
  s.cause = log.cause;
  s.terminal_theta = log.terminal_theta;
  // In-band steps, i.e. the force-channel return without the terminal penalty.
  for (const StepRecord& r : log.steps) s.band_steps += RewardK(r.velocity_estimate, band) > 0.5;
  return s;
}

double BandOccupancy(const EpisodeSummary& e, int max_steps) {
  return max_steps > 0 ? static_cast<double>(e.band_steps) / max_steps : 0.0;
}

FeatureLayout LayoutFor(const ManipEnv& env) {
  FeatureLayout layout;
  layout.input_dim = env.feature_dim();
  layout.window = env.observation().length();
  layout.frame_dim = ObservationWindow::FrameDim(env.observation().dof());
  return layout;
}

std::uint64_t TrainCaseSeed(std::uint64_t seed, int episode) {
  return CaseSeed(seed, kTrainStream + episode);
}
std::uint64_t EvalCaseSeed(std::uint64_t seed, int index) {
  return CaseSeed(seed, kEvalStream + index);
}
std::uint64_t CollectCaseSeed(std::uint64_t seed, int episode) {
  return CaseSeed(seed, kCollectStream + episode);
}

SwrlAgent MakeSwrlAgent(const ScenarioConfig& config) {
  ManipEnv env(config);
  const FeatureLayout layout = LayoutFor(env);
  SwrlAgent agent;
  agent.force = std::make_unique<DqnLearner>(
      config.learner, layout, env.num_force_actions(),
      CaseSeed(config.seed, kLearnerStream + 1));
  agent.redundant = std::make_unique<SacLearner>(
      config.learner, layout, env.redundant_dim(), env.accel_limit(),
      CaseSeed(config.seed, kLearnerStream + 2));
  return agent;
}

std::unique_ptr<VanillaLearner> MakeVanillaLearner(const ScenarioConfig& config) {
  ManipEnv env(config);
  return std::make_unique<VanillaLearner>(
      config.learner, LayoutFor(env), env.num_force_actions(),
      env.redundant_dim(), env.accel_limit(),
      CaseSeed(config.seed, kLearnerStream + 3));
}

std::unique_ptr<BcModel> MakeBcModel(const ScenarioConfig& config) {
  ManipEnv env(config);
  return std::make_unique<BcModel>(config.learner, LayoutFor(env),
                                   env.num_force_actions(), env.redundant_dim(),
                                   env.accel_limit(),
                                   CaseSeed(config.seed, kLearnerStream + 4));
}

std::vector<EpisodeSummary> TrainSwrl(const ScenarioConfig& config,
                                      SwrlAgent& agent,
                                      const TrainOptions& options) {
  const LearnerConfig& lc = config.learner;
  ManipEnv env(config);
  ReplayBuffer buffer(lc.buffer_capacity);
  const bool mixing = Mixing(config, options);
  if (mixing) buffer.SetOffline(*options.offline);
  std::mt19937_64 act_rng(CaseSeed(config.seed, kLearnerStream + 10));
  std::mt19937_64 sample_rng(CaseSeed(config.seed, kLearnerStream + 11));
  ManualPolicy manual(config);
  const bool learn_force = options.mode != SwrlMode::kRedundantOnly;
  const bool learn_redundant = options.mode != SwrlMode::kForceOnly;

  std::vector<EpisodeSummary> curve;
  long step = 0;
  for (int ep = 0; ep < options.episodes; ++ep) {
    env.Reset(TrainCaseSeed(config.seed, ep));
    VectorXd obs = env.Features();
    while (!env.done()) {
      ActionPair a = manual.Act(env);
      if (learn_force) a.force_index = agent.force->Act(obs, agent.force->Epsilon(step), act_rng);
      if (learn_redundant) a.accel = agent.redundant->Act(obs, false, act_rng);
      const StepResult res = env.Step(a);
      VectorXd next = env.Features();
      buffer.Add(Record(obs, env, res, next));
      obs = std::move(next);
      ++step;
      if (step >= lc.learning_starts && step % lc.update_every == 0) {
        for (int u = 0; u < lc.updates_per_step; ++u) {
          const Batch batch = buffer.Sample(lc.batch_size, mixing, sample_rng);
          if (learn_force) agent.force->Update(batch);
          if (learn_redundant) agent.redundant->Update(batch, batch.r_r);
        }
      }
    }
    curve.push_back(Summarize(ep, env.log(), config.mdp.velocity_band));
    if (options.on_episode) options.on_episode(curve.back());
  }
  return curve;
}

std::vector<EpisodeSummary> TrainVanilla(const ScenarioConfig& config,
                                         VanillaLearner& learner,
                                         const TrainOptions& options) {
  const LearnerConfig& lc = config.learner;
  ManipEnv env(config);
  ReplayBuffer buffer(lc.buffer_capacity);
  const bool mixing = Mixing(config, options);
  if (mixing) buffer.SetOffline(*options.offline);
  std::mt19937_64 act_rng(CaseSeed(config.seed, kLearnerStream + 20));
  std::mt19937_64 sample_rng(CaseSeed(config.seed, kLearnerStream + 21));

  std::vector<EpisodeSummary> curve;
  long step = 0;
  for (int ep = 0; ep < options.episodes; ++ep) {
    env.Reset(TrainCaseSeed(config.seed, ep));
    VectorXd obs = env.Features();
    while (!env.done()) {
      auto [index, accel] = learner.Act(obs, false, act_rng);
      const StepResult res = env.Step({index, accel});
      VectorXd next = env.Features();
      buffer.Add(Record(obs, env, res, next));
      obs = std::move(next);
      ++step;
      if (step >= lc.learning_starts && step % lc.update_every == 0) {
        for (int u = 0; u < lc.updates_per_step; ++u) {
          learner.Update(buffer.Sample(lc.batch_size, mixing, sample_rng));
        }
      }
    }
    curve.push_back(Summarize(ep, env.log(), config.mdp.velocity_band));
    if (options.on_episode) options.on_episode(curve.back());
  }
  return curve;
}

BcReport TrainBc(const ScenarioConfig& config,
                 const std::vector<Transition>& dataset, BcModel& model,
                 int epochs) {
  if (dataset.empty()) throw std::invalid_argument("behaviour cloning needs a non-empty dataset");
  const LearnerConfig& lc = config.learner;
  std::mt19937_64 rng(CaseSeed(config.seed, kLearnerStream + 30));
  std::vector<int> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int holdout = static_cast<int>(dataset.size() * lc.bc_holdout);
  std::vector<const Transition*> train, held;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    (i < holdout ? held : train).push_back(&dataset[order[i]]);
  }
  if (train.empty()) {
    train = held;
    held.clear();
  }
  BcReport report;
  report.train_size = static_cast<int>(train.size());
  report.holdout_size = static_cast<int>(held.size());
  const Batch all_train = MakeBatch(train);
  report.initial_loss = model.Evaluate(all_train).total;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(train.begin(), train.end(), rng);
    for (size_t start = 0; start < train.size(); start += lc.batch_size) {
      const size_t end = std::min(train.size(), start + lc.batch_size);
      std::vector<const Transition*> mb(train.begin() + start, train.begin() + end);
      model.Step(MakeBatch(mb));
    }
    report.epoch_loss.push_back(model.Evaluate(all_train).total);
  }
  if (!held.empty()) {
    const BcModel::Loss h = model.Evaluate(MakeBatch(held));
    report.holdout_accuracy = h.accuracy;
    report.holdout_mse = h.mse;
  }
  return report;
}

EpisodeLog RunEpisode(ManipEnv& env, Policy& policy, std::uint64_t case_seed,
                      std::vector<Transition>* transitions) {
  env.Reset(case_seed);
  VectorXd obs = transitions ? env.Features() : VectorXd();
  while (!env.done()) {
    const StepResult res = env.Step(policy.Act(env));
    if (transitions) {
      VectorXd next = env.Features();
      transitions->push_back(Record(obs, env, res, next));
      obs = std::move(next);
    }
  }
  return env.log();
}

std::vector<Transition> CollectOffline(const ScenarioConfig& config,
                                       int episodes, int workers,
                                       std::vector<EpisodeLog>* logs) {
  std::vector<std::vector<Transition>> per(std::max(episodes, 0));
  std::vector<EpisodeLog> episode_logs(per.size());
  ParallelFor(episodes, workers, [&](int i) {
    ManipEnv env(config);
    ManualPolicy manual(config);
    episode_logs[i] = RunEpisode(env, manual, CollectCaseSeed(config.seed, i), &per[i]);
  });
  std::vector<Transition> out;
  for (auto& p : per) {
    for (auto& t : p) out.push_back(std::move(t));
  }
  if (logs) *logs = std::move(episode_logs);
  return out;
}

int ResolveWorkers(int requested) {
  if (const char* env = std::getenv("SWRL_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1, requested);
}

void ParallelFor(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace swrl
