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

#ifndef SWRL_LEARNERS_H_
#define SWRL_LEARNERS_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "swrl/config.h"
#include "swrl/nn.h"
#include "swrl/replay.h"

namespace swrl {

// Shape of the observation features as the environment produces them.
struct FeatureLayout {
  int input_dim = 0;
  int window = 0;
  int frame_dim = 0;
};

// Network spec for `extra` inputs appended to the features; honours the
// flat/recurrent feature mode of the learner config.
NetworkSpec MakeSpec(const LearnerConfig& config, const FeatureLayout& layout,
                     int extra, int output_dim, double output_scale = 1.0);

// Named parameter vectors that checkpoints persist.
struct ParamBlock {
  std::string name;
  VectorXd* values = nullptr;
  std::vector<std::pair<int, int>> shapes;
};
using ParamBlocks = std::vector<ParamBlock>;

// Squashed Gaussian policy head: a = a_max tanh(mu + sigma eps).
struct SquashedSample {
  MatrixXd eps, u, a, log_std;
  VectorXd logp;  // per column
};
SquashedSample SampleSquashed(const MatrixXd& mean, const MatrixXd& raw_log_std,
                              double a_max, const MatrixXd& eps);
// Gradients of sum_b (dlogp_b * logp_b + da_b . a_b) with respect to the
// mean and raw log-std outputs.
void SquashedBackward(const SquashedSample& s, const MatrixXd& raw_log_std,
                      double a_max, const VectorXd& dlogp, const MatrixXd& da,
                      MatrixXd* dmean, MatrixXd* draw_log_std);

// Double DQN over the delta-force set (S_K policy).
class DqnLearner {
 public:
  DqnLearner(const LearnerConfig& config, const FeatureLayout& layout,
             int num_actions, std::uint64_t seed);

  int Greedy(const VectorXd& obs) const;
  int Act(const VectorXd& obs, double epsilon, std::mt19937_64& rng) const;
  // One gradient step on the force channel; returns the Huber loss.
  double Update(const Batch& batch);
  double Epsilon(long step) const;

  ParamBlocks Parameters();
  int num_actions() const { return num_actions_; }

 private:
  LearnerConfig config_;
  int num_actions_;
  Network q_, target_;
  std::unique_ptr<Optimizer> opt_;
};

// Clipped double-critic actor-critic with entropy bonus (S_R policy).
class SacLearner {
 public:
  SacLearner(const LearnerConfig& config, const FeatureLayout& layout,
             int action_dim, double a_max, std::uint64_t seed);

  VectorXd Act(const VectorXd& obs, bool deterministic,
               std::mt19937_64& rng) const;

  struct Stats {
    double critic_loss = 0.0;
    double actor_loss = 0.0;
    double alpha = 0.0;
    double entropy = 0.0;
  };
  // One step on critics, actor and temperature using `reward`.
  Stats Update(const Batch& batch, const VectorXd& reward);

  // Actor objective for fixed noise; with `backprop` the actor gradients are
  // left in actor().grads().
  double ActorObjective(const MatrixXd& obs, const MatrixXd& eps, bool backprop);

  Network& actor() { return actor_; }
  double alpha() const;
  int action_dim() const { return action_dim_; }
  double a_max() const { return a_max_; }
  ParamBlocks Parameters();
  double last_log_prob() const { return last_logp_; }

 private:
  LearnerConfig config_;
  int action_dim_;
  double a_max_;
  std::mt19937_64 rng_;
  Network actor_, q1_, q2_, q1_target_, q2_target_;
  std::unique_ptr<Optimizer> actor_opt_, q1_opt_, q2_opt_, alpha_opt_;
  VectorXd log_alpha_;
  double target_entropy_;
  double last_logp_ = 0.0;
};

// Single actor-critic over the product action space (vanilla baseline):
// categorical force head plus squashed Gaussian redundant head; critics map
// (obs, accel) to one value per force action.
class VanillaLearner {
 public:
  VanillaLearner(const LearnerConfig& config, const FeatureLayout& layout,
                 int num_actions, int action_dim, double a_max,
                 std::uint64_t seed);

  std::pair<int, VectorXd> Act(const VectorXd& obs, bool deterministic,
                               std::mt19937_64& rng) const;

  struct Stats {
    double critic_loss = 0.0;
    double actor_loss = 0.0;
    double alpha_discrete = 0.0;
    double alpha_continuous = 0.0;
  };
  // Learns from r_k + r_r.
  Stats Update(const Batch& batch);

  double ActorObjective(const MatrixXd& obs, const MatrixXd& eps, bool backprop);

  Network& actor() { return actor_; }
  ParamBlocks Parameters();

 private:
  LearnerConfig config_;
  int num_actions_;
  int action_dim_;
  double a_max_;
  std::mt19937_64 rng_;
  Network actor_, q1_, q2_, q1_target_, q2_target_;
  std::unique_ptr<Optimizer> actor_opt_, q1_opt_, q2_opt_, alpha_opt_;
  VectorXd log_alpha_;
  double target_entropy_discrete_;
  double target_entropy_continuous_;
  double last_entropy_discrete_ = 0.0;
  double last_logp_ = 0.0;
};

// Behaviour cloning: classification of the force action plus regression of
// the redundant acceleration through a bounded output.
class BcModel {
 public:
  BcModel(const LearnerConfig& config, const FeatureLayout& layout,
          int num_actions, int action_dim, double a_max, std::uint64_t seed);

  std::pair<int, VectorXd> Act(const VectorXd& obs) const;

  struct Loss {
    double total = 0.0;
    double cross_entropy = 0.0;
    double mse = 0.0;
    double accuracy = 0.0;
  };
  Loss Evaluate(const Batch& batch) const;
  Loss Step(const Batch& batch);
  // Loss of the network output for the batch targets (value, d/d output).
  std::pair<double, MatrixXd> OutputLoss(const MatrixXd& out,
                                         const Batch& batch) const;

  Network& net() { return net_; }
  ParamBlocks Parameters();

 private:
  LearnerConfig config_;
  int num_actions_;
  int action_dim_;
  double a_max_;
  Network net_;
  std::unique_ptr<Optimizer> opt_;
};

}  // namespace swrl

#endif  // SWRL_LEARNERS_H_
