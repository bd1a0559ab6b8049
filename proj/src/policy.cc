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

#include "swrl/policy.h"

#include <cmath>
#include <random>

namespace swrl {

int NearestActionIndex(const std::vector<double>& set, double value) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(set.size()); ++i) {
    if (std::abs(set[i] - value) < std::abs(set[best] - value)) best = i;
  }
  return best;
}

ManualPolicy::ManualPolicy(const ScenarioConfig& config)
    : band_(config.mdp.velocity_band),
      margin_(config.manual.joint_limit_margin) {
  const std::vector<double>& set = config.mdp.delta_force_set;
  up_ = NearestActionIndex(set, config.manual.force_step);
  hold_ = NearestActionIndex(set, 0.0);
  down_ = NearestActionIndex(set, -config.manual.force_step);
}

ActionPair ManualPolicy::Decide(double velocity, const VectorXd& q,
                                const RobotModel& robot,
                                int redundant_dim) const {
  ActionPair a;
  a.accel = VectorXd::Zero(redundant_dim);
  for (int i = 0; i < robot.dof(); ++i) {
    if (q[i] < robot.joints[i].q_min + margin_ ||
        q[i] > robot.joints[i].q_max - margin_) {
      a.force_index = down_;
      return a;
    }
  }
  if (velocity < band_.min) {
    a.force_index = up_;
  } else if (velocity > band_.max) {
    a.force_index = down_;
  } else {
    a.force_index = hold_;
  }
  return a;
}

ActionPair ManualPolicy::Act(const ManipEnv& env) {
  const double v = env.scenario().object.open_sense * env.velocity().value;
  return Decide(v, env.state().q, env.scenario().robot, env.redundant_dim());
}

std::string ToString(SwrlMode mode) {
  switch (mode) {
    case SwrlMode::kFull: return "swrl";
    case SwrlMode::kForceOnly: return "swrl_sk";
    case SwrlMode::kRedundantOnly: return "swrl_sr";
  }
  return "?";
}

SwrlPolicy::SwrlPolicy(const DqnLearner* force, const SacLearner* redundant,
                       const ScenarioConfig& config, SwrlMode mode)
    : force_(force), redundant_(redundant), manual_(config), mode_(mode) {}

std::string SwrlPolicy::name() const { return ToString(mode_); }

ActionPair SwrlPolicy::Act(const ManipEnv& env) {
  ActionPair a = manual_.Act(env);
  const VectorXd obs = env.Features();
  if (mode_ != SwrlMode::kRedundantOnly) a.force_index = force_->Greedy(obs);
  if (mode_ != SwrlMode::kForceOnly) {
    std::mt19937_64 unused(0);
    a.accel = redundant_->Act(obs, true, unused);
  }
  return a;
}

ActionPair VanillaPolicy::Act(const ManipEnv& env) {
  std::mt19937_64 unused(0);
  auto [index, accel] = learner_->Act(env.Features(), true, unused);
  return {index, accel};
}

ActionPair BcPolicy::Act(const ManipEnv& env) {
  auto [index, accel] = model_->Act(env.Features());
  return {index, accel};
}

}  // namespace swrl
