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

#ifndef SWRL_POLICY_H_
#define SWRL_POLICY_H_

#include <memory>
#include <string>
#include <vector>

#include "swrl/env.h"
#include "swrl/learners.h"

namespace swrl {

// Deterministic acting interface used for evaluation and data collection.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual ActionPair Act(const ManipEnv& env) = 0;
};

// Index of the set entry closest to `value`.
int NearestActionIndex(const std::vector<double>& set, double value);

// Band schedule on the force magnitude, redundant coordinates frozen.
class ManualPolicy : public Policy {
 public:
  explicit ManualPolicy(const ScenarioConfig& config);

  std::string name() const override { return "manual"; }
  ActionPair Act(const ManipEnv& env) override;
  // `velocity` is signed by the opening sense.
  ActionPair Decide(double velocity, const VectorXd& q,
                    const RobotModel& robot, int redundant_dim) const;

 private:
  Range band_;
  double margin_;
  int up_, hold_, down_;
};

// Which of the two SwRL heads are learned; the other falls back to the
// manual behaviour (manual force schedule or frozen redundant coordinates).
enum class SwrlMode { kFull, kForceOnly, kRedundantOnly };
std::string ToString(SwrlMode mode);

class SwrlPolicy : public Policy {
 public:
  SwrlPolicy(const DqnLearner* force, const SacLearner* redundant,
             const ScenarioConfig& config, SwrlMode mode = SwrlMode::kFull);
  std::string name() const override;
  ActionPair Act(const ManipEnv& env) override;

 private:
  const DqnLearner* force_;
  const SacLearner* redundant_;
  ManualPolicy manual_;
  SwrlMode mode_;
};

class VanillaPolicy : public Policy {
 public:
  explicit VanillaPolicy(const VanillaLearner* learner) : learner_(learner) {}
  std::string name() const override { return "vanilla"; }
  ActionPair Act(const ManipEnv& env) override;

 private:
  const VanillaLearner* learner_;
};

class BcPolicy : public Policy {
 public:
  explicit BcPolicy(const BcModel* model) : model_(model) {}
  std::string name() const override { return "bc"; }
  ActionPair Act(const ManipEnv& env) override;

 private:
  const BcModel* model_;
};

}  // namespace swrl

#endif  // SWRL_POLICY_H_
