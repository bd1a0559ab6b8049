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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "swrl/config.h"
#include "swrl/env.h"
#include "swrl/policy.h"
#include "swrl/scenario.h"

namespace swrl {
namespace {

constexpr int kHold = 1;  // zero force change
constexpr int kBump = 3;  // +1 N

ActionPair Act(const ManipEnv& env, int force_index, double accel = 0.0) {
  ActionPair a;
  a.force_index = force_index;
  a.accel = VectorXd::Constant(env.redundant_dim(), accel);
  return a;
}

TEST(Rewards, VelocityBand) {
  EXPECT_EQ(RewardK(0.75, VelocityBand(ObjectClass::kHandwheelValve)), 1.0);
  EXPECT_EQ(RewardK(0.5, VelocityBand(ObjectClass::kHandwheelValve)), 0.0);
  EXPECT_EQ(RewardK(0.45, VelocityBand(ObjectClass::kDrawer)), 1.0);
  EXPECT_EQ(RewardK(0.12, VelocityBand(ObjectClass::kDoor)), 1.0);
  EXPECT_EQ(RewardK(0.7, VelocityBand(ObjectClass::kLeverValve)), 1.0);
  EXPECT_EQ(RewardK(0.8, VelocityBand(ObjectClass::kLeverValve)), 1.0);
  EXPECT_EQ(RewardK(-0.75, VelocityBand(ObjectClass::kHandwheelValve)), 0.0);
}

TEST(Rewards, RedundantChannel) {
  EXPECT_EQ(RewardR(VectorXd::Zero(2), {}), 1.0);
  Contact c;
  c.force = -2.0;
  EXPECT_NEAR(RewardR(Eigen::Vector2d(0.2, -0.1), {c}), 1.0 - 0.3 - 0.1 * std::log(2.0), 1e-12);
  EXPECT_NEAR(RewardR(Eigen::Vector2d(0.2, -0.1), {c}), 0.6307, 1e-4);
  Contact light;
  light.force = -0.5;
  Contact unit;
  unit.force = -1.0;
  EXPECT_EQ(RewardR(VectorXd::Zero(1), {light, unit}), 1.0);
}

TEST(Terminal, Conditions) {
  const RobotModel arm = MakeFrankaLikeArm();
  WorldState s;
  s.q = VectorXd::Zero(7);
  s.q[3] = -1.5;
  s.qd = VectorXd::Zero(7);
  s.grasp_attached = true;
  s.sim_time = 3.0;
  TerminalCheck t = CheckTerminal(s, arm, 20.0);
  EXPECT_FALSE(t.done);
  EXPECT_EQ(t.cause, TerminationCause::kNone);
  EXPECT_EQ(t.reward, 0.0);

  WorldState limit = s;
  limit.q[3] = arm.joints[3].q_max;
  t = CheckTerminal(limit, arm, 20.0);
  EXPECT_TRUE(t.done);
  EXPECT_EQ(t.cause, TerminationCause::kJointLimit);
  EXPECT_EQ(t.reward, -100.0);

  WorldState lost = s;
  lost.grasp_attached = false;
  t = CheckTerminal(lost, arm, 20.0);
  EXPECT_EQ(t.cause, TerminationCause::kGraspLoss);
  EXPECT_EQ(t.reward, -100.0);

  WorldState late = s;
  late.sim_time = 20.0;
  t = CheckTerminal(late, arm, 20.0);
  EXPECT_TRUE(t.done);
  EXPECT_EQ(t.cause, TerminationCause::kTimeout);
  EXPECT_EQ(t.reward, 0.0);
}

TEST(Window, ZeroPaddedThenShifts) {
  ObservationWindow w(10, 3);
  EXPECT_EQ(w.filled(), 0);
  for (int i = 0; i < 10; ++i) EXPECT_FALSE(w.frame(i).valid);
  ObservationFrame f;
  f.q = VectorXd::Constant(3, 1.0);
  f.tau = VectorXd::Zero(3);
  f.valid = true;
  w.Push(f);
  EXPECT_EQ(w.filled(), 1);
  EXPECT_TRUE(w.latest().valid);
  EXPECT_FALSE(w.frame(8).valid);
  const VectorXd flat = w.Flatten(VectorXd::Ones(3), VectorXd::Ones(3));
  EXPECT_EQ(flat.size(), 10 * ObservationWindow::FrameDim(3));
  EXPECT_EQ(flat.head(9 * ObservationWindow::FrameDim(3)).norm(), 0.0);
  for (int i = 0; i < 15; ++i) w.Push(f);
  EXPECT_EQ(w.filled(), 10);
}

ScenarioConfig Valve() { return PresetConfig("reduced_valve"); }

TEST(Env, StepBeforeResetAndAfterDone) {
  ScenarioConfig c = Valve();
  c.mdp.episode_time = 0.05;
  ManipEnv env(c);
  ActionPair a;
  EXPECT_THROW(env.Step(a), std::logic_error);
  env.Reset(CaseSeed(c.seed, 0));
  EXPECT_THROW(env.Step(Act(env, 7)), std::invalid_argument);
  ActionPair wrong;
  wrong.accel = VectorXd::Zero(env.redundant_dim() + 1);
  EXPECT_THROW(env.Step(wrong), std::invalid_argument);
  StepResult r;
  int n = 0;
  while (!env.done()) {
    r = env.Step(Act(env, kHold));
    ++n;
  }
  EXPECT_EQ(n, env.max_steps());
  EXPECT_EQ(r.cause, TerminationCause::kTimeout);
  EXPECT_THROW(env.Step(Act(env, kHold)), std::logic_error);
}

TEST(Env, StictionWithZeroActions) {
  ScenarioConfig c = Valve();
  c.randomization.dry_friction = {20.0, 20.0};
  c.mdp.episode_time = 2.0;
  ManipEnv env(c);
  env.Reset(CaseSeed(c.seed, 1));
  const double theta0 = env.state().theta;
  while (!env.done()) {
    const StepResult r = env.Step(Act(env, kHold));
    EXPECT_EQ(r.r_k, 0.0);
  }
  EXPECT_EQ(env.log().cause, TerminationCause::kTimeout);
  EXPECT_EQ(env.state().theta, theta0);
}

TEST(Env, ForceRampBreaksStiction) {
  ScenarioConfig c = Valve();
  ManipEnv env(c);
  env.Reset(CaseSeed(c.seed, 2));
  bool moving = false;
  while (!env.done() && !moving) {
    env.Step(Act(env, kBump));
    moving = env.state().theta_dot * env.scenario().object.open_sense > 0.0;
  }
  EXPECT_TRUE(moving);
}

TEST(Env, GraspBreakIsTerminal) {
  ScenarioConfig c = Valve();
  c.world.break_force = 3.0;
  c.randomization.dry_friction = {20.0, 20.0};
  ManipEnv env(c);
  env.Reset(CaseSeed(c.seed, 0));
  StepResult r;
  while (!env.done()) r = env.Step(Act(env, kBump));
  EXPECT_EQ(r.cause, TerminationCause::kGraspLoss);
  EXPECT_TRUE(r.done);
  // Penalty lands on both channels on top of the step reward.
  EXPECT_LE(r.r_k, -99.0);
  EXPECT_LE(r.r_r, -99.0);
  EXPECT_EQ(env.log().cause, TerminationCause::kGraspLoss);
}

TEST(Env, WindowShiftsByOneFrame) {
  ScenarioConfig c = Valve();
  ManipEnv env(c);
  env.Reset(CaseSeed(c.seed, 3));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int step = 0; step < 40 && !env.done(); ++step) {
    const ObservationWindow before = env.observation();
    env.Step(Act(env, pick(rng), 0.5));
    const ObservationWindow& after = env.observation();
    for (int i = 0; i + 1 < after.length(); ++i) {
      ASSERT_EQ(after.frame(i).q, before.frame(i + 1).q);
      ASSERT_EQ(after.frame(i).pose, before.frame(i + 1).pose);
      ASSERT_EQ(after.frame(i).velocity, before.frame(i + 1).velocity);
      ASSERT_EQ(after.frame(i).valid, before.frame(i + 1).valid);
    }
    EXPECT_TRUE(after.latest().valid);
  }
}

TEST(Env, RewardRangesAndLogInvariants) {
  ScenarioConfig c = Valve();
  ManipEnv env(c);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> acc(-5.0, 5.0);
  for (int k = 0; k < 3; ++k) {
    env.Reset(CaseSeed(c.seed, 10 + k));
    while (!env.done()) {
      ActionPair a = Act(env, pick(rng));
      for (int i = 0; i < a.accel.size(); ++i) a.accel[i] = acc(rng);
      const StepResult r = env.Step(a);
      if (!r.done) {
        EXPECT_TRUE(r.r_k == 0.0 || r.r_k == 1.0);
        EXPECT_LE(r.r_r, 1.0);
      }
      EXPECT_LE(env.log().steps.back().accel.cwiseAbs().maxCoeff(), env.accel_limit());
    }
    const EpisodeLog& log = env.log();
    int causes = 0;
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
      if (i > 0 && i + 1 < log.steps.size()) {
        EXPECT_NEAR(log.steps[i].t - log.steps[i - 1].t, 0.01, 1e-12);
      } else if (i > 0) {
        // A fault can end the final step before its last tick.
        EXPECT_LE(log.steps[i].t - log.steps[i - 1].t, 0.01 + 1e-12);
      }
      causes += log.steps[i].cause != TerminationCause::kNone;
    }
    EXPECT_EQ(causes, 1);
    EXPECT_NE(log.steps.back().cause, TerminationCause::kNone);
  }
}

TEST(Env, RedundantReturnCountsStepsWithoutMotion) {
  ScenarioConfig c = Valve();
  c.mdp.episode_time = 3.0;
  ManipEnv env(c);
  env.Reset(CaseSeed(c.seed, 5));
  int steps = 0;
  double ret = 0.0;
  while (!env.done()) {
    const StepResult r = env.Step(Act(env, kHold));
    ++steps;
    ret += r.r_r;
    EXPECT_DOUBLE_EQ(ret, env.log().return_r);
    if (!r.done) EXPECT_EQ(r.r_r, 1.0);
  }
  EXPECT_EQ(env.log().cause, TerminationCause::kTimeout);
  EXPECT_DOUBLE_EQ(ret, static_cast<double>(steps));
}

TEST(Env, DeterministicRewards) {
  ScenarioConfig c = Valve();
  c.mdp.episode_time = 4.0;
  auto run = [&] {
    ManipEnv env(c);
    env.Reset(CaseSeed(c.seed, 6));
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pick(0, 3);
    std::normal_distribution<double> acc(0.0, 1.0);
    std::vector<double> out;
    while (!env.done()) {
      ActionPair a = Act(env, pick(rng));
      for (int i = 0; i < a.accel.size(); ++i) a.accel[i] = acc(rng);
      const StepResult r = env.Step(a);
      out.push_back(r.r_k);
      out.push_back(r.r_r);
    }
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Env, FeatureDimensionMatchesWindow) {
  ScenarioConfig c = Valve();
  ManipEnv env(c);
  env.Reset(CaseSeed(c.seed, 0));
  EXPECT_EQ(env.Features().size(), env.feature_dim());
  EXPECT_EQ(env.feature_dim(),
            kWindowLength * ObservationWindow::FrameDim(env.scenario().robot.dof()));
  EXPECT_TRUE(env.Features().allFinite());
}

TEST(ManualPolicy, ReactsToVelocityBand) {
  ScenarioConfig c = Valve();
  ManipEnv env(c);
  ManualPolicy manual(c);
  env.Reset(CaseSeed(c.seed, 0));
  // From rest the estimate is below the band, so Manual pushes harder.
  const ActionPair a = manual.Act(env);
  EXPECT_EQ(c.mdp.delta_force_set[a.force_index], c.manual.force_step);
  EXPECT_EQ(a.accel, VectorXd::Zero(env.redundant_dim()));
}

}  // namespace
}  // namespace swrl
