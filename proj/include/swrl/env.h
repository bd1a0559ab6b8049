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

#ifndef SWRL_ENV_H_
#define SWRL_ENV_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swrl/config.h"
#include "swrl/hybrid_controller.h"
#include "swrl/scenario.h"
#include "swrl/sim_world.h"
#include "swrl/velocity_estimator.h"

namespace swrl {

inline constexpr int kWindowLength = 10;
inline constexpr double kControlRate = 1000.0;  // Hz
inline constexpr double kPolicyRate = 100.0;    // Hz
inline constexpr std::array<double, 4> kDeltaForceSet = {0.1, 0.0, -0.1, 1.0};
inline constexpr double kRewardK1 = 1.0;
inline constexpr double kRewardK2 = 0.1;
inline constexpr double kTerminalPenalty = -100.0;
inline constexpr double kRedundantAccelLimit = 2.0;  // rad/s^2 or m/s^2

// Desired joint velocity band: rad/s for valves and doors, m/s for drawers.
Range VelocityBand(ObjectClass object_class);

struct ObservationFrame {
  VectorXd q;
  VectorXd tau;
  std::array<double, 12> pose{};  // gripper in {O}: rotation row-major, then translation
  double velocity = 0.0;
  bool valid = false;
};

// Fixed-length history, oldest first. Frames not yet observed are zero and
// flagged invalid.
class ObservationWindow {
 public:
  ObservationWindow() = default;
  ObservationWindow(int length, int dof);

  void Clear();
  void Push(ObservationFrame frame);

  int length() const { return static_cast<int>(frames_.size()); }
  int dof() const { return dof_; }
  int filled() const { return filled_; }
  const ObservationFrame& frame(int i) const;
  const ObservationFrame& latest() const { return frame(length() - 1); }

  // Per-frame feature width: q, tau, pose, velocity, valid flag.
  static int FrameDim(int dof) { return 2 * dof + 14; }
  // Scaled features of all frames, oldest first.
  VectorXd Flatten(const VectorXd& q_scale, const VectorXd& tau_scale) const;

 private:
  std::vector<ObservationFrame> frames_;  // ring
  int head_ = 0;  // index of the oldest frame
  int dof_ = 0;
  int filled_ = 0;
};

enum class TerminationCause { kNone, kJointLimit, kGraspLoss, kTimeout };
std::string ToString(TerminationCause cause);

struct ActionPair {
  int force_index = 1;  // into the delta-force set
  VectorXd accel;       // redundant-subspace acceleration
};

// 1 inside the closed band, 0 otherwise.
double RewardK(double velocity, const Range& band);

// 1 - k1 |accel_change|_1 - k2 sum max(0, ln(-c_F)).
double RewardR(const VectorXd& accel_change,
               const std::vector<Contact>& contacts, double k1 = kRewardK1,
               double k2 = kRewardK2);

struct TerminalCheck {
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;
  double reward = 0.0;
};

// Grasp loss and joint-limit breach end the episode with `penalty`; reaching
// `episode_time` ends it with 0.
TerminalCheck CheckTerminal(const WorldState& state, const RobotModel& robot,
                            double episode_time,
                            double penalty = kTerminalPenalty);

struct StepRecord {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  double velocity_estimate = 0.0;  // signed by the opening sense
  double force = 0.0;
  int force_index = 1;
  VectorXd accel;
  double r_k = 0.0;
  double r_r = 0.0;
  double manipulability = 0.0;
  double contact_sum = 0.0;  // sum of c_F, <= 0
  VectorXd q;
  TerminationCause cause = TerminationCause::kNone;
};

struct EpisodeLog {
  std::uint64_t case_seed = 0;
  std::vector<StepRecord> steps;
  double initial_theta = 0.0;
  double terminal_theta = 0.0;  // articulation along the opening sense
  TerminationCause cause = TerminationCause::kNone;
  double return_k = 0.0;
  double return_r = 0.0;
  double sim_duration = 0.0;
  double wall_seconds = 0.0;
};

struct StepResult {
  double r_k = 0.0;
  double r_r = 0.0;
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;
};

// The two-policy MDP over one scenario case at a time.
class ManipEnv {
 public:
  explicit ManipEnv(ScenarioConfig config);

  // Samples the case, attaches the grasp and returns the first window.
  const ObservationWindow& Reset(std::uint64_t case_seed);
  // Throws std::logic_error before Reset or after the episode ended.
  StepResult Step(const ActionPair& action);

  const ObservationWindow& observation() const { return window_; }
  VectorXd Features() const;
  int feature_dim() const;
  int redundant_dim() const { return redundant_dim_; }
  int num_force_actions() const {
    return static_cast<int>(config_.mdp.delta_force_set.size());
  }
  double accel_limit() const { return config_.mdp.accel_limit; }
  int max_steps() const;

  bool done() const { return done_; }
  bool active() const { return world_.has_value() && !done_; }
  const ScenarioConfig& config() const { return config_; }
  const Scenario& scenario() const { return scenario_; }
  const World& world() const { return *world_; }
  const WorldState& state() const { return state_; }
  const HybridCommand& command() const { return command_; }
  const EpisodeLog& log() const { return log_; }
  VelocityEstimate velocity() const { return estimator_->current(); }
  // Joint value tracked from the gripper position.
  double estimated_theta() const { return theta_estimate_; }

 private:
  ObservationFrame MakeFrame() const;
  double TaskManipulability(const MatrixXd& jacobian) const;

  ScenarioConfig config_;
  int redundant_dim_ = 0;
  Scenario scenario_;
  std::optional<World> world_;
  std::optional<HybridController> controller_;
  std::optional<VelocityEstimator> estimator_;
  WorldState state_;
  HybridCommand command_;
  Vector6d anchor_ = Vector6d::Zero();
  VectorXd last_accel_;
  ObservationWindow window_;
  EpisodeLog log_;
  double theta_estimate_ = 0.0;
  double last_azimuth_ = 0.0;
  double start_coordinate_ = 0.0;
  int steps_ = 0;
  bool done_ = false;
  std::chrono::steady_clock::time_point wall_start_;
};

}  // namespace swrl

#endif  // SWRL_ENV_H_
