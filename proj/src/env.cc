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

#include "swrl/env.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swrl {

Range VelocityBand(ObjectClass object_class) {
  switch (object_class) {
    case ObjectClass::kHandwheelValve:
    case ObjectClass::kLeverValve:
      return {0.7, 0.8};
    case ObjectClass::kDoor:
      return {0.1, 0.15};
    case ObjectClass::kDrawer:
      return {0.4, 0.5};
  }
  return {0.0, 0.0};
}

ObservationWindow::ObservationWindow(int length, int dof) : dof_(dof) {
  if (length < 1) throw std::invalid_argument("window length must be >= 1");
  frames_.resize(length);
  Clear();
}

void ObservationWindow::Clear() {
  for (ObservationFrame& f : frames_) {
    f = ObservationFrame{};
    f.q = VectorXd::Zero(dof_);
    f.tau = VectorXd::Zero(dof_);
  }
  head_ = 0;
  filled_ = 0;
}

void ObservationWindow::Push(ObservationFrame frame) {
  if (frame.q.size() != dof_ || frame.tau.size() != dof_) {
    throw std::invalid_argument("observation frame has wrong dof");
  }
  frame.valid = true;
  frames_[head_] = std::move(frame);
  head_ = (head_ + 1) % length();
  filled_ = std::min(filled_ + 1, length());
}

const ObservationFrame& ObservationWindow::frame(int i) const {
  if (i < 0 || i >= length()) throw std::out_of_range("window index");
  return frames_[(head_ + i) % length()];
}

VectorXd ObservationWindow::Flatten(const VectorXd& q_scale,
                                    const VectorXd& tau_scale) const {
  const int fd = FrameDim(dof_);
  VectorXd out = VectorXd::Zero(fd * length());
  for (int i = 0; i < length(); ++i) {
    const ObservationFrame& f = frame(i);
    if (!f.valid) continue;
    auto seg = out.segment(i * fd, fd);
    seg.head(dof_) = f.q.cwiseQuotient(q_scale);
    seg.segment(dof_, dof_) = f.tau.cwiseQuotient(tau_scale);
    for (int k = 0; k < 12; ++k) seg[2 * dof_ + k] = f.pose[k];
    seg[2 * dof_ + 12] = f.velocity;
    seg[2 * dof_ + 13] = 1.0;
  }
  return out;
}

std::string ToString(TerminationCause cause) {
  switch (cause) {
    case TerminationCause::kNone: return "none";
    case TerminationCause::kJointLimit: return "joint_limit";
    case TerminationCause::kGraspLoss: return "grasp_loss";
    case TerminationCause::kTimeout: return "timeout";
  }
  return "?";
}

double RewardK(double velocity, const Range& band) {
  return velocity >= band.min && velocity <= band.max ? 1.0 : 0.0;
}

double RewardR(const VectorXd& accel_change,
               const std::vector<Contact>& contacts, double k1, double k2) {
  double penalty = 0.0;
  for (const Contact& c : contacts) penalty += std::max(0.0, std::log(-c.force));
  return 1.0 - k1 * accel_change.lpNorm<1>() - k2 * penalty;
}

TerminalCheck CheckTerminal(const WorldState& state, const RobotModel& robot,
                            double episode_time, double penalty) {
  TerminalCheck out;
  if (!state.grasp_attached) {
    return {true, TerminationCause::kGraspLoss, penalty};
  }
  for (int i = 0; i < robot.dof(); ++i) {
    if (state.q[i] <= robot.joints[i].q_min || state.q[i] >= robot.joints[i].q_max) {
      return {true, TerminationCause::kJointLimit, penalty};
    }
  }
  // Tolerate round-off in the tick count times dt.
  if (state.sim_time >= episode_time - 1e-9) {
    return {true, TerminationCause::kTimeout, 0.0};
  }
  return out;
}

namespace {

int RedundantDim(const ScenarioConfig& config) {
  ObjectModel probe;
  probe.joint_type = DefaultJointType(config.object.object_class);
  return Decompose(probe, config.object.grasp, config.decomposition)
      .redundant_dim();
}

}  // namespace

ManipEnv::ManipEnv(ScenarioConfig config) : config_(std::move(config)) {
  config_.Validate();
  redundant_dim_ = RedundantDim(config_);
  const int dof = BuildRobot(config_.robot).dof();
  window_ = ObservationWindow(config_.mdp.window, dof);
}

int ManipEnv::feature_dim() const {
  return ObservationWindow::FrameDim(window_.dof()) * window_.length();
}

int ManipEnv::max_steps() const {
  return static_cast<int>(std::lround(config_.mdp.episode_time * config_.mdp.policy_rate));
}

double ManipEnv::TaskManipulability(const MatrixXd& jacobian) const {
  MatrixXd rows(config_.eval.manipulability_rows.size(), jacobian.cols());
  for (size_t i = 0; i < config_.eval.manipulability_rows.size(); ++i) {
    rows.row(i) = jacobian.row(config_.eval.manipulability_rows[i]);
  }
  return Manipulability(rows);
}

ObservationFrame ManipEnv::MakeFrame() const {
  ObservationFrame f;
  f.q = state_.q;
  f.tau = state_.last_torque.size() == state_.q.size()
              ? state_.last_torque
              : VectorXd::Zero(state_.q.size());
  const Transform ee = ForwardKinematics(scenario_.robot, state_.q).end_effector;
  const Transform in_o = scenario_.frame.pose.Inverse() * ee;
  const auto flat = in_o.Flatten();
  for (int k = 0; k < 12; ++k) f.pose[k] = flat[k];
  f.velocity = estimator_->current().value;
  f.valid = true;
  return f;
}

VectorXd ManipEnv::Features() const {
  const RobotModel& robot = scenario_.robot;
  VectorXd q_scale = VectorXd::Constant(window_.dof(), std::numbers::pi);
  VectorXd tau_scale = robot.dof() == window_.dof()
                           ? robot.TorqueLimits()
                           : VectorXd::Ones(window_.dof());
  return window_.Flatten(q_scale, tau_scale);
}

const ObservationWindow& ManipEnv::Reset(std::uint64_t case_seed) {
  wall_start_ = std::chrono::steady_clock::now();
  scenario_ = BuildScenario(config_, case_seed);
  world_.emplace(scenario_.robot, scenario_.object, scenario_.obstacles,
                 scenario_.world);
  controller_.reset();
  controller_.emplace(scenario_.robot, scenario_.object, scenario_.frame,
                      scenario_.subspaces, config_.controller);
  const double period = 1.0 / config_.mdp.policy_rate;
  estimator_.emplace(scenario_.object.joint_type, period,
                     config_.mdp.velocity_filter_gain);
  state_ = world_->MakeState(scenario_.q0, 0.0, true);

  anchor_ = TaskCoordinates(scenario_.frame, scenario_.grasp_pose);
  command_ = HybridCommand{};
  command_.x_des = anchor_;
  command_.force = std::clamp(config_.mdp.initial_force, 0.0,
                              config_.controller.max_force);
  command_.force_dir = ForceDirection(scenario_.object, anchor_.head<3>());
  last_accel_ = VectorXd::Zero(redundant_dim_);

  const Vector3d grip = anchor_.head<3>();
  last_azimuth_ = std::atan2(grip.y(), grip.x());
  start_coordinate_ = grip.z();
  theta_estimate_ = 0.0;
  estimator_->Update(grip);

  window_.Clear();
  window_.Push(MakeFrame());

  log_ = EpisodeLog{};
  log_.case_seed = case_seed;
  log_.initial_theta = state_.theta;
  steps_ = 0;
  done_ = false;
  return window_;
}

StepResult ManipEnv::Step(const ActionPair& action) {
  if (!world_) throw std::logic_error("step called before reset");
  if (done_) throw std::logic_error("step called after the episode ended");
  const std::vector<double>& dset = config_.mdp.delta_force_set;
  if (action.force_index < 0 || action.force_index >= static_cast<int>(dset.size())) {
    throw std::invalid_argument("force action index out of range");
  }
  if (action.accel.size() != redundant_dim_) {
    throw std::invalid_argument("redundant action has wrong dimension");
  }
  const double a_max = config_.mdp.accel_limit;
  VectorXd accel = action.accel.cwiseMax(-a_max).cwiseMin(a_max);
  for (int i = 0; i < accel.size(); ++i) {
    if (!std::isfinite(accel[i])) throw std::invalid_argument("non-finite action");
  }

  const double dt_policy = 1.0 / config_.mdp.policy_rate;
  const double sense = scenario_.object.open_sense;
  auto [xg, xdg] = GeometricReference(scenario_.object, anchor_, theta_estimate_,
                                      0.0, estimator_->current().value);
  HybridCommand next = IntegratePolicyOutputs(
      command_, dset[action.force_index], accel, scenario_.subspaces, xg, xdg,
      dt_policy, config_.controller.max_force);

  const int ticks = config_.mdp.ticks_per_policy_step();
  TerminalCheck term;
  for (int k = 1; k <= ticks; ++k) {
    HybridCommand cmd = InterpolateCommand(command_, next,
                                           static_cast<double>(k) / ticks);
    HybridController::Output out = controller_->Tick(state_.q, state_.qd, cmd);
    state_ = world_->Step(state_, out.torque);
    term = CheckTerminal(state_, scenario_.robot, 1e300, config_.mdp.terminal_reward);
    if (term.done) break;
  }
  command_ = next;
  ++steps_;

  // Track the joint value from the gripper, as a real robot would.
  const Transform ee = ForwardKinematics(scenario_.robot, state_.q).end_effector;
  const Vector3d grip = scenario_.frame.ToFrame(ee.translation);
  if (scenario_.object.joint_type == JointType::kRevolute) {
    const double az = std::atan2(grip.y(), grip.x());
    theta_estimate_ += WrapAngle(az - last_azimuth_);
    last_azimuth_ = az;
  } else {
    theta_estimate_ = grip.z() - start_coordinate_;
  }
  const VelocityEstimate vel = estimator_->Update(grip);
  const double w = TaskManipulability(
      ComputeJacobianBundle(scenario_.robot, state_.q, scenario_.frame.pose,
                            config_.controller.pinv_damping)
          .jacobian);
  window_.Push(MakeFrame());

  StepResult result;
  result.r_k = RewardK(sense * vel.value, config_.mdp.velocity_band);
  result.r_r = RewardR(accel - last_accel_, state_.last_contacts,
                       config_.mdp.k1, config_.mdp.k2);
  last_accel_ = accel;
  if (!term.done && steps_ >= max_steps()) {
    term = {true, TerminationCause::kTimeout, 0.0};
  }
  if (term.done) {
    // The penalty ends the shared episode, so both channels receive it.
    result.r_k += term.reward;
    result.r_r += term.reward;
    result.done = true;
    result.cause = term.cause;
    done_ = true;
  }

  StepRecord rec;
  rec.t = state_.sim_time;
  rec.theta = state_.theta;
  rec.theta_dot = state_.theta_dot;
  rec.velocity_estimate = sense * vel.value;
  rec.force = command_.force;
  rec.force_index = action.force_index;
  rec.accel = accel;
  rec.r_k = result.r_k;
  rec.r_r = result.r_r;
  rec.manipulability = w;
  for (const Contact& c : state_.last_contacts) rec.contact_sum += c.force;
  rec.q = state_.q;
  rec.cause = result.cause;
  log_.steps.push_back(std::move(rec));
  log_.return_k += result.r_k;
  log_.return_r += result.r_r;
  if (done_) {
    log_.cause = result.cause;
    log_.terminal_theta = sense * (state_.theta - log_.initial_theta);
    log_.sim_duration = state_.sim_time;
    log_.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - wall_start_)
                            .count();
  }
  return result;
}

}  // namespace swrl
