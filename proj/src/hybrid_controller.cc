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

#include "swrl/hybrid_controller.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swrl {

GainSet GainSet::Default() {
  GainSet g;
  g.kp << 400, 400, 400, 100, 100, 100;
  g.kd = 2.0 * g.kp.cwiseSqrt();
  return g;
}

void GainSet::Validate() const {
  if (!(kp.minCoeff() > 0.0) || !(kd.minCoeff() > 0.0)) {
    throw std::invalid_argument("controller gains must be positive");
  }
}

VectorXd ComputeTorque(const JacobianBundle& bundle, const Matrix6d& selection,
                       const GainSet& gains, const Vector6d& pose_error,
                       const Vector6d& velocity_error,
                       const Vector6d& desired_force,
                       const VectorXd& gravity_comp,
                       const VectorXd& torque_limits) {
  if (!pose_error.allFinite() || !velocity_error.allFinite() ||
      !desired_force.allFinite() || !gravity_comp.allFinite() ||
      !bundle.jacobian.allFinite()) {
    throw std::runtime_error("non-finite controller input");
  }
  Vector6d motion = gains.kp.cwiseProduct(pose_error) +
                    gains.kd.cwiseProduct(velocity_error);
  Vector6d wrench = bundle.task_inertia * (selection * motion) +
                    (Matrix6d::Identity() - selection) * desired_force;
  VectorXd tau = bundle.jacobian.transpose() * wrench + gravity_comp;
  return tau.cwiseMax(-torque_limits).cwiseMin(torque_limits);
}

Vector6d TaskCoordinates(const ObjectFrame& frame,
                         const Transform& gripper_world) {
  Vector6d x;
  x.head<3>() = frame.ToFrame(gripper_world.translation);
  x.tail<3>() = RpyFromRotation(frame.RotationToFrame(gripper_world.rotation));
  return x;
}

std::pair<Vector6d, Vector6d> TaskError(const ObjectFrame& frame,
                                        const Transform& gripper_world,
                                        const Vector6d& twist_in_frame,
                                        const HybridCommand& command) {
  Vector6d pose_error;
  Vector6d velocity_error;
  pose_error.head<3>() =
      command.x_des.head<3>() - frame.ToFrame(gripper_world.translation);
  Matrix3d desired = RotationFromRpy(command.x_des.tail<3>());
  Matrix3d current = frame.RotationToFrame(gripper_world.rotation);
  pose_error.tail<3>() = RotationVector(desired * current.transpose());
  velocity_error.head<3>() =
      command.xd_des.head<3>() - twist_in_frame.head<3>();
  velocity_error.tail<3>() =
      RpyRatesToAngularVelocity(command.x_des.tail<3>(),
                                command.xd_des.tail<3>()) -
      twist_in_frame.tail<3>();
  return {pose_error, velocity_error};
}

HybridCommand IntegratePolicyOutputs(const HybridCommand& prev,
                                     double delta_force,
                                     const VectorXd& redundant_accel,
                                     const SubspaceDecomposition& subspaces,
                                     const Vector6d& geometric_x,
                                     const Vector6d& geometric_xd,
                                     double dt_policy, double max_force) {
  if (redundant_accel.size() != subspaces.redundant_dim()) {
    throw std::invalid_argument("redundant acceleration has size " +
                                std::to_string(redundant_accel.size()) +
                                ", redundant subspace has " +
                                std::to_string(subspaces.redundant_dim()));
  }
  HybridCommand next = prev;
  next.force = std::clamp(prev.force + delta_force, 0.0, max_force);
  for (int j = 0; j < subspaces.redundant_dim(); ++j) {
    const int i = subspaces.redundant[j];
    next.xd_des[i] = prev.xd_des[i] + redundant_accel[j] * dt_policy;
    next.x_des[i] = prev.x_des[i] + next.xd_des[i] * dt_policy;
  }
  for (int i : subspaces.geometric) {
    next.x_des[i] = geometric_x[i];
    next.xd_des[i] = geometric_xd[i];
  }
  next.timestamp = prev.timestamp + dt_policy;
  return next;
}

HybridCommand InterpolateCommand(const HybridCommand& from,
                                 const HybridCommand& to, double fraction) {
  HybridCommand out = to;
  out.force = std::lerp(from.force, to.force, fraction);
  out.timestamp = std::lerp(from.timestamp, to.timestamp, fraction);
  for (int i = 0; i < kTaskDim; ++i) {
    out.x_des[i] = std::lerp(from.x_des[i], to.x_des[i], fraction);
    out.xd_des[i] = std::lerp(from.xd_des[i], to.xd_des[i], fraction);
  }
  return out;
}

std::pair<Vector6d, Vector6d> GeometricReference(const ObjectModel& object,
                                                 const Vector6d& anchor,
                                                 double theta,
                                                 double theta_at_anchor,
                                                 double theta_dot) {
  Vector6d x = anchor;
  Vector6d xd = Vector6d::Zero();
  const double delta = theta - theta_at_anchor;
  if (object.joint_type == JointType::kRevolute) {
    Vector3d p = RotZ(delta) * anchor.head<3>();
    x.head<3>() = p;
    x[kYaw] = anchor[kYaw] + delta;
    xd.head<3>() = Vector3d(-p.y(), p.x(), 0.0) * theta_dot;
    xd[kYaw] = theta_dot;
  } else {
    x[kZ] = anchor[kZ] + delta;
    xd[kZ] = theta_dot;
  }
  return {x, xd};
}

HybridController::HybridController(const RobotModel& robot,
                                   const ObjectModel& object,
                                   ObjectFrame frame,
                                   SubspaceDecomposition subspaces,
                                   ControllerConfig config)
    : robot_(&robot),
      object_(&object),
      frame_(frame),
      subspaces_(std::move(subspaces)),
      config_(config),
      selection_(subspaces_.Selection()) {
  config_.gains.Validate();
}

HybridController::Output HybridController::Tick(
    const VectorXd& q, const VectorXd& qd,
    const HybridCommand& command) const {
  Output out;
  out.bundle =
      ComputeJacobianBundle(*robot_, q, frame_.pose, config_.pinv_damping);
  Kinematics kin = ForwardKinematics(*robot_, q);
  Vector6d twist = out.bundle.jacobian * qd;
  auto [pose_error, velocity_error] =
      TaskError(frame_, kin.end_effector, twist, command);
  Vector6d dir =
      ForceDirection(*object_, frame_.ToFrame(kin.end_effector.translation));
  out.desired_force = command.force * dir;
  VectorXd gravity = config_.gravity_compensation
                         ? GravityTorque(*robot_, q)
                         : VectorXd::Zero(robot_->dof());
  out.torque = ComputeTorque(out.bundle, selection_, config_.gains, pose_error,
                             velocity_error, out.desired_force, gravity,
                             robot_->TorqueLimits());
  return out;
}

}  // namespace swrl
