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

#ifndef SWRL_HYBRID_CONTROLLER_H_
#define SWRL_HYBRID_CONTROLLER_H_

#include <utility>

#include "swrl/object_model.h"
#include "swrl/robot_model.h"
#include "swrl/subspace.h"

namespace swrl {

// Task-space reference at controller rate. Coordinates are in {O}:
// [x y z] in meters, [roll pitch yaw] in radians (R = Rz Ry Rx).
struct HybridCommand {
  double force = 0.0;  // desired force magnitude along force_dir, N
  Vector6d force_dir = Vector6d::Zero();
  Vector6d x_des = Vector6d::Zero();
  Vector6d xd_des = Vector6d::Zero();  // position rates + rpy rates
  double timestamp = 0.0;
};

struct GainSet {
  Vector6d kp = Vector6d::Zero();
  Vector6d kd = Vector6d::Zero();

  // kp = 400 on positions, 100 on orientations; kd = 2 sqrt(kp).
  static GainSet Default();
  void Validate() const;
};

// tau = J^T (Lambda S (Kp Xe + Kd Ve) + (I - S) Fd) + gravity_comp, clamped
// to +-torque_limits. Non-finite inputs throw std::runtime_error.
VectorXd ComputeTorque(const JacobianBundle& bundle, const Matrix6d& selection,
                       const GainSet& gains, const Vector6d& pose_error,
                       const Vector6d& velocity_error,
                       const Vector6d& desired_force,
                       const VectorXd& gravity_comp,
                       const VectorXd& torque_limits);

// Pose and velocity error of the gripper against `command`, both in {O}.
// The rotational error is the rotation vector of R_des * R_curr^T.
std::pair<Vector6d, Vector6d> TaskError(const ObjectFrame& frame,
                                        const Transform& gripper_world,
                                        const Vector6d& twist_in_frame,
                                        const HybridCommand& command);

// Current gripper coordinates in {O} ([x y z roll pitch yaw]).
Vector6d TaskCoordinates(const ObjectFrame& frame,
                         const Transform& gripper_world);

// Policy-rate update: F <- clamp(F + delta_force, 0, max_force); redundant
// coordinates integrate `redundant_accel`; geometric coordinates copy the
// planner reference. Throws std::invalid_argument on a dimension mismatch.
HybridCommand IntegratePolicyOutputs(const HybridCommand& prev,
                                     double delta_force,
                                     const VectorXd& redundant_accel,
                                     const SubspaceDecomposition& subspaces,
                                     const Vector6d& geometric_x,
                                     const Vector6d& geometric_xd,
                                     double dt_policy, double max_force);

// Linear interpolation; fraction == 1 returns `to` exactly.
HybridCommand InterpolateCommand(const HybridCommand& from,
                                 const HybridCommand& to, double fraction);

// Geometric-subspace reference as a function of the object joint value:
// coordinates rigidly carried by the handle from their grasp-time `anchor`.
std::pair<Vector6d, Vector6d> GeometricReference(const ObjectModel& object,
                                                 const Vector6d& anchor,
                                                 double theta,
                                                 double theta_at_anchor,
                                                 double theta_dot);

struct ControllerConfig {
  GainSet gains = GainSet::Default();
  double max_force = 60.0;
  double pinv_damping = kDefaultPinvDamping;
  bool gravity_compensation = true;
};

// Evaluates the hybrid force/motion law for one 1 kHz tick.
class HybridController {
 public:
  HybridController(const RobotModel& robot, const ObjectModel& object,
                   ObjectFrame frame, SubspaceDecomposition subspaces,
                   ControllerConfig config);

  struct Output {
    VectorXd torque;
    JacobianBundle bundle;
    Vector6d desired_force = Vector6d::Zero();
  };

  Output Tick(const VectorXd& q, const VectorXd& qd,
              const HybridCommand& command) const;

  const SubspaceDecomposition& subspaces() const { return subspaces_; }
  const ObjectFrame& frame() const { return frame_; }
  const ControllerConfig& config() const { return config_; }
  const Matrix6d& selection() const { return selection_; }

 private:
  const RobotModel* robot_;
  const ObjectModel* object_;
  ObjectFrame frame_;
  SubspaceDecomposition subspaces_;
  ControllerConfig config_;
  Matrix6d selection_;
};

}  // namespace swrl

#endif  // SWRL_HYBRID_CONTROLLER_H_
