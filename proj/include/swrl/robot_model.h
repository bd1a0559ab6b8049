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

#ifndef SWRL_ROBOT_MODEL_H_
#define SWRL_ROBOT_MODEL_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swrl/spatial.h"

namespace swrl {

// One revolute joint. The joint rotates about `axis` (expressed in the frame
// reached after applying `offset` to the parent link frame).
struct JointSpec {
  Transform offset;
  Vector3d axis = Vector3d::UnitZ();
  double q_min = -3.0;
  double q_max = 3.0;
  double torque_limit = 100.0;
  double damping = 0.0;  // viscous joint friction, N*m*s
};

// Inertial and collision data of the link driven by a joint.
struct LinkInertial {
  double mass = 1.0;
  Vector3d com = Vector3d::Zero();             // link frame
  Matrix3d inertia = Matrix3d::Identity() * 1e-3;  // about com, link frame
  double capsule_radius = 0.0;                 // 0 disables collision
};

// Serial chain of revolute joints with a fixed tool (grasp point) frame.
struct RobotModel {
  std::string name;
  std::vector<JointSpec> joints;
  std::vector<LinkInertial> links;
  Transform base;
  Transform tool;  // last link frame -> grasp point
  Vector3d gravity = Vector3d(0.0, 0.0, -9.81);

  int dof() const { return static_cast<int>(joints.size()); }
  VectorXd LowerLimits() const;
  VectorXd UpperLimits() const;
  VectorXd TorqueLimits() const;

  // Throws std::invalid_argument when the model violates its invariants.
  void Validate() const;
};

// Franka-like 7-DOF arm (modified DH geometry, published joint limits,
// approximate inertials).
RobotModel MakeFrankaLikeArm();

// Planar chain in the world x-y plane, all axes along +z. Link i is a rod of
// `lengths[i]` with a point-like mass at its far end.
RobotModel MakePlanarArm(const std::vector<double>& lengths,
                         const std::vector<double>& masses);

// World-frame pose of every link frame plus the tool frame.
struct Kinematics {
  std::vector<Transform> link_frames;  // after joint rotation
  std::vector<Vector3d> joint_axes;    // world
  Transform end_effector;
};

Kinematics ForwardKinematics(const RobotModel& model, const VectorXd& q);

// 6xk geometric Jacobian (linear rows first, world frame) of a point rigidly
// attached to `link`.
MatrixXd PointJacobian(const RobotModel& model, const Kinematics& kin,
                       int link, const Vector3d& point);
MatrixXd EndEffectorJacobian(const RobotModel& model, const Kinematics& kin);

// Joint-space inertia by the composite-rigid-body method.
MatrixXd JointSpaceInertia(const RobotModel& model, const VectorXd& q);

// Recursive Newton-Euler. Returns tau = M qdd + C qd + g (g only when
// with_gravity).
VectorXd InverseDynamics(const RobotModel& model, const VectorXd& q,
                         const VectorXd& qd, const VectorXd& qdd,
                         bool with_gravity = true);
VectorXd GravityTorque(const RobotModel& model, const VectorXd& q);

inline constexpr double kDefaultPinvDamping = 1e-2;

// Singular-value damped pseudoinverse. Singular values at or above
// 2*damping are inverted exactly; below that the inverse is shaped so that
// sigma/(sigma^2 + lambda_i^2) never exceeds 1/(2*damping).
MatrixXd DampedPseudoInverse(const MatrixXd& j,
                             double damping = kDefaultPinvDamping);

// Yoshikawa index sqrt(det(J J^T)); 0 when J has more rows than columns.
double Manipulability(const MatrixXd& j);

struct JacobianBundle {
  MatrixXd jacobian;       // 6xk, rows [x y z roll pitch yaw] in task frame
  MatrixXd jacobian_pinv;  // kx6
  Matrix6d task_inertia;   // J+^T M J+
  MatrixXd joint_inertia;  // kxk
  double manipulability = 0.0;
};

// Jacobian of the tool point expressed in `task_frame` axes.
JacobianBundle ComputeJacobianBundle(const RobotModel& model,
                                     const VectorXd& q,
                                     const Transform& task_frame,
                                     double damping = kDefaultPinvDamping);

struct IkOptions {
  int max_iterations = 300;
  double tolerance = 1e-6;
  double damping = 1e-2;
  // Per task-row weights (world frame). Zero rows are ignored.
  Vector6d row_weights = Vector6d::Ones();
};

struct IkResult {
  VectorXd q;
  bool converged = false;
  double residual = 0.0;
};

// Damped least-squares IK for the tool frame, joint limits enforced by
// clamping each iterate.
IkResult InverseKinematics(const RobotModel& model, const Transform& target,
                           const VectorXd& q_seed,
                           const IkOptions& options = {});

}  // namespace swrl

#endif  // SWRL_ROBOT_MODEL_H_
