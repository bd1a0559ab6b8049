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

#ifndef SWRL_SIM_WORLD_H_
#define SWRL_SIM_WORLD_H_

#include <cstdint>
#include <vector>

#include "swrl/object_model.h"
#include "swrl/robot_model.h"
#include "swrl/spatial.h"

namespace swrl {

enum class ObstacleShape { kHalfspace, kBox, kCapsule };

// Halfspace: the free side is along +z of `pose`, surface through its
// origin; `dimensions` unused. Box: half extents. Capsule: (radius,
// half-length along local z, unused).
struct Obstacle {
  ObstacleShape shape = ObstacleShape::kHalfspace;
  Transform pose;
  Vector3d dimensions = Vector3d::Ones();
  // Pose is relative to the object's moving part (e.g. a door panel).
  bool attached_to_object = false;

  void Validate() const;
};

struct Contact {
  Vector3d location = Vector3d::Zero();
  Vector3d normal = Vector3d::UnitZ();  // pushes the link out
  double depth = 0.0;
  double force = 0.0;  // c_F = -stiffness * depth (compression negative)
  int link = -1;
  int obstacle = -1;
};

struct WorldParams {
  double dt = 1e-3;
  // Physics substeps per tick; torque is held across them.
  int substeps = 4;
  bool gravity = true;
  double grasp_stiffness = 20000.0;  // N/m
  double grasp_damping = 150.0;      // N*s/m
  bool yaw_lock = true;              // rigid grasp also couples yaw
  double grasp_yaw_stiffness = 200.0;  // N*m/rad
  double grasp_yaw_damping = 2.0;
  double break_force = 80.0;       // N
  double grasp_tolerance = 0.005;  // m
  double contact_stiffness = 2000.0;
  double stiction_deadband = 1e-4;
};

struct WorldState {
  VectorXd q;
  VectorXd qd;
  double theta = 0.0;
  double theta_dot = 0.0;
  bool grasp_attached = false;
  // Gripper orientation relative to the handle frame, fixed at grasp time.
  Matrix3d grasp_relative_rotation = Matrix3d::Identity();
  std::int64_t ticks = 0;
  double sim_time = 0.0;
  std::vector<Contact> last_contacts;
  VectorXd last_torque;
  Vector3d coupling_force = Vector3d::Zero();  // applied to the gripper
  double object_drive = 0.0;  // generalized force from the gripper
};

// Fixed-step simulation of arm + single-joint object + grasp coupling.
// Stateless apart from its configuration; every call is a pure function of
// the passed state.
class World {
 public:
  World(RobotModel robot, ObjectModel object, std::vector<Obstacle> obstacles,
        WorldParams params);

  const RobotModel& robot() const { return robot_; }
  const ObjectModel& object() const { return object_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const WorldParams& params() const { return params_; }

  // Rest state at (q, theta); attaches the grasp when requested, recording
  // the current gripper-to-handle orientation.
  WorldState MakeState(const VectorXd& q, double theta, bool attach) const;

  // One tick of length params().dt, integrated as params().substeps
  // semi-implicit Euler steps. Non-finite torques throw std::runtime_error.
  WorldState Step(const WorldState& state, const VectorXd& joint_torques) const;

  std::vector<Contact> ContactQuery(const WorldState& state) const;

  // Gripper point minus handle point.
  double GraspSeparation(const WorldState& state) const;

  // Kinetic + potential energy of arm, object and coupling springs.
  double TotalEnergy(const WorldState& state) const;

  Transform ObstacleWorldPose(const Obstacle& obstacle, double theta) const;

 private:
  WorldState Integrate(const WorldState& state, const VectorXd& tau,
                       double h) const;
  struct Coupling {
    Vector6d wrench = Vector6d::Zero();  // on the gripper, world frame
    double object_drive = 0.0;
    double force_norm = 0.0;
    double separation = 0.0;
  };
  Coupling ComputeCoupling(const WorldState& state, const Kinematics& kin,
                           const MatrixXd& ee_jacobian) const;
  double ObjectAcceleration(double theta, double theta_dot,
                            double drive) const;

  RobotModel robot_;
  ObjectModel object_;
  std::vector<Obstacle> obstacles_;
  WorldParams params_;
};

// Closest points between segments [p0,p1] and [q0,q1]; returns squared
// distance and writes the points.
double SegmentSegmentClosest(const Vector3d& p0, const Vector3d& p1,
                             const Vector3d& q0, const Vector3d& q1,
                             Vector3d* on_p, Vector3d* on_q);

}  // namespace swrl

#endif  // SWRL_SIM_WORLD_H_
