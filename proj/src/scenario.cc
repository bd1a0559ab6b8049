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

#include "swrl/scenario.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace swrl {

namespace {

double Draw(std::mt19937_64& rng, const Range& r) {
  return std::uniform_real_distribution<double>(r.min, r.max)(rng);
}

bool Active(const Range& r) { return r.min != 0.0 || r.max != 0.0; }

bool InsideLimits(const RobotModel& robot, const VectorXd& q, double margin) {
  for (int i = 0; i < robot.dof(); ++i) {
    if (q[i] < robot.joints[i].q_min + margin ||
        q[i] > robot.joints[i].q_max - margin) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t CaseSeed(std::uint64_t base_seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

RobotModel BuildRobot(const RobotConfig& config) {
  RobotModel robot;
  if (config.type == "planar") {
    robot = MakePlanarArm(config.lengths, config.masses);
    for (int i = 0; i < robot.dof(); ++i) {
      robot.joints[i].q_min = config.q_min[i];
      robot.joints[i].q_max = config.q_max[i];
      robot.joints[i].torque_limit = config.torque_limits[i];
    }
  } else {
    robot = MakeFrankaLikeArm();
  }
  for (JointSpec& j : robot.joints) j.damping = config.joint_damping;
  robot.Validate();
  return robot;
}

ObjectModel BaseObject(const ObjectConfig& config) {
  ObjectModel o;
  o.object_class = config.object_class;
  o.joint_type = DefaultJointType(config.object_class);
  o.joint_frame.rotation = RotationFromRpy(config.rpy);
  o.joint_frame.translation = config.position;
  o.handle_offset = config.handle_offset;
  o.joint_range = {config.joint_range.min, config.joint_range.max};
  o.dry_friction = config.dry_friction;
  o.viscous_damping = config.damping;
  o.spring_k = config.spring_k;
  o.spring_rest = config.spring_rest;
  o.inertia = config.inertia;
  o.open_sense = config.open_sense;
  return o;
}

std::vector<Obstacle> BuildObstacles(
    const std::vector<ObstacleConfig>& configs) {
  std::vector<Obstacle> out;
  for (const ObstacleConfig& c : configs) {
    Obstacle o;
    if (c.shape == "halfspace") {
      o.shape = ObstacleShape::kHalfspace;
    } else if (c.shape == "box") {
      o.shape = ObstacleShape::kBox;
    } else if (c.shape == "capsule") {
      o.shape = ObstacleShape::kCapsule;
    } else {
      throw std::invalid_argument("unknown obstacle shape '" + c.shape + "'");
    }
    o.pose.rotation = RotationFromRpy(c.rpy);
    o.pose.translation = c.position;
    o.dimensions = c.dimensions;
    o.attached_to_object = c.attached_to_object;
    o.Validate();
    out.push_back(o);
  }
  return out;
}

ObjectModel RandomizeScenario(const ObjectModel& base,
                              const RandomizationConfig& ranges,
                              std::uint64_t seed, double* grasp_yaw) {
  std::mt19937_64 rng(seed);
  // Fixed draw order keeps samples stable when a range is edited.
  const double dx = Draw(rng, ranges.offset_x);
  const double dy = Draw(rng, ranges.offset_y);
  const double dz = Draw(rng, ranges.offset_z);
  const double yaw = Draw(rng, ranges.yaw);
  const double tilt = Draw(rng, ranges.tilt);
  const double size = Draw(rng, ranges.size);
  const double azimuth = Draw(rng, ranges.handle_angle);
  const double friction = Draw(rng, ranges.dry_friction);
  const double damping = Draw(rng, ranges.damping);
  const double inertia = Draw(rng, ranges.inertia);
  const double gyaw = Draw(rng, ranges.grasp_yaw);

  ObjectModel o = base;
  o.joint_frame.translation += Vector3d(dx, dy, dz);
  o.joint_frame.rotation =
      RotZ(yaw) * RotX(tilt) * o.joint_frame.rotation * RotZ(azimuth);
  if (Active(ranges.size) && o.joint_type == JointType::kRevolute) {
    const double r = o.HandleRadius();
    if (r > 0.0) o.handle_offset.head<2>() *= size / r;
  }
  if (Active(ranges.dry_friction)) o.dry_friction = friction;
  if (Active(ranges.damping)) o.viscous_damping = damping;
  if (Active(ranges.inertia)) o.inertia = inertia;
  if (grasp_yaw) *grasp_yaw = gyaw;
  o.Validate();
  return o;
}

Scenario BuildScenario(const ScenarioConfig& config, std::uint64_t case_seed) {
  Scenario s;
  s.case_seed = case_seed;
  s.robot = BuildRobot(config.robot);
  s.obstacles = BuildObstacles(config.obstacles);
  s.grasp = config.object.grasp;
  s.world = config.world;
  s.world.yaw_lock = config.object.grasp == GraspConvention::kRigid;
  const ObjectModel base = BaseObject(config.object);
  const bool planar = config.robot.type == "planar";

  VectorXd home(s.robot.dof());
  if (static_cast<int>(config.robot.home.size()) == s.robot.dof()) {
    for (int i = 0; i < s.robot.dof(); ++i) home[i] = config.robot.home[i];
  } else {
    home = 0.5 * (s.robot.LowerLimits() + s.robot.UpperLimits());
  }
  const double margin = config.manual.joint_limit_margin + 0.05;

  constexpr int kMaxDraws = 50;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const std::uint64_t draw_seed =
        attempt == 0 ? case_seed : CaseSeed(case_seed, attempt);
    double gyaw = 0.0;
    ObjectModel object =
        RandomizeScenario(base, config.randomization, draw_seed, &gyaw);
    ObjectFrame frame = BuildObjectFrame(object);
    Transform target;
    target.translation = object.HandlePosition(0.0);
    IkOptions opts;
    if (planar) {
      const double azimuth =
          std::atan2(target.translation.y(), target.translation.x());
      const double yaw = config.object.grasp_yaw_from_base
                             ? azimuth + gyaw
                             : RpyFromRotation(frame.pose.rotation *
                                               RotationFromRpy(config.object.grasp_rpy))[2] + gyaw;
      target.rotation = RotZ(yaw);
      opts.row_weights << 1, 1, 0, 0, 0, 1;
    } else {
      target.rotation = frame.pose.rotation *
                        RotationFromRpy(config.object.grasp_rpy) * RotZ(gyaw);
    }
    std::mt19937_64 rng(draw_seed ^ 0x5eedull);
    std::normal_distribution<double> jitter(0.0, 0.4);
    for (int trial = 0; trial < 12; ++trial) {
      VectorXd seed = home;
      if (planar) {
        const double azimuth =
            std::atan2(target.translation.y(), target.translation.x());
        seed[0] = azimuth - 0.6;
        if (seed.size() > 1) seed[1] = 1.2;
      }
      if (trial > 0) {
        for (int i = 0; i < seed.size(); ++i) seed[i] += jitter(rng);
        seed = seed.cwiseMax(s.robot.LowerLimits())
                   .cwiseMin(s.robot.UpperLimits());
      }
      IkResult ik = InverseKinematics(s.robot, target, seed, opts);
      if (!ik.converged || !InsideLimits(s.robot, ik.q, margin)) continue;
      World probe(s.robot, object, s.obstacles, s.world);
      WorldState state = probe.MakeState(ik.q, 0.0, true);
      if (!probe.ContactQuery(state).empty()) continue;
      s.object = object;
      s.frame = frame;
      s.q0 = ik.q;
      s.grasp_pose = ForwardKinematics(s.robot, ik.q).end_effector;
      s.subspaces = Decompose(object, s.grasp, config.decomposition);
      s.attempts = attempt + 1;
      return s;
    }
  }
  throw std::runtime_error("no reachable grasp pose found for case seed " +
                           std::to_string(case_seed));
}

}  // namespace swrl
