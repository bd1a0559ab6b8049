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

#include "swrl/sim_world.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace swrl {
namespace {

double Sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

struct Penetration {
  double depth = -1.0;
  Vector3d point = Vector3d::Zero();  // on the obstacle surface
  Vector3d normal = Vector3d::UnitZ();
};

Penetration SphereBox(const Vector3d& center, double radius,
                      const Transform& pose, const Vector3d& half) {
  Penetration out;
  Vector3d local = pose.Inverse() * center;
  Vector3d clamped = local.cwiseMax(-half).cwiseMin(half);
  Vector3d diff = local - clamped;
  double dist = diff.norm();
  if (dist > 1e-12) {
    out.depth = radius - dist;
    out.point = pose * clamped;
    out.normal = pose.rotation * (diff / dist);
    return out;
  }
  // Center inside the box: push out through the nearest face.
  Vector3d gap = half - local.cwiseAbs();
  int axis = 0;
  gap.minCoeff(&axis);
  Vector3d n = Vector3d::Zero();
  n[axis] = local[axis] >= 0.0 ? 1.0 : -1.0;
  Vector3d surface = local;
  surface[axis] = n[axis] * half[axis];
  out.depth = radius + gap[axis];
  out.point = pose * surface;
  out.normal = pose.rotation * n;
  return out;
}

}  // namespace

void Obstacle::Validate() const {
  bool ok = true;
  if (shape == ObstacleShape::kBox) ok = dimensions.minCoeff() > 0.0;
  if (shape == ObstacleShape::kCapsule) {
    ok = dimensions[0] > 0.0 && dimensions[1] > 0.0;
  }
  if (!ok) throw std::invalid_argument("obstacle dimensions must be positive");
  if (!IsRotation(pose.rotation)) {
    throw std::invalid_argument("obstacle pose rotation not orthonormal");
  }
}

double SegmentSegmentClosest(const Vector3d& p0, const Vector3d& p1,
                             const Vector3d& q0, const Vector3d& q1,
                             Vector3d* on_p, Vector3d* on_q) {
  const Vector3d d1 = p1 - p0;
  const Vector3d d2 = q1 - q0;
  const Vector3d r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  constexpr double kEps = 1e-14;
  double s = 0.0;
  double t = 0.0;
  if (a <= kEps && e <= kEps) {
    s = t = 0.0;
  } else if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > kEps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  *on_p = p0 + d1 * s;
  *on_q = q0 + d2 * t;
  return (*on_p - *on_q).squaredNorm();
}

World::World(RobotModel robot, ObjectModel object,
             std::vector<Obstacle> obstacles, WorldParams params)
    : robot_(std::move(robot)),
      object_(std::move(object)),
      obstacles_(std::move(obstacles)),
      params_(params) {
  robot_.Validate();
  object_.Validate();
  for (const Obstacle& o : obstacles_) o.Validate();
  if (!(params_.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (params_.substeps < 1) throw std::invalid_argument("substeps must be >= 1");
}

WorldState World::MakeState(const VectorXd& q, double theta,
                            bool attach) const {
  if (q.size() != robot_.dof()) {
    throw std::invalid_argument("initial q does not match robot dof");
  }
  WorldState s;
  s.q = q;
  s.qd = VectorXd::Zero(robot_.dof());
  s.theta = theta;
  s.last_torque = VectorXd::Zero(robot_.dof());
  s.grasp_attached = attach;
  Kinematics kin = ForwardKinematics(robot_, q);
  s.grasp_relative_rotation =
      object_.HandleRotation(theta).transpose() * kin.end_effector.rotation;
  return s;
}

Transform World::ObstacleWorldPose(const Obstacle& obstacle,
                                   double theta) const {
  if (!obstacle.attached_to_object) return obstacle.pose;
  Transform moving = object_.joint_frame;
  if (object_.joint_type == JointType::kRevolute) {
    moving = moving * Transform::FromRotation(RotZ(theta));
  } else {
    moving = moving * Transform::FromTranslation(theta * Vector3d::UnitZ());
  }
  return moving * obstacle.pose;
}

std::vector<Contact> World::ContactQuery(const WorldState& state) const {
  std::vector<Contact> contacts;
  if (obstacles_.empty()) return contacts;
  Kinematics kin = ForwardKinematics(robot_, state.q);
  const int n = robot_.dof();
  for (int link = 0; link < n; ++link) {
    const double radius = robot_.links[link].capsule_radius;
    if (radius <= 0.0) continue;
    const Vector3d a = kin.link_frames[link].translation;
    const Vector3d b = link + 1 < n ? kin.link_frames[link + 1].translation
                                    : kin.end_effector.translation;
    for (size_t k = 0; k < obstacles_.size(); ++k) {
      const Obstacle& obs = obstacles_[k];
      const Transform pose = ObstacleWorldPose(obs, state.theta);
      Penetration best;
      switch (obs.shape) {
        case ObstacleShape::kHalfspace: {
          const Vector3d normal = pose.rotation.col(2);
          for (const Vector3d& p : {a, b}) {
            double depth = radius - normal.dot(p - pose.translation);
            if (depth > best.depth) {
              best.depth = depth;
              best.normal = normal;
              best.point = p - normal * normal.dot(p - pose.translation);
            }
          }
          break;
        }
        case ObstacleShape::kBox: {
          constexpr int kSamples = 9;
          for (int i = 0; i < kSamples; ++i) {
            Vector3d p = a + (b - a) * (static_cast<double>(i) / (kSamples - 1));
            Penetration pen = SphereBox(p, radius, pose, obs.dimensions);
            if (pen.depth > best.depth) best = pen;
          }
          break;
        }
        case ObstacleShape::kCapsule: {
          const Vector3d axis = pose.rotation.col(2) * obs.dimensions[1];
          Vector3d on_link, on_obs;
          double d2 = SegmentSegmentClosest(a, b, pose.translation - axis,
                                            pose.translation + axis, &on_link,
                                            &on_obs);
          double dist = std::sqrt(d2);
          best.depth = radius + obs.dimensions[0] - dist;
          best.normal = dist > 1e-12 ? Vector3d((on_link - on_obs) / dist)
                                     : Vector3d(pose.rotation.col(0));
          best.point = on_obs + best.normal * obs.dimensions[0];
          break;
        }
      }
      if (best.depth > 0.0) {
        Contact c;
        c.location = best.point;
        c.normal = best.normal;
        c.depth = best.depth;
        c.force = -params_.contact_stiffness * best.depth;
        c.link = link;
        c.obstacle = static_cast<int>(k);
        contacts.push_back(c);
      }
    }
  }
  return contacts;
}

World::Coupling World::ComputeCoupling(const WorldState& state,
                                       const Kinematics& kin,
                                       const MatrixXd& ee_jacobian) const {
  Coupling c;
  const Vector3d handle = object_.HandlePosition(state.theta);
  const Vector3d tangent = object_.HandleTangent(state.theta);
  const Vector3d grip = kin.end_effector.translation;
  Vector6d ee_twist = ee_jacobian * state.qd;
  Vector3d delta = handle - grip;
  c.separation = delta.norm();
  Vector3d force = params_.grasp_stiffness * delta +
                   params_.grasp_damping *
                       (tangent * state.theta_dot - ee_twist.head<3>());
  Vector3d torque = Vector3d::Zero();
  if (params_.yaw_lock) {
    const Vector3d axis = object_.JointAxis();
    Matrix3d target =
        object_.HandleRotation(state.theta) * state.grasp_relative_rotation;
    double yaw_err =
        axis.dot(RotationVector(target * kin.end_effector.rotation.transpose()));
    double handle_rate =
        object_.joint_type == JointType::kRevolute ? state.theta_dot : 0.0;
    double yaw_rate_err = handle_rate - axis.dot(ee_twist.tail<3>());
    torque = axis * (params_.grasp_yaw_stiffness * yaw_err +
                     params_.grasp_yaw_damping * yaw_rate_err);
  }
  c.wrench.head<3>() = force;
  c.wrench.tail<3>() = torque;
  c.force_norm = force.norm();
  c.object_drive = -force.dot(tangent);
  if (object_.joint_type == JointType::kRevolute) {
    c.object_drive -= torque.dot(object_.JointAxis());
  }
  return c;
}

double World::ObjectAcceleration(double theta, double theta_dot,
                                 double drive) const {
  const ObjectModel& o = object_;
  double net = drive - o.viscous_damping * theta_dot -
               o.spring_k * (theta - o.spring_rest);
  if (std::abs(theta_dot) < params_.stiction_deadband) {
    if (std::abs(net) <= o.dry_friction) return 0.0;
    return (net - Sign(net) * o.dry_friction) / o.inertia;
  }
  return (net - Sign(theta_dot) * o.dry_friction) / o.inertia;
}

WorldState World::Step(const WorldState& state,
                       const VectorXd& joint_torques) const {
  const int n = robot_.dof();
  if (joint_torques.size() != n) {
    throw std::invalid_argument("torque vector does not match robot dof");
  }
  if (!joint_torques.allFinite()) {
    throw std::runtime_error("non-finite joint torque: simulation fault");
  }
  const VectorXd limits = robot_.TorqueLimits();
  const VectorXd tau = joint_torques.cwiseMax(-limits).cwiseMin(limits);
  const double h = params_.dt / params_.substeps;
  WorldState next = state;
  for (int i = 0; i < params_.substeps; ++i) next = Integrate(next, tau, h);
  next.last_torque = tau;
  next.ticks = state.ticks + 1;
  next.sim_time = static_cast<double>(next.ticks) * params_.dt;
  return next;
}

WorldState World::Integrate(const WorldState& state, const VectorXd& tau,
                            double dt) const {
  const int n = robot_.dof();
  WorldState next = state;
  Kinematics kin = ForwardKinematics(robot_, state.q);
  MatrixXd ee_jac = EndEffectorJacobian(robot_, kin);

  VectorXd external = VectorXd::Zero(n);
  double object_drive = 0.0;
  next.coupling_force.setZero();
  if (state.grasp_attached) {
    Coupling c = ComputeCoupling(state, kin, ee_jac);
    if (c.force_norm > params_.break_force ||
        c.separation > params_.grasp_tolerance) {
      next.grasp_attached = false;
    } else {
      external += ee_jac.transpose() * c.wrench;
      object_drive = c.object_drive;
      next.coupling_force = c.wrench.head<3>();
    }
  }
  next.object_drive = object_drive;

  next.last_contacts = ContactQuery(state);
  for (const Contact& contact : next.last_contacts) {
    MatrixXd jac = PointJacobian(robot_, kin, contact.link, contact.location);
    external += jac.topRows<3>().transpose() * (-contact.force * contact.normal);
  }

  VectorXd damping(n);
  for (int i = 0; i < n; ++i) damping[i] = robot_.joints[i].damping;
  VectorXd bias = InverseDynamics(robot_, state.q, state.qd,
                                  VectorXd::Zero(n), params_.gravity);
  MatrixXd mass = JointSpaceInertia(robot_, state.q);
  VectorXd qdd = mass.ldlt().solve(tau + external - bias -
                                   damping.cwiseProduct(state.qd));
  next.qd = state.qd + dt * qdd;
  next.q = state.q + dt * next.qd;

  double acc = ObjectAcceleration(state.theta, state.theta_dot, object_drive);
  double theta_dot = state.theta_dot + dt * acc;
  if (object_.dry_friction > 0.0 && state.theta_dot * theta_dot < 0.0) {
    theta_dot = 0.0;
  }
  double theta = state.theta + dt * theta_dot;
  if (theta <= object_.joint_range.first || theta >= object_.joint_range.second) {
    theta = std::clamp(theta, object_.joint_range.first,
                       object_.joint_range.second);
    theta_dot = 0.0;
  }
  next.theta = theta;
  next.theta_dot = theta_dot;
  return next;
}

double World::GraspSeparation(const WorldState& state) const {
  Kinematics kin = ForwardKinematics(robot_, state.q);
  return (kin.end_effector.translation - object_.HandlePosition(state.theta))
      .norm();
}

double World::TotalEnergy(const WorldState& state) const {
  const int n = robot_.dof();
  MatrixXd mass = JointSpaceInertia(robot_, state.q);
  double energy = 0.5 * state.qd.dot(mass * state.qd);
  Kinematics kin = ForwardKinematics(robot_, state.q);
  if (params_.gravity) {
    for (int i = 0; i < n; ++i) {
      Vector3d com = kin.link_frames[i] * robot_.links[i].com;
      energy -= robot_.links[i].mass * robot_.gravity.dot(com);
    }
  }
  const ObjectModel& o = object_;
  energy += 0.5 * o.inertia * state.theta_dot * state.theta_dot +
            0.5 * o.spring_k * (state.theta - o.spring_rest) *
                (state.theta - o.spring_rest);
  if (state.grasp_attached) {
    Vector3d delta =
        o.HandlePosition(state.theta) - kin.end_effector.translation;
    energy += 0.5 * params_.grasp_stiffness * delta.squaredNorm();
    if (params_.yaw_lock) {
      Matrix3d target = o.HandleRotation(state.theta) *
                        state.grasp_relative_rotation;
      double yaw_err = o.JointAxis().dot(
          RotationVector(target * kin.end_effector.rotation.transpose()));
      energy += 0.5 * params_.grasp_yaw_stiffness * yaw_err * yaw_err;
    }
  }
  return energy;
}

}  // namespace swrl
