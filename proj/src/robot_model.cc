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

#include "swrl/robot_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swrl {
namespace {

constexpr double kPi = std::numbers::pi;

// Inertia about a point displaced by d from the center of mass.
Matrix3d ParallelAxis(double mass, const Vector3d& d) {
  return mass * (d.squaredNorm() * Matrix3d::Identity() - d * d.transpose());
}

Transform ModifiedDh(double a, double d, double alpha) {
  return Transform::FromRotation(RotX(alpha)) *
         Transform::FromTranslation(Vector3d(a, 0.0, d));
}

void CheckDof(const RobotModel& model, const VectorXd& v, const char* what) {
  if (v.size() != model.dof()) {
    throw std::invalid_argument(std::string(what) + " has size " +
                                std::to_string(v.size()) + ", model dof is " +
                                std::to_string(model.dof()));
  }
}

}  // namespace

VectorXd RobotModel::LowerLimits() const {
  VectorXd out(dof());
  for (int i = 0; i < dof(); ++i) out[i] = joints[i].q_min;
  return out;
}

VectorXd RobotModel::UpperLimits() const {
  VectorXd out(dof());
  for (int i = 0; i < dof(); ++i) out[i] = joints[i].q_max;
  return out;
}

VectorXd RobotModel::TorqueLimits() const {
  VectorXd out(dof());
  for (int i = 0; i < dof(); ++i) out[i] = joints[i].torque_limit;
  return out;
}

void RobotModel::Validate() const {
  if (joints.empty()) throw std::invalid_argument("robot model has no joints");
  if (links.size() != joints.size()) {
    throw std::invalid_argument("robot model needs one link per joint");
  }
  for (int i = 0; i < dof(); ++i) {
    const JointSpec& j = joints[i];
    const std::string tag = "joint " + std::to_string(i);
    if (!(j.q_min < j.q_max)) throw std::invalid_argument(tag + ": q_min >= q_max");
    if (std::abs(j.axis.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument(tag + ": axis is not unit length");
    }
    if (!(j.torque_limit > 0.0)) throw std::invalid_argument(tag + ": torque limit <= 0");
    if (j.damping < 0.0) throw std::invalid_argument(tag + ": negative damping");
    if (!IsRotation(j.offset.rotation)) {
      throw std::invalid_argument(tag + ": offset rotation not orthonormal");
    }
    const LinkInertial& l = links[i];
    if (!(l.mass > 0.0)) throw std::invalid_argument(tag + ": link mass <= 0");
    Eigen::SelfAdjointEigenSolver<Matrix3d> eig(l.inertia);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
      throw std::invalid_argument(tag + ": link inertia not positive definite");
    }
  }
}

RobotModel MakeFrankaLikeArm() {
  RobotModel m;
  m.name = "franka_like_7dof";
  struct Row {
    double a, d, alpha, q_min, q_max, torque;
  };
  const Row dh[7] = {
      {0.0, 0.333, 0.0, -2.8973, 2.8973, 87.0},
      {0.0, 0.0, -kPi / 2, -1.7628, 1.7628, 87.0},
      {0.0, 0.316, kPi / 2, -2.8973, 2.8973, 87.0},
      {0.0825, 0.0, kPi / 2, -3.0718, -0.0698, 87.0},
      {-0.0825, 0.384, -kPi / 2, -2.8973, 2.8973, 12.0},
      {0.0, 0.0, kPi / 2, -0.0175, 3.7525, 12.0},
      {0.088, 0.0, kPi / 2, -2.8973, 2.8973, 12.0},
  };
  struct Inertial {
    double mass;
    Vector3d com;
    Vector3d principal;
    double radius;
  };
  // Link 7 carries the parallel gripper.
  const Inertial in[7] = {
      {4.9707, {0.0039, 0.0021, -0.0476}, {0.7034, 0.7066, 0.0091}, 0.07},
      {0.6469, {-0.0031, -0.0287, 0.0035}, {0.0080, 0.0281, 0.0260}, 0.07},
      {3.2286, {0.0275, 0.0393, -0.0665}, {0.0372, 0.0362, 0.0108}, 0.06},
      {3.5879, {-0.0532, 0.1044, 0.0275}, {0.0259, 0.0196, 0.0283}, 0.06},
      {1.2259, {-0.0120, 0.0411, -0.0384}, {0.0355, 0.0295, 0.0086}, 0.05},
      {1.6666, {0.0601, -0.0141, -0.0105}, {0.0020, 0.0044, 0.0054}, 0.05},
      {1.4655, {0.0100, 0.0100, 0.0790}, {0.0125, 0.0100, 0.0048}, 0.0},
  };
  for (int i = 0; i < 7; ++i) {
    JointSpec j;
    j.offset = ModifiedDh(dh[i].a, dh[i].d, dh[i].alpha);
    j.axis = Vector3d::UnitZ();
    j.q_min = dh[i].q_min;
    j.q_max = dh[i].q_max;
    j.torque_limit = dh[i].torque;
    j.damping = 0.5;
    m.joints.push_back(j);
    LinkInertial l;
    l.mass = in[i].mass;
    l.com = in[i].com;
    l.inertia = in[i].principal.asDiagonal();
    l.capsule_radius = in[i].radius;
    m.links.push_back(l);
  }
  // Flange plus hand; grasp point between the fingertips.
  m.tool = Transform::FromTranslation(Vector3d(0.0, 0.0, 0.107 + 0.1034)) *
           Transform::FromRotation(RotZ(-kPi / 4));
  return m;
}

RobotModel MakePlanarArm(const std::vector<double>& lengths,
                         const std::vector<double>& masses) {
  if (lengths.size() != masses.size() || lengths.empty()) {
    throw std::invalid_argument("planar arm needs matching lengths and masses");
  }
  RobotModel m;
  m.name = "planar_" + std::to_string(lengths.size()) + "dof";
  m.gravity = Vector3d(0.0, 0.0, -9.81);
  for (size_t i = 0; i < lengths.size(); ++i) {
    JointSpec j;
    if (i > 0) j.offset = Transform::FromTranslation(Vector3d(lengths[i - 1], 0, 0));
    j.axis = Vector3d::UnitZ();
    j.q_min = -kPi;
    j.q_max = kPi;
    j.torque_limit = 100.0;
    m.joints.push_back(j);
    LinkInertial l;
    l.mass = masses[i];
    l.com = Vector3d(lengths[i], 0.0, 0.0);
    l.inertia = Matrix3d::Identity() * (1e-4 * masses[i]);
    l.capsule_radius = 0.03;
    m.links.push_back(l);
  }
  m.tool = Transform::FromTranslation(Vector3d(lengths.back(), 0.0, 0.0));
  return m;
}

Kinematics ForwardKinematics(const RobotModel& model, const VectorXd& q) {
  CheckDof(model, q, "q");
  Kinematics kin;
  kin.link_frames.reserve(model.dof());
  kin.joint_axes.reserve(model.dof());
  Transform frame = model.base;
  for (int i = 0; i < model.dof(); ++i) {
    const JointSpec& j = model.joints[i];
    frame = frame * j.offset;
    kin.joint_axes.push_back(frame.rotation * j.axis);
    frame = frame * Transform::FromRotation(AxisAngleRotation(j.axis, q[i]));
    kin.link_frames.push_back(frame);
  }
  kin.end_effector = frame * model.tool;
  return kin;
}

MatrixXd PointJacobian(const RobotModel& model, const Kinematics& kin,
                       int link, const Vector3d& point) {
  MatrixXd jac = MatrixXd::Zero(6, model.dof());
  for (int i = 0; i <= link; ++i) {
    const Vector3d& z = kin.joint_axes[i];
    jac.block<3, 1>(0, i) = z.cross(point - kin.link_frames[i].translation);
    jac.block<3, 1>(3, i) = z;
  }
  return jac;
}

MatrixXd EndEffectorJacobian(const RobotModel& model, const Kinematics& kin) {
  return PointJacobian(model, kin, model.dof() - 1,
                       kin.end_effector.translation);
}

MatrixXd JointSpaceInertia(const RobotModel& model, const VectorXd& q) {
  const int n = model.dof();
  Kinematics kin = ForwardKinematics(model, q);
  MatrixXd mass_matrix = MatrixXd::Zero(n, n);

  // Composite body of links j..n-1, accumulated from the tip.
  double comp_mass = 0.0;
  Vector3d comp_com = Vector3d::Zero();
  Matrix3d comp_inertia = Matrix3d::Zero();  // about comp_com, world axes
  for (int j = n - 1; j >= 0; --j) {
    const LinkInertial& link = model.links[j];
    const Transform& frame = kin.link_frames[j];
    Vector3d com = frame * link.com;
    Matrix3d inertia =
        frame.rotation * link.inertia * frame.rotation.transpose();

    double total = comp_mass + link.mass;
    Vector3d new_com = (comp_mass * comp_com + link.mass * com) / total;
    comp_inertia = comp_inertia + ParallelAxis(comp_mass, comp_com - new_com) +
                   inertia + ParallelAxis(link.mass, com - new_com);
    comp_mass = total;
    comp_com = new_com;

    // Wrench needed to give the composite a unit acceleration of joint j.
    const Vector3d& zj = kin.joint_axes[j];
    const Vector3d& pj = frame.translation;
    Vector3d force = comp_mass * zj.cross(comp_com - pj);
    Vector3d moment = comp_inertia * zj + (comp_com - pj).cross(force);
    for (int i = j; i >= 0; --i) {
      const Vector3d& pi = kin.link_frames[i].translation;
      double value = kin.joint_axes[i].dot(moment + (pj - pi).cross(force));
      mass_matrix(i, j) = value;
      mass_matrix(j, i) = value;
    }
  }
  return mass_matrix;
}

VectorXd InverseDynamics(const RobotModel& model, const VectorXd& q,
                         const VectorXd& qd, const VectorXd& qdd,
                         bool with_gravity) {
  CheckDof(model, qd, "qd");
  CheckDof(model, qdd, "qdd");
  const int n = model.dof();
  Kinematics kin = ForwardKinematics(model, q);

  std::vector<Vector3d> force(n), moment(n), com(n);
  Vector3d omega = Vector3d::Zero();
  Vector3d omega_dot = Vector3d::Zero();
  Vector3d accel = with_gravity ? Vector3d(-model.gravity) : Vector3d::Zero();
  Vector3d prev_origin = model.base.translation;
  for (int i = 0; i < n; ++i) {
    const Transform& frame = kin.link_frames[i];
    const Vector3d& z = kin.joint_axes[i];
    Vector3d d = frame.translation - prev_origin;
    accel += omega_dot.cross(d) + omega.cross(omega.cross(d));
    Vector3d omega_next = omega + z * qd[i];
    omega_dot = omega_dot + z * qdd[i] + omega.cross(z * qd[i]);
    omega = omega_next;

    const LinkInertial& link = model.links[i];
    com[i] = frame * link.com;
    Vector3d r = com[i] - frame.translation;
    Vector3d accel_com = accel + omega_dot.cross(r) + omega.cross(omega.cross(r));
    Matrix3d inertia =
        frame.rotation * link.inertia * frame.rotation.transpose();
    force[i] = link.mass * accel_com;
    moment[i] = inertia * omega_dot + omega.cross(inertia * omega);
    prev_origin = frame.translation;
  }

  VectorXd tau(n);
  Vector3d f_child = Vector3d::Zero();
  Vector3d n_child = Vector3d::Zero();  // about the child joint origin
  Vector3d child_origin = Vector3d::Zero();
  for (int i = n - 1; i >= 0; --i) {
    const Vector3d& p = kin.link_frames[i].translation;
    Vector3d f = force[i] + f_child;
    Vector3d m = moment[i] + (com[i] - p).cross(force[i]) + n_child;
    if (i < n - 1) m += (child_origin - p).cross(f_child);
    tau[i] = kin.joint_axes[i].dot(m);
    f_child = f;
    n_child = m;
    child_origin = p;
  }
  return tau;
}

VectorXd GravityTorque(const RobotModel& model, const VectorXd& q) {
  VectorXd zero = VectorXd::Zero(model.dof());
  return InverseDynamics(model, q, zero, zero, true);
}

MatrixXd DampedPseudoInverse(const MatrixXd& j, double damping) {
  Eigen::JacobiSVD<MatrixXd> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& sigma = svd.singularValues();
  VectorXd inv(sigma.size());
  for (int i = 0; i < sigma.size(); ++i) {
    double s = sigma[i] / damping;
    if (s >= 2.0) {
      inv[i] = 1.0 / sigma[i];
      continue;
    }
    double weight = s > 1.0 ? 1.0 - (s - 1.0) * (s - 1.0) : 1.0;
    inv[i] = sigma[i] / (sigma[i] * sigma[i] + damping * damping * weight);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double Manipulability(const MatrixXd& j) {
  if (j.rows() == 0 || j.rows() > j.cols()) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(j);
  double product = 1.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    product *= svd.singularValues()[i];
  }
  return std::max(0.0, product);
}

JacobianBundle ComputeJacobianBundle(const RobotModel& model,
                                     const VectorXd& q,
                                     const Transform& task_frame,
                                     double damping) {
  Kinematics kin = ForwardKinematics(model, q);
  MatrixXd world = EndEffectorJacobian(model, kin);
  JacobianBundle b;
  b.jacobian.resize(6, model.dof());
  Matrix3d rt = task_frame.rotation.transpose();
  b.jacobian.topRows<3>() = rt * world.topRows<3>();
  b.jacobian.bottomRows<3>() = rt * world.bottomRows<3>();
  b.jacobian_pinv = DampedPseudoInverse(b.jacobian, damping);
  b.joint_inertia = JointSpaceInertia(model, q);
  Matrix6d lambda =
      b.jacobian_pinv.transpose() * b.joint_inertia * b.jacobian_pinv;
  b.task_inertia = 0.5 * (lambda + lambda.transpose());
  b.manipulability = Manipulability(b.jacobian);
  return b;
}

IkResult InverseKinematics(const RobotModel& model, const Transform& target,
                           const VectorXd& q_seed, const IkOptions& options) {
  CheckDof(model, q_seed, "q_seed");
  IkResult result;
  result.q = q_seed;
  const VectorXd lo = model.LowerLimits();
  const VectorXd hi = model.UpperLimits();
  const Eigen::DiagonalMatrix<double, 6> w(options.row_weights);
  for (int it = 0; it < options.max_iterations; ++it) {
    Kinematics kin = ForwardKinematics(model, result.q);
    Vector6d err;
    err.head<3>() = target.translation - kin.end_effector.translation;
    err.tail<3>() = RotationVector(target.rotation *
                                   kin.end_effector.rotation.transpose());
    err = w * err;
    result.residual = err.norm();
    if (result.residual < options.tolerance) {
      result.converged = true;
      return result;
    }
    MatrixXd jac = w * EndEffectorJacobian(model, kin);
    Matrix6d jjt = jac * jac.transpose();
    jjt.diagonal().array() += options.damping * options.damping;
    VectorXd dq = jac.transpose() * jjt.ldlt().solve(err);
    result.q = (result.q + dq).cwiseMax(lo).cwiseMin(hi);
  }
  return result;
}

}  // namespace swrl
