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

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "swrl/robot_model.h"
#include "swrl/spatial.h"

namespace swrl {
namespace {

constexpr double kPi = 3.14159265358979323846;

VectorXd RandomQ(const RobotModel& m, std::mt19937_64& rng) {
  VectorXd q(m.dof());
  for (int i = 0; i < m.dof(); ++i) {
    std::uniform_real_distribution<double> u(m.joints[i].q_min + 0.1, m.joints[i].q_max - 0.1);
    q[i] = u(rng);
  }
  return q;
}

// Homogeneous 4x4 chain built with Eigen's own geometry types.
Eigen::Matrix4d Homogeneous(const Transform& t) {
  Eigen::Matrix4d h = Eigen::Matrix4d::Identity();
  h.topLeftCorner<3, 3>() = t.rotation;
  h.topRightCorner<3, 1>() = t.translation;
  return h;
}

Eigen::Matrix4d ChainOracle(const RobotModel& m, const VectorXd& q) {
  Eigen::Matrix4d h = Homogeneous(m.base);
  for (int i = 0; i < m.dof(); ++i) {
    Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
    rot.topLeftCorner<3, 3>() = Eigen::AngleAxisd(q[i], m.joints[i].axis.normalized()).toRotationMatrix();
    h = h * Homogeneous(m.joints[i].offset) * rot;
  }
  return h * Homogeneous(m.tool);
}

TEST(ForwardKinematics, StraightTwoLink) {
  const RobotModel m = MakePlanarArm({1.0, 1.0}, {1.0, 1.0});
  const Kinematics k = ForwardKinematics(m, VectorXd::Zero(2));
  EXPECT_NEAR((k.end_effector.translation - Vector3d(2, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(ForwardKinematics, RotatedTwoLink) {
  const RobotModel m = MakePlanarArm({1.0, 1.0}, {1.0, 1.0});
  const Kinematics k = ForwardKinematics(m, Eigen::Vector2d(kPi / 2, 0.0));
  EXPECT_NEAR((k.end_effector.translation - Vector3d(0, 2, 0)).norm(), 0.0, 1e-12);
}

TEST(ForwardKinematics, SevenDofMatchesChainProduct) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const VectorXd q = RandomQ(m, rng);
    const Kinematics k = ForwardKinematics(m, q);
    const Eigen::Matrix4d oracle = ChainOracle(m, q);
    EXPECT_LT((k.end_effector.rotation - oracle.topLeftCorner<3, 3>()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((k.end_effector.translation - oracle.topRightCorner<3, 1>()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(IsRotation(k.end_effector.rotation));
  }
}

TEST(ForwardKinematics, RejectsWrongDimension) {
  EXPECT_THROW(ForwardKinematics(MakeFrankaLikeArm(), VectorXd::Zero(3)), std::invalid_argument);
}

// Central differences of position and of orientation (rotation vector of
// R(q+h) R(q-h)^T).
MatrixXd FiniteDifferenceJacobian(const RobotModel& m, const VectorXd& q, double h) {
  MatrixXd j(6, m.dof());
  for (int i = 0; i < m.dof(); ++i) {
    VectorXd qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    const Transform tp = ForwardKinematics(m, qp).end_effector;
    const Transform tm = ForwardKinematics(m, qm).end_effector;
    j.block<3, 1>(0, i) = (tp.translation - tm.translation) / (2 * h);
    const Eigen::AngleAxisd aa(Matrix3d(tp.rotation * tm.rotation.transpose()));
    j.block<3, 1>(3, i) = aa.axis() * aa.angle() / (2 * h);
  }
  return j;
}

TEST(Jacobian, MatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (const RobotModel& m : {MakeFrankaLikeArm(), MakePlanarArm({0.4, 0.35, 0.15}, {2, 1.5, 0.6})}) {
    for (int trial = 0; trial < 20; ++trial) {
      const VectorXd q = RandomQ(m, rng);
      const MatrixXd analytic = EndEffectorJacobian(m, ForwardKinematics(m, q));
      const MatrixXd numeric = FiniteDifferenceJacobian(m, q, 1e-6);
      for (int c = 0; c < m.dof(); ++c) {
        const double scale = std::max(analytic.col(c).norm(), 1e-3);
        EXPECT_LT((analytic.col(c) - numeric.col(c)).norm() / scale, 1e-5) << m.name << " column " << c;
      }
    }
  }
}

TEST(Jacobian, TaskFrameRotatesRows) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(8);
  const VectorXd q = RandomQ(m, rng);
  Transform frame;
  frame.rotation = RotationFromRpy(Vector3d(0.3, -0.7, 1.1));
  frame.translation = Vector3d(0.4, 0.1, 0.3);
  const JacobianBundle b = ComputeJacobianBundle(m, q, frame);
  const MatrixXd world = EndEffectorJacobian(m, ForwardKinematics(m, q));
  EXPECT_LT((frame.rotation * b.jacobian.topRows<3>() - world.topRows<3>()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((frame.rotation * b.jacobian.bottomRows<3>() - world.bottomRows<3>()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(JointInertia, SymmetricPositiveDefinite) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const MatrixXd mm = JointSpaceInertia(m, RandomQ(m, rng));
    EXPECT_LT((mm - mm.transpose()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixXd>(mm).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(JointInertia, PointMassPendulum) {
  const double mass = 1.7, len = 0.8;
  const RobotModel m = MakePlanarArm({len}, {mass});
  const MatrixXd mm = JointSpaceInertia(m, VectorXd::Constant(1, 0.4));
  EXPECT_NEAR(mm(0, 0), mass * len * len + m.links[0].inertia(2, 2), 1e-12);
}

// Kinetic energy from finite differences of link com positions and
// orientations over a short time step; d^T M d = 2 KE.
double KineticEnergyOracle(const RobotModel& m, const VectorXd& q, const VectorXd& qd) {
  const double h = 1e-6;
  const Kinematics kp = ForwardKinematics(m, q + h * qd);
  const Kinematics km = ForwardKinematics(m, q - h * qd);
  double ke = 0.0;
  for (int i = 0; i < m.dof(); ++i) {
    const LinkInertial& l = m.links[i];
    const Vector3d cp = kp.link_frames[i] * l.com;
    const Vector3d cm = km.link_frames[i] * l.com;
    const Vector3d v = (cp - cm) / (2 * h);
    const Eigen::AngleAxisd aa(Matrix3d(kp.link_frames[i].rotation * km.link_frames[i].rotation.transpose()));
    const Vector3d w_world = aa.axis() * aa.angle() / (2 * h);
    const Matrix3d r = ForwardKinematics(m, q).link_frames[i].rotation;
    const Vector3d w_body = r.transpose() * w_world;
    ke += 0.5 * l.mass * v.squaredNorm() + 0.5 * w_body.dot(l.inertia * w_body);
  }
  return ke;
}

TEST(JointInertia, MatchesKineticEnergyOracle) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const RobotModel& m : {MakePlanarArm({1.0, 0.7}, {1.2, 0.8}), MakeFrankaLikeArm()}) {
    const VectorXd q = RandomQ(m, rng);
    const MatrixXd mm = JointSpaceInertia(m, q);
    for (int trial = 0; trial < 20; ++trial) {
      VectorXd d(m.dof());
      for (int i = 0; i < m.dof(); ++i) d[i] = n(rng);
      const double quad = d.dot(mm * d);
      EXPECT_NEAR(quad, 2.0 * KineticEnergyOracle(m, q, d), 1e-6 * std::max(1.0, quad)) << m.name;
    }
  }
}

TEST(InverseDynamics, InertialTermMatchesJointInertia) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(4);
  const VectorXd q = RandomQ(m, rng);
  const MatrixXd mm = JointSpaceInertia(m, q);
  for (int i = 0; i < m.dof(); ++i) {
    const VectorXd col = InverseDynamics(m, q, VectorXd::Zero(m.dof()), VectorXd::Unit(m.dof(), i), false);
    EXPECT_LT((col - mm.col(i)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(TaskInertia, OneDofTangentialCoordinate) {
  const double mass = 2.5, len = 0.6;
  RobotModel m = MakePlanarArm({len}, {mass});
  m.links[0].inertia = Matrix3d::Identity() * 1e-15;  // point mass
  const JacobianBundle b = ComputeJacobianBundle(m, VectorXd::Zero(1), Transform::Identity());
  const MatrixXd j = b.jacobian.row(kY);  // tip tangent at q = 0
  ASSERT_NEAR(j(0, 0), len, 1e-12);
  const MatrixXd pinv = DampedPseudoInverse(j);
  const MatrixXd lambda = pinv.transpose() * b.joint_inertia * pinv;
  EXPECT_NEAR(lambda(0, 0), mass, 1e-9);
}

TEST(TaskInertia, OneDofFullTaskClosedForm) {
  // J = [0 l 0 0 0 1]^T at q = 0, so J+ = J^T / (l^2 + 1).
  const double mass = 2.5, len = 0.6;
  const RobotModel m = MakePlanarArm({len}, {mass});
  const JacobianBundle b = ComputeJacobianBundle(m, VectorXd::Zero(1), Transform::Identity());
  const double inertia = mass * len * len + m.links[0].inertia(2, 2);
  const double s = len * len + 1.0;
  const Matrix6d expected = inertia * (b.jacobian * b.jacobian.transpose()) / (s * s);
  EXPECT_LT((b.task_inertia - expected).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(TaskInertia, SymmetricPositiveSemidefinite) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const JacobianBundle b = ComputeJacobianBundle(m, RandomQ(m, rng), Transform::Identity());
    EXPECT_LT((b.task_inertia - b.task_inertia.transpose()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix6d>(b.task_inertia).eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(PseudoInverse, RightInverseAwayFromSingularity) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const MatrixXd j = EndEffectorJacobian(m, ForwardKinematics(m, RandomQ(m, rng)));
    const double smin = Eigen::JacobiSVD<MatrixXd>(j).singularValues().minCoeff();
    if (smin <= 10 * kDefaultPinvDamping) continue;
    ++checked;
    EXPECT_LT((j * DampedPseudoInverse(j) - Matrix6d::Identity()).cwiseAbs().maxCoeff(), 1e-6);
  }
  EXPECT_GT(checked, 10);
}

TEST(PseudoInverse, BoundedAtSingularity) {
  const RobotModel m = MakePlanarArm({1.0, 1.0}, {1.0, 1.0});
  for (double q2 : {0.0, 1e-9, 1e-4, 1e-2, 0.1}) {
    const MatrixXd j = EndEffectorJacobian(m, ForwardKinematics(m, Eigen::Vector2d(0.3, q2)));
    const double norm = Eigen::JacobiSVD<MatrixXd>(DampedPseudoInverse(j)).singularValues()(0);
    EXPECT_LE(norm, 1.0 / (2 * kDefaultPinvDamping) + 1e-9);
    EXPECT_TRUE(DampedPseudoInverse(j).allFinite());
  }
}

TEST(Manipulability, TwoLinkAnalytic) {
  const RobotModel m = MakePlanarArm({1.0, 1.0}, {1.0, 1.0});
  const MatrixXd j = EndEffectorJacobian(m, ForwardKinematics(m, Eigen::Vector2d(0.2, kPi / 2)));
  EXPECT_NEAR(Manipulability(j.topRows<2>()), 1.0, 1e-9);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double l1 = 0.3 + 0.1 * trial, l2 = 0.9 - 0.02 * trial;
    const RobotModel a = MakePlanarArm({l1, l2}, {1.0, 1.0});
    const Eigen::Vector2d q(u(rng), u(rng));
    const MatrixXd ja = EndEffectorJacobian(a, ForwardKinematics(a, q));
    EXPECT_NEAR(Manipulability(ja.topRows<2>()), l1 * l2 * std::abs(std::sin(q[1])), 1e-9);
  }
}

TEST(Manipulability, ZeroAndOrthonormal) {
  EXPECT_EQ(Manipulability(MatrixXd::Zero(6, 7)), 0.0);
  const Matrix6d q = Eigen::HouseholderQR<Matrix6d>(Matrix6d::Random()).householderQ();
  EXPECT_NEAR(Manipulability(q), 1.0, 1e-9);
  EXPECT_GE(Manipulability(MatrixXd::Zero(3, 3)), 0.0);
}

TEST(Manipulability, InvariantUnderFrameRotation) {
  const RobotModel m = MakeFrankaLikeArm();
  std::mt19937_64 rng(1);
  const VectorXd q = RandomQ(m, rng);
  const double a = ComputeJacobianBundle(m, q, Transform::Identity()).manipulability;
  Transform frame;
  frame.rotation = RotationFromRpy(Vector3d(1.0, 0.2, -2.0));
  const double b = ComputeJacobianBundle(m, q, frame).manipulability;
  EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, a));
}

TEST(Spatial, RotationHelpers) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector3d rpy(u(rng), u(rng), u(rng));
    const Matrix3d r = RotationFromRpy(rpy);
    EXPECT_TRUE(IsRotation(r));
    EXPECT_LT((RpyFromRotation(r) - rpy).norm(), 1e-9);
    const Vector3d v = RotationVector(r);
    EXPECT_LT((AxisAngleRotation(v.normalized(), v.norm()) - r).cwiseAbs().maxCoeff(), 1e-9);
  }
  Transform t;
  t.rotation = RotZ(0.4) * RotX(-0.3);
  t.translation = Vector3d(1, 2, 3);
  const Transform id = t * t.Inverse();
  EXPECT_LT((id.rotation - Matrix3d::Identity()).norm(), 1e-12);
  EXPECT_LT(id.translation.norm(), 1e-12);
  EXPECT_NEAR(WrapAngle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(WrapAngle(-kPi), kPi, 1e-12);
}

}  // namespace
}  // namespace swrl
