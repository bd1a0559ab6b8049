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

#ifndef SWRL_SPATIAL_H_
#define SWRL_SPATIAL_H_

#include <Eigen/Dense>

namespace swrl {

using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

// Task-space coordinate indices, positions first then roll-pitch-yaw.
enum TaskAxis : int { kX = 0, kY = 1, kZ = 2, kRoll = 3, kPitch = 4, kYaw = 5 };
inline constexpr int kTaskDim = 6;

// Rigid transform. Maps points of the child frame into the parent frame.
struct Transform {
  Matrix3d rotation = Matrix3d::Identity();
  Vector3d translation = Vector3d::Zero();

  static Transform Identity() { return Transform{}; }
  static Transform FromTranslation(const Vector3d& t);
  static Transform FromRotation(const Matrix3d& r);

  Transform operator*(const Transform& other) const;
  Vector3d operator*(const Vector3d& point) const;
  Transform Inverse() const;

  // Row-major 3x3 rotation followed by translation (12 values).
  Eigen::Matrix<double, 12, 1> Flatten() const;
};

// True when rotation is orthonormal with det = +1 within tol.
bool IsRotation(const Matrix3d& r, double tol = 1e-9);

// Rotation of `angle` radians about unit `axis`.
Matrix3d AxisAngleRotation(const Vector3d& axis, double angle);
Matrix3d RotX(double angle);
Matrix3d RotY(double angle);
Matrix3d RotZ(double angle);

// Rotation vector (axis * angle) of r, angle in [0, pi].
Vector3d RotationVector(const Matrix3d& r);

// R = Rz(yaw) Ry(pitch) Rx(roll); rpy = (roll, pitch, yaw).
Matrix3d RotationFromRpy(const Vector3d& rpy);
Vector3d RpyFromRotation(const Matrix3d& r);

// Angular velocity produced by roll-pitch-yaw rates at attitude rpy.
Vector3d RpyRatesToAngularVelocity(const Vector3d& rpy, const Vector3d& rates);

// Re-orthonormalizes a nearly orthonormal matrix (polar projection).
Matrix3d Orthonormalize(const Matrix3d& r);

// Wraps an angle to (-pi, pi].
double WrapAngle(double angle);

}  // namespace swrl

#endif  // SWRL_SPATIAL_H_
