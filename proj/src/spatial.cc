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

#include "swrl/spatial.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swrl {

Transform Transform::FromTranslation(const Vector3d& t) {
  Transform out;
  out.translation = t;
  return out;
}

Transform Transform::FromRotation(const Matrix3d& r) {
  Transform out;
  out.rotation = r;
  return out;
}

Transform Transform::operator*(const Transform& other) const {
  Transform out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

Vector3d Transform::operator*(const Vector3d& point) const {
  return rotation * point + translation;
}

Transform Transform::Inverse() const {
  Transform out;
  out.rotation = rotation.transpose();
  out.translation = -(out.rotation * translation);
  return out;
}

Eigen::Matrix<double, 12, 1> Transform::Flatten() const {
  Eigen::Matrix<double, 12, 1> out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out[3 * r + c] = rotation(r, c);
  }
  out.tail<3>() = translation;
  return out;
}

bool IsRotation(const Matrix3d& r, double tol) {
  double ortho = (r.transpose() * r - Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho < tol && std::abs(r.determinant() - 1.0) < tol;
}

Matrix3d AxisAngleRotation(const Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Matrix3d RotX(double angle) { return AxisAngleRotation(Vector3d::UnitX(), angle); }
Matrix3d RotY(double angle) { return AxisAngleRotation(Vector3d::UnitY(), angle); }
Matrix3d RotZ(double angle) { return AxisAngleRotation(Vector3d::UnitZ(), angle); }

Vector3d RotationVector(const Matrix3d& r) {
  Eigen::AngleAxisd aa(r);
  return aa.axis() * aa.angle();
}

Matrix3d RotationFromRpy(const Vector3d& rpy) {
  return RotZ(rpy[2]) * RotY(rpy[1]) * RotX(rpy[0]);
}

Vector3d RpyFromRotation(const Matrix3d& r) {
  // ZYX decomposition; pitch limited to [-pi/2, pi/2].
  double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  double roll = std::atan2(r(2, 1), r(2, 2));
  double yaw = std::atan2(r(1, 0), r(0, 0));
  return {roll, pitch, yaw};
}

Vector3d RpyRatesToAngularVelocity(const Vector3d& rpy, const Vector3d& rates) {
  Matrix3d rz = RotZ(rpy[2]);
  Matrix3d rzy = rz * RotY(rpy[1]);
  return Vector3d::UnitZ() * rates[2] + rz.col(1) * rates[1] +
         rzy.col(0) * rates[0];
}

Matrix3d Orthonormalize(const Matrix3d& r) {
  Eigen::JacobiSVD<Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3d out = svd.matrixU() * svd.matrixV().transpose();
  if (out.determinant() < 0) {
    Matrix3d u = svd.matrixU();
    u.col(2) *= -1.0;
    out = u * svd.matrixV().transpose();
  }
  return out;
}

double WrapAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::remainder(angle, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

}  // namespace swrl
