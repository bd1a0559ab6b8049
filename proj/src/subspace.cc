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

#include "swrl/subspace.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace swrl {

ObjectFrame BuildObjectFrame(const ObjectModel& object, double theta) {
  const Vector3d z = object.JointAxis();
  const Vector3d origin = object.joint_frame.translation;
  Vector3d radial = object.HandlePosition(theta) - origin;
  radial -= z * z.dot(radial);
  Vector3d x;
  if (radial.norm() >= 1e-3) {
    x = radial.normalized();
  } else if (object.joint_type == JointType::kRevolute) {
    throw std::invalid_argument(
        "handle lies on the joint axis; object frame x-axis undefined");
  } else {
    x = object.joint_frame.rotation.col(0);
  }
  Vector3d y = z.cross(x);
  // Gram-Schmidt keeps the frame orthonormal to machine precision.
  x = y.cross(z).normalized();
  y = z.cross(x).normalized();
  ObjectFrame frame;
  frame.pose.rotation.col(0) = x;
  frame.pose.rotation.col(1) = y;
  frame.pose.rotation.col(2) = z.normalized();
  frame.pose.translation = origin;
  return frame;
}

std::string ToString(GraspConvention g) {
  return g == GraspConvention::kRigid ? "rigid" : "pin";
}

GraspConvention GraspConventionFromString(const std::string& name) {
  if (name == "rigid") return GraspConvention::kRigid;
  if (name == "pin") return GraspConvention::kPin;
  throw std::invalid_argument("unknown grasp convention '" + name + "'");
}

Matrix6d SubspaceDecomposition::Selection() const {
  Matrix6d s = Matrix6d::Zero();
  for (int i : geometric) s(i, i) = 1.0;
  for (int i : redundant) s(i, i) = 1.0;
  return s;
}

bool SubspaceDecomposition::IsMotion(int axis) const {
  return std::find(kinematic.begin(), kinematic.end(), axis) ==
         kinematic.end();
}

SubspaceDecomposition Decompose(const ObjectModel& object,
                                GraspConvention grasp,
                                const DecompositionOverride& overrides) {
  SubspaceDecomposition d;
  const bool pin = grasp == GraspConvention::kPin;
  if (object.joint_type == JointType::kRevolute) {
    d.kinematic = {kX, kY};
    d.geometric = pin ? std::vector<int>{kZ, kRoll, kPitch}
                      : std::vector<int>{kZ, kYaw};
  } else {
    d.kinematic = {kZ};
    d.geometric = pin ? std::vector<int>{kX, kY, kRoll, kPitch}
                      : std::vector<int>{kX, kY, kYaw};
  }
  if (overrides.kinematic) d.kinematic = *overrides.kinematic;
  if (overrides.geometric) d.geometric = *overrides.geometric;

  std::array<int, kTaskDim> owner{};
  owner.fill(0);
  auto claim = [&owner](const std::vector<int>& set, const char* name) {
    for (int i : set) {
      if (i < 0 || i >= kTaskDim) {
        throw std::invalid_argument(std::string(name) + " index out of range");
      }
      if (owner[i]++ > 0) {
        throw std::invalid_argument(std::string(name) + " overlaps another subspace at " +
                                    AxisName(i));
      }
    }
  };
  claim(d.kinematic, "kinematic subspace");
  claim(d.geometric, "geometric subspace");
  if (overrides.redundant) {
    d.redundant = *overrides.redundant;
    claim(d.redundant, "redundant subspace");
    for (int i = 0; i < kTaskDim; ++i) {
      if (owner[i] == 0) {
        throw std::invalid_argument("subspaces do not cover axis " + AxisName(i));
      }
    }
  } else {
    d.redundant.clear();
    for (int i = 0; i < kTaskDim; ++i) {
      if (owner[i] == 0) d.redundant.push_back(i);
    }
  }
  std::sort(d.kinematic.begin(), d.kinematic.end());
  std::sort(d.geometric.begin(), d.geometric.end());
  std::sort(d.redundant.begin(), d.redundant.end());
  return d;
}

Vector6d ForceDirection(const ObjectModel& object,
                        const Vector3d& grip_in_object_frame) {
  Vector6d dir = Vector6d::Zero();
  if (object.joint_type == JointType::kPrismatic) {
    dir[kZ] = object.open_sense;
    return dir;
  }
  Vector3d r(grip_in_object_frame.x(), grip_in_object_frame.y(), 0.0);
  Vector3d tangent = Vector3d(0.0, 0.0, object.open_sense).cross(r);
  double norm = tangent.norm();
  if (norm < 1e-9) {
    throw std::invalid_argument("grip point on the joint axis; tangent undefined");
  }
  dir.head<3>() = tangent / norm;
  return dir;
}

std::string AxisName(int axis) {
  static const char* kNames[kTaskDim] = {"x", "y", "z", "roll", "pitch", "yaw"};
  if (axis < 0 || axis >= kTaskDim) return "?";
  return kNames[axis];
}

int AxisFromName(const std::string& name) {
  if (name == "x") return kX;
  if (name == "y") return kY;
  if (name == "z") return kZ;
  if (name == "roll" || name == "gamma") return kRoll;
  if (name == "pitch" || name == "beta") return kPitch;
  if (name == "yaw" || name == "alpha") return kYaw;
  throw std::invalid_argument("unknown task axis '" + name + "'");
}

}  // namespace swrl
