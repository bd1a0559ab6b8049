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

#ifndef SWRL_SUBSPACE_H_
#define SWRL_SUBSPACE_H_

#include <optional>
#include <string>
#include <vector>

#include "swrl/object_model.h"
#include "swrl/spatial.h"

namespace swrl {

// Object-oriented frame {O}: origin on the joint, z along the joint axis,
// x toward the handle (projected orthogonal to z), y = z cross x.
struct ObjectFrame {
  Transform pose;  // {O} in world

  Vector3d ToFrame(const Vector3d& world_point) const {
    return pose.Inverse() * world_point;
  }
  Matrix3d RotationToFrame(const Matrix3d& world_rotation) const {
    return pose.rotation.transpose() * world_rotation;
  }
};

// Frame built from the handle position at joint value `theta`. Throws
// std::invalid_argument for a revolute handle closer than 1 mm to the axis.
ObjectFrame BuildObjectFrame(const ObjectModel& object, double theta = 0.0);

// How the gripper holds the handle. A rigid grasp locks the gripper yaw to
// the handle; a pin grasp (e.g. a free-spinning crank knob) leaves it free.
enum class GraspConvention { kRigid, kPin };

std::string ToString(GraspConvention g);
GraspConvention GraspConventionFromString(const std::string& name);

struct SubspaceDecomposition {
  std::vector<int> kinematic;  // force controlled
  std::vector<int> geometric;  // motion controlled, planned from geometry
  std::vector<int> redundant;  // motion controlled, learned

  // 6x6 diagonal, ones on geometric and redundant indices.
  Matrix6d Selection() const;
  bool IsMotion(int axis) const;
  int redundant_dim() const { return static_cast<int>(redundant.size()); }
};

struct DecompositionOverride {
  std::optional<std::vector<int>> kinematic;
  std::optional<std::vector<int>> geometric;
  std::optional<std::vector<int>> redundant;

  bool empty() const { return !kinematic && !geometric && !redundant; }
};

// Default assignment by joint type and grasp convention, optionally replaced
// by user index lists. The redundant set defaults to the complement.
// Overlapping or incomplete sets throw std::invalid_argument.
SubspaceDecomposition Decompose(const ObjectModel& object,
                                GraspConvention grasp,
                                const DecompositionOverride& overrides = {});

// Unit force direction in {O} (moment rows zero). Prismatic: along z with the
// opening sense. Revolute: (open_sense * z) x r normalized, r being the
// gripper position projected on the x-y plane of {O}.
Vector6d ForceDirection(const ObjectModel& object,
                        const Vector3d& grip_in_object_frame);

std::string AxisName(int axis);
// Accepts "x", "y", "z", "roll"/"gamma", "pitch"/"beta", "yaw"/"alpha".
int AxisFromName(const std::string& name);

}  // namespace swrl

#endif  // SWRL_SUBSPACE_H_
