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

#ifndef SWRL_OBJECT_MODEL_H_
#define SWRL_OBJECT_MODEL_H_

#include <string>
#include <utility>

#include "swrl/spatial.h"

namespace swrl {

enum class JointType { kPrismatic, kRevolute };

enum class ObjectClass { kHandwheelValve, kLeverValve, kDoor, kDrawer };

std::string ToString(ObjectClass c);
// Throws std::invalid_argument on unknown names.
ObjectClass ObjectClassFromString(const std::string& name);
JointType DefaultJointType(ObjectClass c);

// Single-joint articulated object. `joint_frame` is the object's mounting
// frame in the world; its z-axis is the joint axis. `handle_offset` is the
// handle point in joint_frame coordinates at joint value 0.
struct ObjectModel {
  ObjectClass object_class = ObjectClass::kHandwheelValve;
  JointType joint_type = JointType::kRevolute;
  Transform joint_frame;
  Vector3d handle_offset = Vector3d(0.2, 0.0, 0.0);
  std::pair<double, double> joint_range = {-100.0, 100.0};
  double dry_friction = 0.0;
  double viscous_damping = 0.0;
  double spring_k = 0.0;
  double spring_rest = 0.0;
  double inertia = 0.05;
  // +1 opens along +z (counter-clockwise for revolute), -1 the other way.
  double open_sense = 1.0;

  Vector3d JointAxis() const { return joint_frame.rotation.col(2); }
  // Radius of the handle circle (revolute) measured orthogonal to the axis.
  double HandleRadius() const { return handle_offset.head<2>().norm(); }

  Vector3d HandlePosition(double theta) const;
  Matrix3d HandleRotation(double theta) const;
  // d(handle position)/d(theta), world frame.
  Vector3d HandleTangent(double theta) const;

  // Throws std::invalid_argument when invariants are violated.
  void Validate() const;
};

}  // namespace swrl

#endif  // SWRL_OBJECT_MODEL_H_
