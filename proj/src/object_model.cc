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

#include "swrl/object_model.h"

#include <cmath>
#include <stdexcept>

namespace swrl {

std::string ToString(ObjectClass c) {
  switch (c) {
    case ObjectClass::kHandwheelValve:
      return "handwheel_valve";
    case ObjectClass::kLeverValve:
      return "lever_valve";
    case ObjectClass::kDoor:
      return "door";
    case ObjectClass::kDrawer:
      return "drawer";
  }
  return "unknown";
}

ObjectClass ObjectClassFromString(const std::string& name) {
  if (name == "handwheel_valve" || name == "valve") return ObjectClass::kHandwheelValve;
  if (name == "lever_valve") return ObjectClass::kLeverValve;
  if (name == "door") return ObjectClass::kDoor;
  if (name == "drawer") return ObjectClass::kDrawer;
  throw std::invalid_argument("unknown object class '" + name + "'");
}

JointType DefaultJointType(ObjectClass c) {
  return c == ObjectClass::kDrawer ? JointType::kPrismatic : JointType::kRevolute;
}

Vector3d ObjectModel::HandlePosition(double theta) const {
  if (joint_type == JointType::kRevolute) {
    return joint_frame * (RotZ(theta) * handle_offset);
  }
  return joint_frame * (handle_offset + theta * Vector3d::UnitZ());
}

Matrix3d ObjectModel::HandleRotation(double theta) const {
  if (joint_type == JointType::kRevolute) {
    return joint_frame.rotation * RotZ(theta);
  }
  return joint_frame.rotation;
}

Vector3d ObjectModel::HandleTangent(double theta) const {
  if (joint_type == JointType::kRevolute) {
    return joint_frame.rotation *
           Vector3d::UnitZ().cross(RotZ(theta) * handle_offset);
  }
  return JointAxis();
}

void ObjectModel::Validate() const {
  if (!IsRotation(joint_frame.rotation)) {
    throw std::invalid_argument("object joint frame is not a rotation");
  }
  if (joint_type == JointType::kRevolute && HandleRadius() < 1e-3) {
    throw std::invalid_argument(
        "revolute object handle radius below 1 mm; x-axis undefined");
  }
  if (dry_friction < 0 || viscous_damping < 0 || spring_k < 0) {
    throw std::invalid_argument("object dynamic parameters must be >= 0");
  }
  if (!(inertia > 0)) throw std::invalid_argument("object inertia must be > 0");
  if (!(joint_range.first < joint_range.second)) {
    throw std::invalid_argument("object joint range is empty");
  }
  if (std::abs(std::abs(open_sense) - 1.0) > 1e-12) {
    throw std::invalid_argument("open_sense must be +1 or -1");
  }
}

}  // namespace swrl
