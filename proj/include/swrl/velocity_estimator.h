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

#ifndef SWRL_VELOCITY_ESTIMATOR_H_
#define SWRL_VELOCITY_ESTIMATOR_H_

#include <optional>
#include <span>

#include "swrl/object_model.h"
#include "swrl/spatial.h"

namespace swrl {

struct VelocityEstimate {
  double value = 0.0;  // rad/s about, or m/s along, +z of the object frame
  bool cold = true;    // fewer than two samples seen
};

// Object joint velocity from the gripper position expressed in the object
// frame, sampled at a fixed period. Revolute objects use the azimuth of the
// x-y projection, prismatic objects the z coordinate. First-order low-pass.
class VelocityEstimator {
 public:
  VelocityEstimator(JointType type, double sample_period,
                    double filter_gain = 0.5);

  void Reset();
  VelocityEstimate Update(const Vector3d& point_in_object_frame);
  VelocityEstimate current() const { return estimate_; }

 private:
  JointType type_;
  double period_;
  double gain_;
  std::optional<double> last_coordinate_;
  VelocityEstimate estimate_;
};

// Batch form over a pose history (oldest first).
VelocityEstimate EstimateObjectVelocity(std::span<const Vector3d> history,
                                        JointType type, double sample_period,
                                        double filter_gain = 0.5);

}  // namespace swrl

#endif  // SWRL_VELOCITY_ESTIMATOR_H_
