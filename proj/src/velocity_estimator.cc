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

#include "swrl/velocity_estimator.h"

#include <cmath>
#include <stdexcept>

namespace swrl {

VelocityEstimator::VelocityEstimator(JointType type, double sample_period,
                                     double filter_gain)
    : type_(type), period_(sample_period), gain_(filter_gain) {
  if (!(period_ > 0.0)) throw std::invalid_argument("sample period must be > 0");
  if (!(gain_ > 0.0 && gain_ <= 1.0)) {
    throw std::invalid_argument("filter gain must lie in (0, 1]");
  }
}

void VelocityEstimator::Reset() {
  last_coordinate_.reset();
  estimate_ = {};
}

VelocityEstimate VelocityEstimator::Update(const Vector3d& p) {
  double coordinate = type_ == JointType::kRevolute ? std::atan2(p.y(), p.x())
                                                    : p.z();
  if (last_coordinate_) {
    double delta = coordinate - *last_coordinate_;
    if (type_ == JointType::kRevolute) delta = WrapAngle(delta);
    double raw = delta / period_;
    // The first difference seeds the filter.
    estimate_.value = estimate_.cold ? raw : estimate_.value + gain_ * (raw - estimate_.value);
    estimate_.cold = false;
  }
  last_coordinate_ = coordinate;
  return estimate_;
}

VelocityEstimate EstimateObjectVelocity(std::span<const Vector3d> history,
                                        JointType type, double sample_period,
                                        double filter_gain) {
  VelocityEstimator estimator(type, sample_period, filter_gain);
  for (const Vector3d& p : history) estimator.Update(p);
  return estimator.current();
}

}  // namespace swrl
