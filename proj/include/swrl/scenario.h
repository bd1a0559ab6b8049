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

#ifndef SWRL_SCENARIO_H_
#define SWRL_SCENARIO_H_

#include <cstdint>
#include <vector>

#include "swrl/config.h"
#include "swrl/object_model.h"
#include "swrl/robot_model.h"
#include "swrl/sim_world.h"
#include "swrl/subspace.h"

namespace swrl {

// One concrete case drawn from a ScenarioConfig: object sample, initial
// grasp configuration and everything needed to build a World.
struct Scenario {
  std::uint64_t case_seed = 0;
  int attempts = 1;  // samples drawn until the grasp pose was reachable
  RobotModel robot;
  ObjectModel object;
  std::vector<Obstacle> obstacles;
  WorldParams world;
  GraspConvention grasp = GraspConvention::kPin;
  SubspaceDecomposition subspaces;
  ObjectFrame frame;
  VectorXd q0;
  Transform grasp_pose;  // gripper pose at q0
};

// Seed of the index-th evaluation or training case.
std::uint64_t CaseSeed(std::uint64_t base_seed, std::uint64_t index);

RobotModel BuildRobot(const RobotConfig& config);
ObjectModel BaseObject(const ObjectConfig& config);
std::vector<Obstacle> BuildObstacles(const std::vector<ObstacleConfig>& configs);

// Deterministic sample of pose, size and dynamics within `ranges`. The
// handle azimuth is applied as a rotation of the mounting frame about its own
// axis, so every sample starts at joint value 0. `grasp_yaw` (optional)
// receives the sampled gripper yaw perturbation.
ObjectModel RandomizeScenario(const ObjectModel& base,
                              const RandomizationConfig& ranges,
                              std::uint64_t seed, double* grasp_yaw = nullptr);

// Samples the object and solves for a grasp configuration inside the joint
// limits, resampling deterministically when the pose is unreachable. Throws
// std::runtime_error after 50 failed draws.
Scenario BuildScenario(const ScenarioConfig& config, std::uint64_t case_seed);

}  // namespace swrl

#endif  // SWRL_SCENARIO_H_
