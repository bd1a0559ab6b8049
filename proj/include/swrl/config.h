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

#ifndef SWRL_CONFIG_H_
#define SWRL_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "swrl/hybrid_controller.h"
#include "swrl/object_model.h"
#include "swrl/sim_world.h"
#include "swrl/subspace.h"

namespace swrl {

// Raised for unparseable or invalid configuration; `field` is the JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RobotConfig {
  std::string type = "planar";  // "planar" or "franka_like"
  std::vector<double> lengths = {0.40, 0.35, 0.15};
  std::vector<double> masses = {2.0, 1.5, 0.6};
  std::vector<double> q_min = {-3.14159, 0.15, -1.6};
  std::vector<double> q_max = {3.14159, 2.6, 1.6};
  std::vector<double> torque_limits = {80.0, 60.0, 30.0};
  double joint_damping = 0.5;
  std::vector<double> home = {};  // IK seed; empty selects a default
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct RandomizationConfig {
  Range offset_x, offset_y, offset_z;  // added to the object position, m
  Range yaw;                           // object rotation about world z, rad
  Range tilt;                          // object rotation about world x, rad
  Range size;       // handle radius (revolute) or handle offset scale
  Range handle_angle;  // initial handle azimuth about the joint axis, rad
  Range dry_friction, damping, inertia;
  Range grasp_yaw;  // gripper yaw perturbation about the approach axis, rad
};

struct ObjectConfig {
  ObjectClass object_class = ObjectClass::kHandwheelValve;
  GraspConvention grasp = GraspConvention::kPin;
  Vector3d position = Vector3d(0.5, 0.0, 0.0);
  Vector3d rpy = Vector3d::Zero();
  Vector3d handle_offset = Vector3d(0.2, 0.0, 0.0);
  Range joint_range{-100.0, 100.0};
  double dry_friction = 1.0;
  double damping = 0.1;
  double spring_k = 0.0;
  double spring_rest = 0.0;
  double inertia = 0.03;
  double open_sense = 1.0;
  // Gripper orientation in {O} at grasp time (roll, pitch, yaw).
  Vector3d grasp_rpy = Vector3d::Zero();
  // Planar worlds: gripper yaw measured from the base-to-handle direction.
  bool grasp_yaw_from_base = false;
};

struct ObstacleConfig {
  std::string shape = "halfspace";
  Vector3d position = Vector3d::Zero();
  Vector3d rpy = Vector3d::Zero();
  Vector3d dimensions = Vector3d::Ones();
  bool attached_to_object = false;
};

struct MdpConfig {
  double sim_dt = 1e-3;       // 1 kHz controller
  double policy_rate = 100.0;  // Hz
  int window = 10;
  std::vector<double> delta_force_set = {0.1, 0.0, -0.1, 1.0};
  Range velocity_band{0.7, 0.8};
  double k1 = 1.0;
  double k2 = 0.1;
  double terminal_reward = -100.0;
  double episode_time = 20.0;
  double accel_limit = 2.0;
  double velocity_filter_gain = 0.5;
  double initial_force = 0.0;

  int ticks_per_policy_step() const;
};

struct ManualConfig {
  double force_step = 0.1;
  double joint_limit_margin = 0.1;
};

struct LearnerConfig {
  std::string feature_mode = "flat";  // "flat" or "recurrent"
  int hidden = 128;                   // d_feat
  std::string optimizer = "adam";     // "adam" or "sgd"
  double learning_rate = 3e-4;
  double momentum = 0.9;
  int batch_size = 256;
  double gamma = 0.99;
  double polyak = 0.005;
  int buffer_capacity = 100000;
  int learning_starts = 1000;
  int update_every = 1;
  int updates_per_step = 1;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_steps = 20000;
  double init_entropy_coef = 0.1;
  bool auto_entropy = true;
  bool offline_mixing = true;
  std::string offline_dataset;  // path; empty means collect in-process
  int offline_episodes = 20;    // manual episodes collected when no path is given
  int episodes = 200;
  double grad_clip = 10.0;
  int bc_epochs = 30;
  double bc_holdout = 0.2;
};

struct EvalConfig {
  int cases = 120;
  double rmp_clip = 100.0;
  std::vector<int> manipulability_rows = {0, 1, 2, 3, 4, 5};
  int trace_points = 200;
};

struct ScenarioConfig {
  std::string name = "reduced_valve";
  std::uint64_t seed = 7;
  RobotConfig robot;
  ObjectConfig object;
  RandomizationConfig randomization;
  std::vector<ObstacleConfig> obstacles;
  DecompositionOverride decomposition;
  ControllerConfig controller;
  WorldParams world;
  MdpConfig mdp;
  ManualConfig manual;
  LearnerConfig learner;
  EvalConfig eval;

  // Throws ConfigError naming the offending field.
  void Validate() const;
};

nlohmann::json ToJson(const ScenarioConfig& config);
// Missing fields keep their defaults; wrong types or values throw ConfigError.
ScenarioConfig ConfigFromJson(const nlohmann::json& j);
ScenarioConfig LoadConfig(const std::string& path);
void SaveConfig(const ScenarioConfig& config, const std::string& path);

// FNV-1a over the canonical JSON dump.
std::uint64_t ConfigHash(const ScenarioConfig& config);
std::string HexHash(std::uint64_t hash);

// Built-in presets: "reduced_valve" (3-DOF planar crank valve),
// "handwheel_valve", "lever_valve", "door", "drawer" (7-DOF arm).
ScenarioConfig PresetConfig(const std::string& name);
std::vector<std::string> PresetNames();

}  // namespace swrl

#endif  // SWRL_CONFIG_H_
