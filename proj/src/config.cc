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

#include "swrl/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace swrl {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// Reads one JSON object, remembering which keys were consumed so unknown
// keys can be reported.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool Has(const char* key) const { return j_.contains(key); }

  template <typename T>
  void Get(const char* key, T* out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    Read(j_.at(key), Path(key), out);
  }

  void Mark(const char* key) { seen_.insert(key); }

  Reader Child(const char* key) {
    seen_.insert(key);
    return Reader(j_.at(key), Path(key));
  }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(Path(it.key()), "unknown field");
    }
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  static void Read(const json& v, const std::string& path, double* out) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    *out = v.get<double>();
  }
  static void Read(const json& v, const std::string& path, int* out) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    *out = v.get<int>();
  }
  static void Read(const json& v, const std::string& path, std::uint64_t* out) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError(path, "expected a non-negative integer");
    }
    *out = v.get<std::uint64_t>();
  }
  static void Read(const json& v, const std::string& path, bool* out) {
    if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
    *out = v.get<bool>();
  }
  static void Read(const json& v, const std::string& path, std::string* out) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    *out = v.get<std::string>();
  }
  static void Read(const json& v, const std::string& path,
                   std::vector<double>* out) {
    if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
    out->clear();
    for (size_t i = 0; i < v.size(); ++i) {
      double x;
      Read(v[i], path + "[" + std::to_string(i) + "]", &x);
      out->push_back(x);
    }
  }
  static void Read(const json& v, const std::string& path,
                   std::vector<int>* out) {
    if (!v.is_array()) throw ConfigError(path, "expected an array of integers");
    out->clear();
    for (size_t i = 0; i < v.size(); ++i) {
      int x;
      Read(v[i], path + "[" + std::to_string(i) + "]", &x);
      out->push_back(x);
    }
  }
  static void Read(const json& v, const std::string& path, Vector3d* out) {
    std::vector<double> xs;
    Read(v, path, &xs);
    if (xs.size() != 3) throw ConfigError(path, "expected 3 numbers");
    *out = Vector3d(xs[0], xs[1], xs[2]);
  }
  static void Read(const json& v, const std::string& path, Vector6d* out) {
    std::vector<double> xs;
    Read(v, path, &xs);
    if (xs.size() != 6) throw ConfigError(path, "expected 6 numbers");
    for (int i = 0; i < 6; ++i) (*out)[i] = xs[i];
  }
  static void Read(const json& v, const std::string& path, Range* out) {
    std::vector<double> xs;
    Read(v, path, &xs);
    if (xs.size() != 2) throw ConfigError(path, "expected [min, max]");
    if (xs[0] > xs[1]) throw ConfigError(path, "min exceeds max");
    *out = Range{xs[0], xs[1]};
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json Vec(const Vector3d& v) { return json::array({v[0], v[1], v[2]}); }
json Vec(const Vector6d& v) {
  return json::array({v[0], v[1], v[2], v[3], v[4], v[5]});
}
json Rng(const Range& r) { return json::array({r.min, r.max}); }

std::vector<std::string> AxisNames(const std::vector<int>& axes) {
  std::vector<std::string> out;
  for (int a : axes) out.push_back(AxisName(a));
  return out;
}

std::vector<int> ReadAxes(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of axis names");
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_string()) throw ConfigError(p, "expected an axis name");
    try {
      out.push_back(AxisFromName(v[i].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p, e.what());
    }
  }
  return out;
}

void Require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

int MdpConfig::ticks_per_policy_step() const {
  return static_cast<int>(std::lround(1.0 / (policy_rate * sim_dt)));
}

void ScenarioConfig::Validate() const {
  Require(robot.type == "planar" || robot.type == "franka_like", "robot.type",
          "must be \"planar\" or \"franka_like\"");
  if (robot.type == "planar") {
    const size_t n = robot.lengths.size();
    Require(n >= 1, "robot.lengths", "needs at least one link");
    Require(robot.masses.size() == n, "robot.masses", "size must match lengths");
    Require(robot.q_min.size() == n, "robot.q_min", "size must match lengths");
    Require(robot.q_max.size() == n, "robot.q_max", "size must match lengths");
    Require(robot.torque_limits.size() == n, "robot.torque_limits",
            "size must match lengths");
    for (size_t i = 0; i < n; ++i) {
      Require(robot.q_min[i] < robot.q_max[i], "robot.q_min",
              "must be below q_max at joint " + std::to_string(i));
      Require(robot.masses[i] > 0, "robot.masses", "must be positive");
      Require(robot.lengths[i] > 0, "robot.lengths", "must be positive");
      Require(robot.torque_limits[i] > 0, "robot.torque_limits", "must be positive");
    }
  }
  Require(robot.joint_damping >= 0, "robot.joint_damping", "must be >= 0");
  Require(object.open_sense == 1.0 || object.open_sense == -1.0,
          "object.open_sense", "must be +1 or -1");
  Require(object.dry_friction >= 0, "object.dry_friction", "must be >= 0");
  Require(object.damping >= 0, "object.damping", "must be >= 0");
  Require(object.spring_k >= 0, "object.spring_k", "must be >= 0");
  Require(object.inertia > 0, "object.inertia", "must be > 0");
  Require(object.joint_range.min < object.joint_range.max, "object.joint_range",
          "min must be below max");
  Require(randomization.dry_friction.min >= 0, "randomization.dry_friction",
          "must be >= 0");
  Require(randomization.damping.min >= 0, "randomization.damping", "must be >= 0");
  Require(randomization.inertia.min >= 0, "randomization.inertia", "must be >= 0");
  Require(randomization.size.min >= 0, "randomization.size", "must be >= 0");
  for (size_t i = 0; i < obstacles.size(); ++i) {
    const std::string s = obstacles[i].shape;
    Require(s == "halfspace" || s == "box" || s == "capsule",
            "obstacles[" + std::to_string(i) + "].shape",
            "must be halfspace, box or capsule");
  }
  try {
    ObjectModel probe;
    probe.joint_type = DefaultJointType(object.object_class);
    Decompose(probe, object.grasp, decomposition);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("decomposition", e.what());
  }
  try {
    controller.gains.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("controller.kp", e.what());
  }
  Require(controller.max_force > 0, "controller.max_force", "must be > 0");
  Require(controller.pinv_damping > 0, "controller.pinv_damping", "must be > 0");
  Require(world.dt > 0, "world.dt", "must be > 0");
  Require(world.substeps >= 1, "world.substeps", "must be >= 1");
  Require(std::abs(world.dt - mdp.sim_dt) < 1e-15, "world.dt",
          "must equal mdp.sim_dt");
  Require(world.break_force > 0, "world.break_force", "must be > 0");
  Require(world.grasp_tolerance > 0, "world.grasp_tolerance", "must be > 0");
  Require(mdp.sim_dt > 0, "mdp.sim_dt", "must be > 0");
  Require(mdp.policy_rate > 0, "mdp.policy_rate", "must be > 0");
  Require(mdp.ticks_per_policy_step() >= 1 &&
              std::abs(mdp.ticks_per_policy_step() * mdp.sim_dt * mdp.policy_rate - 1.0) < 1e-9,
          "mdp.policy_rate", "policy period must be a whole number of sim steps");
  Require(mdp.window >= 1, "mdp.window", "must be >= 1");
  Require(!mdp.delta_force_set.empty(), "mdp.delta_force_set", "must not be empty");
  Require(mdp.velocity_band.min < mdp.velocity_band.max, "mdp.velocity_band",
          "min must be below max");
  Require(mdp.episode_time > 0, "mdp.episode_time", "must be > 0");
  Require(mdp.accel_limit > 0, "mdp.accel_limit", "must be > 0");
  Require(mdp.velocity_filter_gain > 0 && mdp.velocity_filter_gain <= 1,
          "mdp.velocity_filter_gain", "must lie in (0, 1]");
  Require(manual.force_step > 0, "manual.force_step", "must be > 0");
  Require(manual.joint_limit_margin >= 0, "manual.joint_limit_margin", "must be >= 0");
  Require(learner.feature_mode == "flat" || learner.feature_mode == "recurrent",
          "learner.feature_mode", "must be \"flat\" or \"recurrent\"");
  Require(learner.optimizer == "adam" || learner.optimizer == "sgd",
          "learner.optimizer", "must be \"adam\" or \"sgd\"");
  Require(learner.hidden > 0, "learner.hidden", "must be > 0");
  Require(learner.learning_rate > 0, "learner.learning_rate", "must be > 0");
  Require(learner.batch_size > 0, "learner.batch_size", "must be > 0");
  Require(learner.gamma > 0 && learner.gamma < 1, "learner.gamma", "must lie in (0, 1)");
  Require(learner.polyak > 0 && learner.polyak <= 1, "learner.polyak", "must lie in (0, 1]");
  Require(learner.buffer_capacity > 0, "learner.buffer_capacity", "must be > 0");
  Require(learner.update_every > 0, "learner.update_every", "must be > 0");
  Require(learner.updates_per_step > 0, "learner.updates_per_step", "must be > 0");
  Require(learner.episodes >= 0, "learner.episodes", "must be >= 0");
  Require(learner.bc_epochs >= 0, "learner.bc_epochs", "must be >= 0");
  Require(learner.offline_episodes >= 0, "learner.offline_episodes", "must be >= 0");
  Require(learner.bc_holdout >= 0 && learner.bc_holdout < 1, "learner.bc_holdout",
          "must lie in [0, 1)");
  Require(eval.cases >= 0, "eval.cases", "must be >= 0");
  Require(eval.rmp_clip > 0, "eval.rmp_clip", "must be > 0");
  for (int r : eval.manipulability_rows) {
    Require(r >= 0 && r < kTaskDim, "eval.manipulability_rows", "index out of range");
  }
}

json ToJson(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["seed"] = c.seed;
  j["robot"] = {{"type", c.robot.type},
                {"lengths", c.robot.lengths},
                {"masses", c.robot.masses},
                {"q_min", c.robot.q_min},
                {"q_max", c.robot.q_max},
                {"torque_limits", c.robot.torque_limits},
                {"joint_damping", c.robot.joint_damping},
                {"home", c.robot.home}};
  const ObjectConfig& o = c.object;
  j["object"] = {{"class", ToString(o.object_class)},
                 {"grasp", ToString(o.grasp)},
                 {"position", Vec(o.position)},
                 {"rpy", Vec(o.rpy)},
                 {"handle_offset", Vec(o.handle_offset)},
                 {"joint_range", Rng(o.joint_range)},
                 {"dry_friction", o.dry_friction},
                 {"damping", o.damping},
                 {"spring_k", o.spring_k},
                 {"spring_rest", o.spring_rest},
                 {"inertia", o.inertia},
                 {"open_sense", o.open_sense},
                 {"grasp_rpy", Vec(o.grasp_rpy)},
                 {"grasp_yaw_from_base", o.grasp_yaw_from_base}};
  const RandomizationConfig& r = c.randomization;
  j["randomization"] = {{"offset_x", Rng(r.offset_x)},
                        {"offset_y", Rng(r.offset_y)},
                        {"offset_z", Rng(r.offset_z)},
                        {"yaw", Rng(r.yaw)},
                        {"tilt", Rng(r.tilt)},
                        {"size", Rng(r.size)},
                        {"handle_angle", Rng(r.handle_angle)},
                        {"dry_friction", Rng(r.dry_friction)},
                        {"damping", Rng(r.damping)},
                        {"inertia", Rng(r.inertia)},
                        {"grasp_yaw", Rng(r.grasp_yaw)}};
  j["obstacles"] = json::array();
  for (const ObstacleConfig& ob : c.obstacles) {
    j["obstacles"].push_back({{"shape", ob.shape},
                              {"position", Vec(ob.position)},
                              {"rpy", Vec(ob.rpy)},
                              {"dimensions", Vec(ob.dimensions)},
                              {"attached_to_object", ob.attached_to_object}});
  }
  json d = json::object();
  if (c.decomposition.kinematic) d["kinematic"] = AxisNames(*c.decomposition.kinematic);
  if (c.decomposition.geometric) d["geometric"] = AxisNames(*c.decomposition.geometric);
  if (c.decomposition.redundant) d["redundant"] = AxisNames(*c.decomposition.redundant);
  j["decomposition"] = d;
  j["controller"] = {{"kp", Vec(c.controller.gains.kp)},
                     {"kd", Vec(c.controller.gains.kd)},
                     {"max_force", c.controller.max_force},
                     {"pinv_damping", c.controller.pinv_damping},
                     {"gravity_compensation", c.controller.gravity_compensation}};
  const WorldParams& w = c.world;
  j["world"] = {{"dt", w.dt},
                {"substeps", w.substeps},
                {"gravity", w.gravity},
                {"grasp_stiffness", w.grasp_stiffness},
                {"grasp_damping", w.grasp_damping},
                {"grasp_yaw_stiffness", w.grasp_yaw_stiffness},
                {"grasp_yaw_damping", w.grasp_yaw_damping},
                {"break_force", w.break_force},
                {"grasp_tolerance", w.grasp_tolerance},
                {"contact_stiffness", w.contact_stiffness},
                {"stiction_deadband", w.stiction_deadband}};
  const MdpConfig& m = c.mdp;
  j["mdp"] = {{"sim_dt", m.sim_dt},
              {"policy_rate", m.policy_rate},
              {"window", m.window},
              {"delta_force_set", m.delta_force_set},
              {"velocity_band", Rng(m.velocity_band)},
              {"k1", m.k1},
              {"k2", m.k2},
              {"terminal_reward", m.terminal_reward},
              {"episode_time", m.episode_time},
              {"accel_limit", m.accel_limit},
              {"velocity_filter_gain", m.velocity_filter_gain},
              {"initial_force", m.initial_force}};
  j["manual"] = {{"force_step", c.manual.force_step},
                 {"joint_limit_margin", c.manual.joint_limit_margin}};
  const LearnerConfig& l = c.learner;
  j["learner"] = {{"feature_mode", l.feature_mode},
                  {"hidden", l.hidden},
                  {"optimizer", l.optimizer},
                  {"learning_rate", l.learning_rate},
                  {"momentum", l.momentum},
                  {"batch_size", l.batch_size},
                  {"gamma", l.gamma},
                  {"polyak", l.polyak},
                  {"buffer_capacity", l.buffer_capacity},
                  {"learning_starts", l.learning_starts},
                  {"update_every", l.update_every},
                  {"updates_per_step", l.updates_per_step},
                  {"epsilon_start", l.epsilon_start},
                  {"epsilon_end", l.epsilon_end},
                  {"epsilon_decay_steps", l.epsilon_decay_steps},
                  {"init_entropy_coef", l.init_entropy_coef},
                  {"auto_entropy", l.auto_entropy},
                  {"offline_mixing", l.offline_mixing},
                  {"offline_dataset", l.offline_dataset},
                  {"offline_episodes", l.offline_episodes},
                  {"episodes", l.episodes},
                  {"grad_clip", l.grad_clip},
                  {"bc_epochs", l.bc_epochs},
                  {"bc_holdout", l.bc_holdout}};
  j["eval"] = {{"cases", c.eval.cases},
               {"rmp_clip", c.eval.rmp_clip},
               {"manipulability_rows", c.eval.manipulability_rows},
               {"trace_points", c.eval.trace_points}};
  return j;
}

ScenarioConfig ConfigFromJson(const json& j) {
  ScenarioConfig c;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw ConfigError("preset", "expected a string");
    try {
      c = PresetConfig(j["preset"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("preset", e.what());
    }
  }
  Reader root(j, "");
  std::string ignored;
  root.Get("preset", &ignored);
  root.Get("name", &c.name);
  root.Get("seed", &c.seed);
  if (root.Has("robot")) {
    Reader r = root.Child("robot");
    r.Get("type", &c.robot.type);
    r.Get("lengths", &c.robot.lengths);
    r.Get("masses", &c.robot.masses);
    r.Get("q_min", &c.robot.q_min);
    r.Get("q_max", &c.robot.q_max);
    r.Get("torque_limits", &c.robot.torque_limits);
    r.Get("joint_damping", &c.robot.joint_damping);
    r.Get("home", &c.robot.home);
    r.Finish();
  }
  if (root.Has("object")) {
    Reader r = root.Child("object");
    ObjectConfig& o = c.object;
    std::string name;
    if (r.Has("class")) {
      r.Get("class", &name);
      try {
        o.object_class = ObjectClassFromString(name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(r.Path("class"), e.what());
      }
    }
    if (r.Has("grasp")) {
      r.Get("grasp", &name);
      try {
        o.grasp = GraspConventionFromString(name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(r.Path("grasp"), e.what());
      }
    }
    r.Get("position", &o.position);
    r.Get("rpy", &o.rpy);
    r.Get("handle_offset", &o.handle_offset);
    r.Get("joint_range", &o.joint_range);
    r.Get("dry_friction", &o.dry_friction);
    r.Get("damping", &o.damping);
    r.Get("spring_k", &o.spring_k);
    r.Get("spring_rest", &o.spring_rest);
    r.Get("inertia", &o.inertia);
    r.Get("open_sense", &o.open_sense);
    r.Get("grasp_rpy", &o.grasp_rpy);
    r.Get("grasp_yaw_from_base", &o.grasp_yaw_from_base);
    r.Finish();
  }
  if (root.Has("randomization")) {
    Reader r = root.Child("randomization");
    RandomizationConfig& z = c.randomization;
    r.Get("offset_x", &z.offset_x);
    r.Get("offset_y", &z.offset_y);
    r.Get("offset_z", &z.offset_z);
    r.Get("yaw", &z.yaw);
    r.Get("tilt", &z.tilt);
    r.Get("size", &z.size);
    r.Get("handle_angle", &z.handle_angle);
    r.Get("dry_friction", &z.dry_friction);
    r.Get("damping", &z.damping);
    r.Get("inertia", &z.inertia);
    r.Get("grasp_yaw", &z.grasp_yaw);
    r.Finish();
  }
  if (j.contains("obstacles")) {
    root.Mark("obstacles");
    const json& arr = j.at("obstacles");
    if (!arr.is_array()) throw ConfigError("obstacles", "expected an array");
    c.obstacles.clear();
    for (size_t i = 0; i < arr.size(); ++i) {
      Reader r(arr[i], "obstacles[" + std::to_string(i) + "]");
      ObstacleConfig ob;
      r.Get("shape", &ob.shape);
      r.Get("position", &ob.position);
      r.Get("rpy", &ob.rpy);
      r.Get("dimensions", &ob.dimensions);
      r.Get("attached_to_object", &ob.attached_to_object);
      r.Finish();
      c.obstacles.push_back(ob);
    }
  }
  if (root.Has("decomposition")) {
    Reader r = root.Child("decomposition");
    const json& d = j.at("decomposition");
    DecompositionOverride over;
    for (const char* key : {"kinematic", "geometric", "redundant"}) {
      if (!d.contains(key)) continue;
      std::vector<int> axes = ReadAxes(d.at(key), r.Path(key));
      if (std::string(key) == "kinematic") over.kinematic = axes;
      if (std::string(key) == "geometric") over.geometric = axes;
      if (std::string(key) == "redundant") over.redundant = axes;
      r.Mark(key);
    }
    r.Finish();
    c.decomposition = over;
  }
  if (root.Has("controller")) {
    Reader r = root.Child("controller");
    r.Get("kp", &c.controller.gains.kp);
    r.Get("kd", &c.controller.gains.kd);
    r.Get("max_force", &c.controller.max_force);
    r.Get("pinv_damping", &c.controller.pinv_damping);
    r.Get("gravity_compensation", &c.controller.gravity_compensation);
    r.Finish();
  }
  if (root.Has("world")) {
    Reader r = root.Child("world");
    WorldParams& w = c.world;
    r.Get("dt", &w.dt);
    r.Get("substeps", &w.substeps);
    r.Get("gravity", &w.gravity);
    r.Get("grasp_stiffness", &w.grasp_stiffness);
    r.Get("grasp_damping", &w.grasp_damping);
    r.Get("grasp_yaw_stiffness", &w.grasp_yaw_stiffness);
    r.Get("grasp_yaw_damping", &w.grasp_yaw_damping);
    r.Get("break_force", &w.break_force);
    r.Get("grasp_tolerance", &w.grasp_tolerance);
    r.Get("contact_stiffness", &w.contact_stiffness);
    r.Get("stiction_deadband", &w.stiction_deadband);
    r.Finish();
  }
  if (root.Has("mdp")) {
    Reader r = root.Child("mdp");
    MdpConfig& m = c.mdp;
    r.Get("sim_dt", &m.sim_dt);
    r.Get("policy_rate", &m.policy_rate);
    r.Get("window", &m.window);
    r.Get("delta_force_set", &m.delta_force_set);
    r.Get("velocity_band", &m.velocity_band);
    r.Get("k1", &m.k1);
    r.Get("k2", &m.k2);
    r.Get("terminal_reward", &m.terminal_reward);
    r.Get("episode_time", &m.episode_time);
    r.Get("accel_limit", &m.accel_limit);
    r.Get("velocity_filter_gain", &m.velocity_filter_gain);
    r.Get("initial_force", &m.initial_force);
    r.Finish();
  }
  if (root.Has("manual")) {
    Reader r = root.Child("manual");
    r.Get("force_step", &c.manual.force_step);
    r.Get("joint_limit_margin", &c.manual.joint_limit_margin);
    r.Finish();
  }
  if (root.Has("learner")) {
    Reader r = root.Child("learner");
    LearnerConfig& l = c.learner;
    r.Get("feature_mode", &l.feature_mode);
    r.Get("hidden", &l.hidden);
    r.Get("optimizer", &l.optimizer);
    r.Get("learning_rate", &l.learning_rate);
    r.Get("momentum", &l.momentum);
    r.Get("batch_size", &l.batch_size);
    r.Get("gamma", &l.gamma);
    r.Get("polyak", &l.polyak);
    r.Get("buffer_capacity", &l.buffer_capacity);
    r.Get("learning_starts", &l.learning_starts);
    r.Get("update_every", &l.update_every);
    r.Get("updates_per_step", &l.updates_per_step);
    r.Get("epsilon_start", &l.epsilon_start);
    r.Get("epsilon_end", &l.epsilon_end);
    r.Get("epsilon_decay_steps", &l.epsilon_decay_steps);
    r.Get("init_entropy_coef", &l.init_entropy_coef);
    r.Get("auto_entropy", &l.auto_entropy);
    r.Get("offline_mixing", &l.offline_mixing);
    r.Get("offline_dataset", &l.offline_dataset);
    r.Get("offline_episodes", &l.offline_episodes);
    r.Get("episodes", &l.episodes);
    r.Get("grad_clip", &l.grad_clip);
    r.Get("bc_epochs", &l.bc_epochs);
    r.Get("bc_holdout", &l.bc_holdout);
    r.Finish();
  }
  if (root.Has("eval")) {
    Reader r = root.Child("eval");
    r.Get("cases", &c.eval.cases);
    r.Get("rmp_clip", &c.eval.rmp_clip);
    r.Get("manipulability_rows", &c.eval.manipulability_rows);
    r.Get("trace_points", &c.eval.trace_points);
    r.Finish();
  }
  root.Finish();
  c.Validate();
  return c;
}

ScenarioConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("JSON parse error: ") + e.what());
  }
  return ConfigFromJson(j);
}

void SaveConfig(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << ToJson(config).dump(2) << "\n";
}

std::uint64_t ConfigHash(const ScenarioConfig& config) {
  const std::string text = ToJson(config).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string HexHash(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::string> PresetNames() {
  return {"reduced_valve", "handwheel_valve", "lever_valve", "door", "drawer"};
}

ScenarioConfig PresetConfig(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  if (name == "reduced_valve") {
    // 3-DOF planar arm turning a crank valve through a free-spinning knob:
    // gripper yaw is the redundant coordinate.
    c.object.object_class = ObjectClass::kHandwheelValve;
    c.object.grasp = GraspConvention::kPin;
    c.object.position = Vector3d(0.52, 0.0, 0.0);
    c.object.handle_offset = Vector3d(0.2, 0.0, 0.0);
    c.object.grasp_yaw_from_base = true;
    c.randomization.offset_x = {-0.07, 0.08};
    c.randomization.offset_y = {-0.1, 0.1};
    c.randomization.size = {0.15, 0.25};
    c.randomization.handle_angle = {-kPi, kPi};
    c.randomization.dry_friction = {0.5, 2.5};
    c.randomization.damping = {0.05, 0.3};
    c.randomization.inertia = {0.02, 0.05};
    c.randomization.grasp_yaw = {-0.5, 0.5};
    c.world.gravity = false;
    c.mdp.episode_time = 10.0;
    c.eval.cases = 20;
    c.eval.manipulability_rows = {kX, kY, kYaw};
    c.learner.hidden = 64;
    c.learner.batch_size = 64;
    c.learner.episodes = 150;
    // Short budget: explore less, start learning and track targets sooner.
    c.learner.learning_rate = 1e-3;
    c.learner.polyak = 0.01;
    c.learner.learning_starts = 500;
    c.learner.epsilon_start = 0.3;
    c.learner.epsilon_decay_steps = 10000;
    return c;
  }
  // 7-DOF tasks share the arm and a table plane.
  c.robot.type = "franka_like";
  c.robot.lengths.clear();
  c.robot.masses.clear();
  c.robot.q_min.clear();
  c.robot.q_max.clear();
  c.robot.torque_limits.clear();
  c.robot.home = {0.0, -0.785, 0.0, -2.356, 0.0, 1.571, 0.785};
  c.object.grasp = GraspConvention::kRigid;
  c.eval.manipulability_rows = {0, 1, 2, 3, 4, 5};
  ObstacleConfig table;
  table.shape = "halfspace";
  table.position = Vector3d(0.0, 0.0, 0.0);
  if (name == "handwheel_valve" || name == "lever_valve") {
    const bool lever = name == "lever_valve";
    c.object.object_class = lever ? ObjectClass::kLeverValve
                                  : ObjectClass::kHandwheelValve;
    c.object.position = Vector3d(0.5, 0.0, 0.25);
    c.object.handle_offset = Vector3d(lever ? 0.18 : 0.14, 0.0, 0.0);
    c.object.grasp_rpy = Vector3d(kPi, 0.0, 0.0);
    c.object.open_sense = lever ? -1.0 : 1.0;
    c.randomization.offset_x = {-0.05, 0.05};
    c.randomization.offset_y = {-0.08, 0.08};
    c.randomization.offset_z = {-0.03, 0.05};
    c.randomization.size = lever ? Range{0.14, 0.22} : Range{0.10, 0.18};
    c.randomization.handle_angle = {-kPi, kPi};
    c.randomization.dry_friction = lever ? Range{1.0, 3.0} : Range{0.5, 2.0};
    c.randomization.damping = {0.05, 0.2};
    c.randomization.inertia = {0.02, 0.06};
    c.randomization.grasp_yaw = {-0.3, 0.3};
    c.mdp.velocity_band = {0.7, 0.8};
    c.mdp.episode_time = 20.0;
    c.eval.cases = 120;
    c.obstacles.push_back(table);
  } else if (name == "door") {
    c.object.object_class = ObjectClass::kDoor;
    c.object.position = Vector3d(0.62, 0.25, 0.65);
    c.object.rpy = Vector3d(0.0, 0.0, -kPi / 2);
    c.object.handle_offset = Vector3d(0.38, -0.07, 0.0);
    c.object.joint_range = {-0.05, 1.8};
    c.object.open_sense = -1.0;
    c.object.inertia = 1.2;
    c.object.dry_friction = 1.0;
    c.object.damping = 1.0;
    c.object.grasp_rpy = Vector3d(-kPi / 2, 0.0, 0.0);
    c.randomization.offset_x = {-0.04, 0.04};
    c.randomization.offset_y = {-0.04, 0.04};
    c.randomization.offset_z = {-0.05, 0.05};
    c.randomization.size = {0.34, 0.42};
    c.randomization.dry_friction = {0.5, 2.0};
    c.randomization.damping = {0.5, 1.5};
    c.randomization.inertia = {0.9, 1.5};
    c.mdp.velocity_band = {0.1, 0.15};
    c.mdp.episode_time = 15.0;
    c.eval.cases = 10;
    ObstacleConfig panel;
    panel.shape = "box";
    panel.position = Vector3d(0.21, 0.0, 0.0);
    panel.dimensions = Vector3d(0.2, 0.015, 0.35);
    panel.attached_to_object = true;
    c.obstacles.push_back(table);
    c.obstacles.push_back(panel);
  } else if (name == "drawer") {
    c.object.object_class = ObjectClass::kDrawer;
    c.object.position = Vector3d(0.6, 0.0, 0.65);
    c.object.rpy = Vector3d(0.0, -kPi / 2, 0.0);
    c.object.handle_offset = Vector3d(0.0, 0.0, 0.0);
    c.object.joint_range = {0.0, 0.4};
    c.object.inertia = 2.0;
    c.object.dry_friction = 8.0;
    c.object.damping = 8.0;
    c.object.grasp_rpy = Vector3d(kPi, 0.0, 0.0);
    c.randomization.offset_x = {-0.04, 0.04};
    c.randomization.offset_y = {-0.1, 0.1};
    c.randomization.offset_z = {-0.05, 0.05};
    c.randomization.dry_friction = {5.0, 15.0};
    c.randomization.damping = {5.0, 12.0};
    c.randomization.inertia = {1.5, 3.0};
    c.mdp.velocity_band = {0.4, 0.5};
    c.mdp.episode_time = 20.0;
    c.eval.cases = 10;
    c.obstacles.push_back(table);
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return c;
}

}  // namespace swrl
