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

// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "swrl/baselines.h"
#include "swrl/config.h"
#include "swrl/env.h"
#include "swrl/experiment.h"
#include "swrl/hybrid_controller.h"
#include "swrl/io.h"
#include "swrl/learners.h"
#include "swrl/nn.h"
#include "swrl/policy.h"
#include "swrl/replay.h"
#include "swrl/robot_model.h"
#include "swrl/scenario.h"
#include "swrl/sim_world.h"
#include "swrl/training.h"

namespace swrl {
namespace {

namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::string detail;
  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string Fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

VectorXd RandomQ(const RobotModel& m, std::mt19937_64& rng) {
  VectorXd q(m.dof());
  for (int i = 0; i < m.dof(); ++i) {
    std::uniform_real_distribution<double> u(m.joints[i].q_min + 0.1, m.joints[i].q_max - 0.1);
    q[i] = u(rng);
  }
  return q;
}

MatrixXd Gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

// 1. Kinematics and dynamics against independent oracles.
Outcome KinematicsAndDynamics() {
  Outcome o;
  const RobotModel franka = MakeFrankaLikeArm();
  std::mt19937_64 rng(5);
  double worst_j = 0.0, worst_sym = 0.0, min_eig = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd q = RandomQ(franka, rng);
    const MatrixXd analytic = EndEffectorJacobian(franka, ForwardKinematics(franka, q));
    const double h = 1e-6;
    for (int i = 0; i < franka.dof(); ++i) {
      VectorXd qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      const Transform tp = ForwardKinematics(franka, qp).end_effector;
      const Transform tm = ForwardKinematics(franka, qm).end_effector;
      Vector6d col;
      col.head<3>() = (tp.translation - tm.translation) / (2 * h);
      const Eigen::AngleAxisd aa(Matrix3d(tp.rotation * tm.rotation.transpose()));
      col.tail<3>() = aa.axis() * aa.angle() / (2 * h);
      const double scale = std::max(analytic.col(i).norm(), 1e-3);
      worst_j = std::max(worst_j, (analytic.col(i) - col).norm() / scale);
    }
    const MatrixXd mm = JointSpaceInertia(franka, q);
    worst_sym = std::max(worst_sym, (mm - mm.transpose()).cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<MatrixXd>(mm).eigenvalues().minCoeff());
  }
  o.Check(worst_j < 1e-5, Fmt("jacobian rel err %.2e", worst_j));
  o.Check(worst_sym < 1e-9, Fmt("M asymmetry %.2e", worst_sym));
  o.Check(min_eig > 0.0, Fmt("M min eigenvalue %.2e", min_eig));

  // One revolute joint at q = 0: J = [0 l 0 0 0 1]^T, so J+ = J^T / (l^2 + 1).
  const double mass = 2.5, len = 0.6;
  const RobotModel one = MakePlanarArm({len}, {mass});
  const JacobianBundle b = ComputeJacobianBundle(one, VectorXd::Zero(1), Transform::Identity());
  const double inertia = mass * len * len + one.links[0].inertia(2, 2);
  const double s = len * len + 1.0;
  const Matrix6d expected = inertia * (b.jacobian * b.jacobian.transpose()) / (s * s);
  const double lambda_err = (b.task_inertia - expected).cwiseAbs().maxCoeff();
  o.Check(lambda_err < 1e-9, Fmt("1-dof task inertia err %.2e", lambda_err));

  double worst_w = 0.0;
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double l1 = 0.3 + 0.1 * trial, l2 = 0.9 - 0.02 * trial;
    const RobotModel a = MakePlanarArm({l1, l2}, {1.0, 1.0});
    const Eigen::Vector2d q(u(rng), u(rng));
    const MatrixXd j = EndEffectorJacobian(a, ForwardKinematics(a, q));
    worst_w = std::max(worst_w, std::abs(Manipulability(j.topRows<2>()) -
                                         l1 * l2 * std::abs(std::sin(q[1]))));
  }
  o.Check(worst_w < 1e-9, Fmt("2-link manipulability err %.2e", worst_w));
  if (o.pass) o.Note(Fmt("jacobian %.1e, task inertia %.1e, w %.1e", worst_j, lambda_err, worst_w));
  return o;
}

// 2. Selection matrix semantics of the hybrid control law.
Outcome ControlLaw() {
  Outcome o;
  const GainSet gains = GainSet::Default();
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst_i = 0.0, worst_0 = 0.0, worst_cross = 0.0;
  for (const RobotModel& arm : {MakePlanarArm({0.4, 0.35, 0.15}, {2.0, 1.5, 0.6}), MakeFrankaLikeArm()}) {
    const VectorXd limits = VectorXd::Constant(arm.dof(), 1e6);
    const VectorXd g = VectorXd::Zero(arm.dof());
    for (int trial = 0; trial < 20; ++trial) {
      const JacobianBundle b = ComputeJacobianBundle(arm, RandomQ(arm, rng), Transform());
      Vector6d xe, ve, fd, xe2, ve2, fd2;
      for (int i = 0; i < 6; ++i) {
        xe[i] = 0.01 * n(rng), ve[i] = 0.01 * n(rng), fd[i] = n(rng);
        xe2[i] = 0.01 * n(rng), ve2[i] = 0.01 * n(rng), fd2[i] = n(rng);
      }
      auto tau = [&](const Matrix6d& s, const Vector6d& x, const Vector6d& v, const Vector6d& f) {
        return ComputeTorque(b, s, gains, x, v, f, g, limits);
      };
      const Matrix6d eye = Matrix6d::Identity(), zero = Matrix6d::Zero();
      worst_i = std::max(worst_i, (tau(eye, xe, ve, fd) - tau(eye, xe, ve, fd2)).cwiseAbs().maxCoeff());
      worst_0 = std::max(worst_0, (tau(zero, xe, ve, fd) - tau(zero, xe2, ve2, fd)).cwiseAbs().maxCoeff());
      // Mixed selection: force entries on motion axes and pose/velocity
      // errors on force axes must not reach the torque.
      Vector6d sel;
      for (int i = 0; i < 6; ++i) sel[i] = (trial + i) % 2;
      const Matrix6d s = sel.asDiagonal();
      const Vector6d motion = sel, force = Vector6d::Ones() - sel;
      const VectorXd base = tau(s, xe, ve, fd);
      const Vector6d df = motion.cwiseProduct(fd2);
      const Vector6d dx = force.cwiseProduct(xe2), dv = force.cwiseProduct(ve2);
      worst_cross = std::max(worst_cross, (tau(s, xe, ve, fd + df) - base).cwiseAbs().maxCoeff());
      worst_cross = std::max(worst_cross, (tau(s, xe + dx, ve + dv, fd) - base).cwiseAbs().maxCoeff());
    }
  }
  o.Check(worst_i <= 1e-12, Fmt("S=I force sensitivity %.2e", worst_i));
  o.Check(worst_0 <= 1e-12, Fmt("S=0 motion sensitivity %.2e", worst_0));
  o.Check(worst_cross <= 1e-12, Fmt("cross sensitivity %.2e", worst_cross));
  if (o.pass) o.Note(Fmt("max sensitivities %.1e / %.1e / %.1e", worst_i, worst_0, worst_cross));
  return o;
}

ObjectModel Crank(double friction, double damping, double spring) {
  ObjectModel c;
  c.joint_frame.translation = Vector3d(0.52, 0.0, 0.0);
  c.handle_offset = Vector3d(0.2, 0.0, 0.0);
  c.dry_friction = friction;
  c.viscous_damping = damping;
  c.spring_k = spring;
  c.inertia = 0.05;
  return c;
}

// 3. Simulator: energy, stiction and grasp coincidence.
Outcome Simulator() {
  Outcome o;
  const RobotModel arm = MakePlanarArm({0.4, 0.35, 0.15}, {2.0, 1.5, 0.6});
  WorldParams params;
  params.gravity = false;
  {
    const ObjectModel obj = Crank(0.0, 0.0, 3.0);
    const World w(arm, obj, {}, params);
    WorldState s = w.MakeState(Eigen::Vector3d(0.1, 1.2, -0.4), 0.4, false);
    auto energy = [&](const WorldState& st) {
      return 0.5 * obj.inertia * st.theta_dot * st.theta_dot +
             0.5 * obj.spring_k * (st.theta - obj.spring_rest) * (st.theta - obj.spring_rest);
    };
    const double e0 = energy(s);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      s = w.Step(s, VectorXd::Zero(3));
      worst = std::max(worst, std::abs(energy(s) - e0) / e0);
    }
    o.Check(worst < 0.01, Fmt("oscillator drift %.3f%%", 100 * worst));
    o.Note(Fmt("oscillator drift %.3f%% over 10 s", 100 * worst));
  }
  {
    const ObjectModel obj = Crank(2.0, 0.1, 0.0);
    const World w(arm, obj, {}, params);
    Transform target;
    target.translation = obj.HandlePosition(0.0);
    IkOptions ik;
    ik.row_weights << 1, 1, 0, 0, 0, 0;
    const IkResult sol = InverseKinematics(arm, target, Eigen::Vector3d(-0.5, 1.5, -0.5), ik);
    o.Check(sol.converged, "grasp IK failed");
    WorldState s = w.MakeState(sol.q, 0.0, true);
    const Vector3d f = obj.HandleTangent(0.0).normalized() * (0.5 * obj.dry_friction / obj.HandleRadius());
    bool held = true;
    for (int i = 0; i < 1000 && held; ++i) {
      const MatrixXd j = EndEffectorJacobian(arm, ForwardKinematics(arm, s.q));
      s = w.Step(s, VectorXd(j.topRows<3>().transpose() * f));
      held = s.theta_dot == 0.0 && s.theta == 0.0;
    }
    o.Check(held, "object moved below breakaway");
  }
  {
    const ScenarioConfig c = PresetConfig("reduced_valve");
    ManipEnv env(c);
    ManualPolicy manual(c);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      env.Reset(CaseSeed(c.seed, k));
      while (!env.done()) {
        env.Step(manual.Act(env));
        if (env.state().grasp_attached) worst = std::max(worst, env.world().GraspSeparation(env.state()));
      }
    }
    o.Check(worst < c.world.grasp_tolerance, Fmt("grasp separation %.2e m", worst));
    o.Note(Fmt("max grasp separation %.2e m", worst));
  }
  return o;
}

// 4. MDP constants.
Outcome Constants() {
  Outcome o;
  o.Check(kDeltaForceSet == (std::array<double, 4>{0.1, 0.0, -0.1, 1.0}), "delta force set");
  const Range valve = VelocityBand(ObjectClass::kHandwheelValve);
  const Range door = VelocityBand(ObjectClass::kDoor);
  const Range drawer = VelocityBand(ObjectClass::kDrawer);
  o.Check(valve.min == 0.7 && valve.max == 0.8, "valve band");
  o.Check(door.min == 0.1 && door.max == 0.15, "door band");
  o.Check(drawer.min == 0.4 && drawer.max == 0.5, "drawer band");
  for (const std::string& name : PresetNames()) {
    const ScenarioConfig c = PresetConfig(name);
    const Range band = VelocityBand(c.object.object_class);
    const bool ok = c.mdp.delta_force_set == std::vector<double>(kDeltaForceSet.begin(), kDeltaForceSet.end()) &&
                    c.mdp.k1 == 1.0 && c.mdp.k2 == 0.1 && c.mdp.terminal_reward == -100.0 &&
                    c.mdp.window == 10 && c.mdp.policy_rate == 100.0 && c.mdp.sim_dt == 1e-3 &&
                    c.mdp.ticks_per_policy_step() == 10 && c.eval.rmp_clip == 100.0 &&
                    c.mdp.velocity_band.min == band.min && c.mdp.velocity_band.max == band.max;
    o.Check(ok, "preset " + name);
    // Frame layout: window of 2k + 14 features.
    ManipEnv env(c);
    env.Reset(CaseSeed(c.seed, 0));
    const int dof = env.scenario().robot.dof();
    o.Check(env.Features().size() == c.mdp.window * (2 * dof + 14), "window size " + name);
  }
  if (o.pass) o.Note("force deltas, bands, reward weights, penalty, rates, window exact for " +
                     std::to_string(PresetNames().size()) + " presets");
  return o;
}

LossFn SquaredLoss(const MatrixXd& target) {
  return [target](const MatrixXd& out) {
    const MatrixXd diff = out - target;
    return std::make_pair(0.5 * diff.squaredNorm(), MatrixXd(diff));
  };
}

// 5. Analytic gradients against central differences.
Outcome Gradients() {
  Outcome o;
  double worst = 0.0;
  auto record = [&](double err, const std::string& what) {
    worst = std::max(worst, err);
    o.Check(err < 1e-4, what + Fmt(" %.2e", err));
  };
  for (Activation act : {Activation::kTanh, Activation::kRelu}) {
    NetworkSpec spec;
    spec.input_dim = 12;
    spec.output_dim = 4;
    spec.hidden = {64, 64};
    spec.activation = act;
    std::mt19937_64 rng(4);
    Network net(spec, rng);
    record(GradientCheck(net, Gaussian(12, 6, 5), SquaredLoss(Gaussian(4, 6, 6))), "mlp");
  }
  {
    NetworkSpec spec;
    spec.seq_steps = 4;
    spec.frame_dim = 5;
    spec.input_dim = 4 * 5 + 2;
    spec.output_dim = 3;
    spec.hidden = {16};
    spec.lstm_hidden = 8;
    std::mt19937_64 rng(9);
    Network net(spec, rng);
    record(GradientCheck(net, Gaussian(spec.input_dim, 4, 10), SquaredLoss(Gaussian(3, 4, 11))), "lstm");
  }
  LearnerConfig lc;
  lc.hidden = 32;
  lc.batch_size = 16;
  const FeatureLayout layout{6, 1, 6};
  {
    SacLearner sac(lc, layout, 2, 2.0, 21);
    const MatrixXd obs = Gaussian(6, 5, 22), eps = Gaussian(2, 5, 23);
    sac.actor().ZeroGrad();
    sac.ActorObjective(obs, eps, true);
    const VectorXd analytic = sac.actor().grads();
    const auto f = [&](const VectorXd& p) {
      sac.actor().params() = p;
      return sac.ActorObjective(obs, eps, false);
    };
    record(GradientCheck(f, VectorXd(sac.actor().params()), analytic), "sac actor");
  }
  {
    VanillaLearner v(lc, layout, 4, 2, 2.0, 31);
    const MatrixXd obs = Gaussian(6, 5, 32), eps = Gaussian(2, 5, 33);
    v.actor().ZeroGrad();
    v.ActorObjective(obs, eps, true);
    const VectorXd analytic = v.actor().grads();
    const auto f = [&](const VectorXd& p) {
      v.actor().params() = p;
      return v.ActorObjective(obs, eps, false);
    };
    record(GradientCheck(f, VectorXd(v.actor().params()), analytic), "vanilla actor");
  }
  if (o.pass) o.Note(Fmt("worst relative error %.2e", worst));
  return o;
}

// 6. Every mixed minibatch is split exactly.
Outcome Mixing() {
  Outcome o;
  ReplayBuffer buffer(1000);
  std::mt19937_64 rng(50);
  auto make = [&](double tag) {
    Transition t;
    t.obs = VectorXd::Zero(4);
    t.next_obs = VectorXd::Zero(4);
    t.accel = VectorXd::Zero(2);
    t.r_k = tag;
    return t;
  };
  for (int i = 0; i < 300; ++i) buffer.Add(make(1.0));
  std::vector<Transition> offline(200, make(-1.0));
  buffer.SetOffline(std::move(offline));
  int bad = 0;
  for (int b : {64, 65}) {
    for (int k = 0; k < 1000; ++k) {
      const Batch batch = buffer.Sample(b, true, rng);
      const int online = static_cast<int>((batch.r_k.array() > 0).count());
      if (online != (b + 1) / 2 || batch.size() - online != b / 2) ++bad;
    }
  }
  o.Check(bad == 0, std::to_string(bad) + " batches off the half split");
  o.Check(!buffer.fell_back(), "fell back to online-only sampling");
  if (o.pass) o.Note("2000 batches (B = 64, 65) exact");
  return o;
}

// Smoothed per-episode series, mean over the first or last `frac` of it.
double Mean(const std::vector<double>& v, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += v[i];
  return end > begin ? s / static_cast<double>(end - begin) : 0.0;
}

struct Trained {
  ScenarioConfig config;
  std::unique_ptr<Model> swrl;
  bool ok = false;
};

// 7. Learning efficiency within the compute budget.
Outcome Learning(Trained* trained) {
  Outcome o;
  const ScenarioConfig c = PresetConfig("reduced_valve");
  trained->config = c;
  const std::clock_t t0 = std::clock();
  const std::vector<Transition> offline = OfflineData(c, "swrl", 1);
  trained->swrl = std::make_unique<Model>(c, "swrl");
  const std::vector<EpisodeSummary> s_curve =
      Train(c, *trained->swrl, c.learner.episodes, offline).curve;
  Model vanilla(c, "vanilla");
  const std::vector<EpisodeSummary> v_curve = Train(c, vanilla, c.learner.episodes, offline).curve;
  const double cpu = static_cast<double>(std::clock() - t0) / CLOCKS_PER_SEC;
  trained->ok = true;
  o.Check(cpu <= 900.0, Fmt("cpu %.0f s over budget", cpu));

  const int max_steps = static_cast<int>(std::lround(c.mdp.episode_time * c.mdp.policy_rate));
  std::vector<double> s_band, s_occ, v_occ;
  for (const auto& e : s_curve) {
    s_band.push_back(e.band_steps);
    s_occ.push_back(BandOccupancy(e, max_steps));
  }
  for (const auto& e : v_curve) v_occ.push_back(BandOccupancy(e, max_steps));
  s_band = Smooth(s_band, 10);
  s_occ = Smooth(s_occ, 10);
  v_occ = Smooth(v_occ, 10);

  const std::size_t n = s_band.size(), tenth = std::max<std::size_t>(1, n / 10);
  const double first = Mean(s_band, 0, tenth), last = Mean(s_band, n - tenth, n);
  o.Check(last >= 3.0 * first, Fmt("(a) band steps first %.1f last %.1f", first, last));
  o.Note(Fmt("(a) smoothed band steps %.1f -> %.1f (x%.2f)", first, last, first > 0 ? last / first : 0.0));

  const std::size_t vn = v_occ.size(), vtenth = std::max<std::size_t>(1, vn / 10);
  const double level = Mean(v_occ, vn - vtenth, vn);
  std::size_t reach = s_occ.size();
  for (std::size_t i = 0; i < s_occ.size(); ++i) {
    if (s_occ[i] >= level) {
      reach = i;
      break;
    }
  }
  const bool in_time = reach < s_occ.size() && reach + 1 <= vn / 2;
  o.Check(in_time, "(b) swrl never reached vanilla's final occupancy by half budget");
  o.Note("(b) vanilla final occupancy " + Fmt("%.3f", level) + ", swrl reaches it at episode " +
         (reach < s_occ.size() ? std::to_string(reach + 1) : std::string("never")) + " of " +
         std::to_string(vn));
  o.Note(Fmt("cpu %.0f s", cpu));
  return o;
}

// 8. Trained policy against the manual baseline on evaluation seeds.
Outcome AgainstManual(Trained* trained) {
  Outcome o;
  if (!trained->ok) {
    o.Check(false, "no trained policy");
    return o;
  }
  const ScenarioConfig& c = trained->config;
  const EvalReport r = EvaluateAgainstManual(c, "swrl", trained->swrl->Factory(), c.eval.cases, 1);
  const int need = (3 * c.eval.cases + 4) / 5;  // 60%
  o.Check(r.theta_wins >= need, "theta wins " + std::to_string(r.theta_wins));
  o.Check(r.manipulability_wins >= need, "w wins " + std::to_string(r.manipulability_wins));
  o.Note("wins theta " + std::to_string(r.theta_wins) + "/" + std::to_string(c.eval.cases) + ", w " +
         std::to_string(r.manipulability_wins) + "/" + std::to_string(c.eval.cases) + " (need " +
         std::to_string(need) + ")");
  o.Note(Fmt("mean theta %.3f vs %.3f", r.mean_theta, r.manual_mean_theta));
  o.Note(Fmt("mean w %.4f vs %.4f", r.mean_manipulability, r.manual_mean_manipulability));
  return o;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Two CLI runs with the same seed produce identical artifacts.
Outcome Reproducible() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "swrl_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string cli = SWRL_CLI;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    const std::string base = "env -u SWRL_WORKERS " + cli + " ";
    const std::string tail = " --config reduced_valve --seed 11 --workers 1 2>>" +
                             (root / "stderr.txt").string() + " >/dev/null";
    const int t = std::system((base + "train --algo swrl --episodes 4 --out " + (dir / "train").string() + tail).c_str());
    const int e = std::system((base + "eval --algo swrl --cases 3 --checkpoint " +
                               (dir / "train" / "checkpoint").string() + " --out " +
                               (dir / "eval").string() + tail).c_str());
    o.Check(t == 0 && e == 0, std::string("run ") + run + " exited nonzero");
  }
  if (!o.pass) return o;
  for (const char* f : {"train/curves.csv", "train/episodes.jsonl", "train/checkpoint/weights.bin",
                        "eval/eval.csv", "eval/trace.csv", "eval/episodes.jsonl"}) {
    const std::string a = Slurp(root / "a" / f), b = Slurp(root / "b" / f);
    o.Check(!a.empty() && a == b, std::string(f) + " differs");
  }
  if (o.pass) o.Note("curves, episodes, weights, eval and trace byte-identical");
  fs::remove_all(root);
  return o;
}

}  // namespace
}  // namespace swrl

int main() {
  using namespace swrl;
  Trained trained;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, KinematicsAndDynamics},
      {2, ControlLaw},
      {3, Simulator},
      {4, Constants},
      {5, Gradients},
      {6, Mixing},
      {7, [&] { return Learning(&trained); }},
      {8, [&] { return AgainstManual(&trained); }},
      {9, Reproducible},
  };
  const double limits[] = {10, 5, 30, 1, 20, 5, 900, 1e9, 1e9};
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (id != 7 && secs > limits[id - 1]) o.Check(false, Fmt("took %.1f s, limit %.0f s", secs, limits[id - 1]));
    failed += !o.pass;
    std::printf("criterion %d %s (%.1f s): %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
