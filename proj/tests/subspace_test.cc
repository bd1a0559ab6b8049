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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "swrl/config.h"
#include "swrl/scenario.h"
#include "swrl/subspace.h"

namespace swrl {
namespace {

constexpr double kPi = 3.14159265358979323846;

ObjectModel Object(ObjectClass cls) {
  ObjectModel o;
  o.object_class = cls;
  o.joint_type = DefaultJointType(cls);
  return o;
}

void ExpectFrame(const Matrix3d& r) {
  EXPECT_NEAR((r.transpose() * r - Matrix3d::Identity()).norm(), 0.0, 1e-9);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
}

TEST(ObjectFrame, DoorHingeAtOrigin) {
  ObjectModel door = Object(ObjectClass::kDoor);
  door.handle_offset = Vector3d(0.8, 0.0, 1.0);
  const ObjectFrame f = BuildObjectFrame(door);
  EXPECT_NEAR((f.pose.rotation.col(0) - Vector3d::UnitX()).norm(), 0.0, 1e-12);
  EXPECT_NEAR((f.pose.rotation.col(2) - Vector3d::UnitZ()).norm(), 0.0, 1e-12);
  EXPECT_NEAR(f.pose.translation.norm(), 0.0, 1e-12);
  ExpectFrame(f.pose.rotation);
}

TEST(ObjectFrame, DrawerZAlongPull) {
  ObjectModel drawer = Object(ObjectClass::kDrawer);
  drawer.joint_frame.rotation = RotY(kPi / 2);  // pull along world +x
  drawer.handle_offset = Vector3d(0.0, 0.05, 0.0);
  const ObjectFrame f = BuildObjectFrame(drawer);
  EXPECT_NEAR((f.pose.rotation.col(2) - Vector3d::UnitX()).norm(), 0.0, 1e-12);
  ExpectFrame(f.pose.rotation);
}

TEST(ObjectFrame, ArbitraryValveOrthonormalHandleInXzPlane) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 50; ++i) {
    ObjectModel v = Object(ObjectClass::kHandwheelValve);
    v.joint_frame.rotation = RotationFromRpy(Vector3d(u(rng), u(rng), u(rng)));
    v.joint_frame.translation = Vector3d(u(rng), u(rng), u(rng));
    v.handle_offset = Vector3d(0.1 + 0.05 * std::abs(u(rng)), 0.0, 0.03);
    const double theta = u(rng);
    const ObjectFrame f = BuildObjectFrame(v, theta);
    ExpectFrame(f.pose.rotation);
    const Vector3d h = f.ToFrame(v.HandlePosition(theta));
    EXPECT_NEAR(h.y(), 0.0, 1e-9);
    EXPECT_GT(h.x(), 0.0);
    EXPECT_NEAR((f.pose.rotation.col(2) - v.JointAxis()).norm(), 0.0, 1e-9);
  }
}

TEST(ObjectFrame, DegenerateHandleThrows) {
  ObjectModel v = Object(ObjectClass::kHandwheelValve);
  v.handle_offset = Vector3d(0.0005, 0.0, 0.2);
  EXPECT_THROW(BuildObjectFrame(v), std::invalid_argument);
}

TEST(Decompose, HandwheelRigid) {
  const SubspaceDecomposition d =
      Decompose(Object(ObjectClass::kHandwheelValve), GraspConvention::kRigid);
  EXPECT_EQ(d.kinematic, (std::vector<int>{kX, kY}));
  EXPECT_EQ(d.geometric, (std::vector<int>{kZ, kYaw}));
  EXPECT_EQ(d.redundant, (std::vector<int>{kRoll, kPitch}));
  Vector6d diag;
  diag << 0, 0, 1, 1, 1, 1;
  EXPECT_EQ(d.Selection(), Matrix6d(diag.asDiagonal()));
}

TEST(Decompose, DrawerKinematicIsZ) {
  const SubspaceDecomposition d =
      Decompose(Object(ObjectClass::kDrawer), GraspConvention::kRigid);
  EXPECT_EQ(d.kinematic, std::vector<int>{kZ});
  const Matrix6d s = d.Selection();
  for (int i = 0; i < kTaskDim; ++i) EXPECT_EQ(s(i, i), i == kZ ? 0.0 : 1.0);
}

TEST(Decompose, PinGraspFreesYaw) {
  const SubspaceDecomposition d =
      Decompose(Object(ObjectClass::kHandwheelValve), GraspConvention::kPin);
  EXPECT_EQ(d.redundant, std::vector<int>{kYaw});
}

TEST(Decompose, ProjectorAlgebraForAllDefaults) {
  for (ObjectClass c : {ObjectClass::kHandwheelValve, ObjectClass::kLeverValve,
                        ObjectClass::kDoor, ObjectClass::kDrawer}) {
    for (GraspConvention g : {GraspConvention::kRigid, GraspConvention::kPin}) {
      const SubspaceDecomposition d = Decompose(Object(c), g);
      const Matrix6d s = d.Selection();
      const Matrix6d is = Matrix6d::Identity() - s;
      EXPECT_EQ(s * is, Matrix6d::Zero());
      EXPECT_EQ(s * s, s);
      EXPECT_EQ(is * is, is);
      std::vector<int> count(kTaskDim, 0);
      for (const auto* set : {&d.kinematic, &d.geometric, &d.redundant}) {
        for (int i : *set) ++count[i];
      }
      for (int i = 0; i < kTaskDim; ++i) EXPECT_EQ(count[i], 1) << ToString(c);
      // Same object and grasp give identical sets on re-invocation.
      const SubspaceDecomposition again = Decompose(Object(c), g);
      EXPECT_EQ(again.kinematic, d.kinematic);
      EXPECT_EQ(again.geometric, d.geometric);
      EXPECT_EQ(again.redundant, d.redundant);
    }
  }
}

TEST(Decompose, OverridesValidated) {
  DecompositionOverride o;
  o.kinematic = std::vector<int>{kX, kY};
  o.geometric = std::vector<int>{kY, kZ};
  EXPECT_THROW(Decompose(Object(ObjectClass::kDoor), GraspConvention::kRigid, o),
               std::invalid_argument);
  DecompositionOverride gap;
  gap.redundant = std::vector<int>{kRoll};
  EXPECT_THROW(Decompose(Object(ObjectClass::kHandwheelValve), GraspConvention::kRigid, gap),
               std::invalid_argument);
  DecompositionOverride ok;
  ok.geometric = std::vector<int>{kZ};
  const SubspaceDecomposition d =
      Decompose(Object(ObjectClass::kHandwheelValve), GraspConvention::kRigid, ok);
  EXPECT_EQ(d.redundant, (std::vector<int>{kRoll, kPitch, kYaw}));
}

TEST(ForceDirection, PrismaticAndRevoluteExamples) {
  ObjectModel drawer = Object(ObjectClass::kDrawer);
  Vector6d expect = Vector6d::Zero();
  expect[kZ] = 1.0;
  EXPECT_EQ(ForceDirection(drawer, Vector3d(0.3, 0.1, 0.0)), expect);
  drawer.open_sense = -1.0;
  EXPECT_EQ(ForceDirection(drawer, Vector3d::Zero())[kZ], -1.0);

  const ObjectModel valve = Object(ObjectClass::kHandwheelValve);
  expect.setZero();
  expect[kY] = 1.0;
  EXPECT_NEAR((ForceDirection(valve, Vector3d(1.0, 0.0, 0.0)) - expect).norm(), 0.0, 1e-15);
  EXPECT_THROW(ForceDirection(valve, Vector3d(0.0, 0.0, 0.3)), std::invalid_argument);
}

TEST(ForceDirection, TangentOrthogonalAndContinuous) {
  ObjectModel valve = Object(ObjectClass::kHandwheelValve);
  valve.joint_frame.rotation = RotationFromRpy(Vector3d(0.3, -0.7, 1.1));
  valve.handle_offset = Vector3d(0.15, 0.0, 0.02);
  const ObjectFrame f = BuildObjectFrame(valve);
  const int steps = 500;
  const double step = (kPi / 2) / steps;
  Vector3d prev = Vector3d::Zero();
  for (int i = 0; i <= steps; ++i) {
    const Vector3d r = f.ToFrame(valve.HandlePosition(i * step));
    const Vector6d d = ForceDirection(valve, r);
    const Vector3d t = d.head<3>();
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    EXPECT_NEAR(t.dot(Vector3d(r.x(), r.y(), 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(t.z(), 0.0, 1e-12);
    EXPECT_EQ(d.tail<3>(), Vector3d::Zero());
    if (i > 0) {
      const double angle = std::acos(std::clamp(t.dot(prev), -1.0, 1.0));
      EXPECT_LT(angle, step + 1e-6);
    }
    prev = t;
  }
}

TEST(Axes, NamesRoundTrip) {
  for (int i = 0; i < kTaskDim; ++i) EXPECT_EQ(AxisFromName(AxisName(i)), i);
  EXPECT_EQ(AxisFromName("alpha"), kYaw);
  EXPECT_EQ(AxisFromName("gamma"), kRoll);
  EXPECT_EQ(AxisFromName("beta"), kPitch);
  EXPECT_THROW(AxisFromName("w"), std::invalid_argument);
}

TEST(Scenario, PresetSubspacesMatchGrasp) {
  const ScenarioConfig c = PresetConfig("handwheel_valve");
  const Scenario s = BuildScenario(c, CaseSeed(c.seed, 0));
  const SubspaceDecomposition expect = Decompose(s.object, s.grasp);
  EXPECT_EQ(s.subspaces.redundant, expect.redundant);
  EXPECT_EQ(s.subspaces.kinematic, expect.kinematic);
}

}  // namespace
}  // namespace swrl
