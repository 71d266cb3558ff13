/*
 Copyright 2026 The golfputt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "golfputt/positioning.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "golfputt/error.hpp"
#include "golfputt/random.hpp"

namespace golfputt {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(TargetPoseTest, Examples) {
  const RobotGeom g;
  Pose2D p = target_club_pose({1, 0}, {1, 0}, g);
  EXPECT_NEAR(p.x, 0.97, 1e-15);
  EXPECT_NEAR(p.y, 0.0, 1e-15);
  EXPECT_NEAR(p.psi, 0.0, 1e-15);
  p = target_club_pose({0, 0}, {0, 2}, g);
  EXPECT_NEAR(p.x, 0.0, 1e-15);
  EXPECT_NEAR(p.y, -0.03, 1e-15);
  EXPECT_NEAR(p.psi, kPi / 2, 1e-15);
  EXPECT_THROW(target_club_pose({0, 0}, {0, 0}, g), ConfigError);
}

TEST(KinematicsTest, EqualIncrementsTranslate) {
  const RobotGeom g;
  const ControlSequence seq(7, WheelStep{0.1, 0.1});
  const Pose2D base = rollout_base(g, Pose2D{}, seq);
  EXPECT_NEAR(base.x, 0.7, 1e-14);
  EXPECT_NEAR(base.y, 0.0, 1e-15);
  EXPECT_NEAR(base.psi, 0.0, 1e-15);
  const Pose2D club = rollout_kinematics(g, Pose2D{}, seq);
  EXPECT_NEAR(club.x, 1.1, 1e-14);
}

TEST(KinematicsTest, OppositeIncrementsRotateInPlace) {
  const RobotGeom g;
  const ControlSequence seq(3, WheelStep{-0.1, 0.1});
  const Pose2D base = rollout_base(g, Pose2D{0.5, -0.5, 0.2}, seq);
  EXPECT_NEAR(base.x, 0.5, 1e-15);
  EXPECT_NEAR(base.y, -0.5, 1e-15);
  EXPECT_NEAR(base.psi, 0.2 + 3 * 0.2 / 0.5, 1e-14);
}

TEST(KinematicsTest, SingleArc) {
  const RobotGeom g;
  const Pose2D base = rollout_base(g, Pose2D{}, {{0.1, 0.2}});
  EXPECT_NEAR(base.psi, 0.2, 1e-15);
  // Arc of radius 0.75 about (0, 0.75).
  EXPECT_NEAR(base.x, 0.75 * std::sin(0.2), 1e-15);
  EXPECT_NEAR(base.y, 0.75 * (1 - std::cos(0.2)), 1e-15);
  EXPECT_NEAR(std::hypot(base.x, base.y - 0.75), 0.75, 1e-15);
}

TEST(KinematicsTest, ComposeEquivariance) {
  const RobotGeom g;
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    ControlSequence seq(10);
    for (auto& s : seq) s = {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const Pose2D start{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-kPi, kPi)};
    const Pose2D a = rollout_kinematics(g, start, seq);
    const Pose2D b = compose(start, rollout_kinematics(g, Pose2D{}, seq));
    EXPECT_NEAR(a.x, b.x, 1e-12);
    EXPECT_NEAR(a.y, b.y, 1e-12);
    EXPECT_NEAR(normalize_angle(a.psi - b.psi), 0.0, 1e-12);
  }
}

TEST(CostTest, ErrorUsesNormalizedHeading) {
  const Eigen::Vector3d e = pose_error(Pose2D{0, 0, kPi - 0.01}, Pose2D{0, 0, -kPi + 0.01});
  EXPECT_NEAR(e(2), -0.02, 1e-12);
  const RobotGeom g;
  const PositioningWeights w;
  const Pose2D target = rollout_kinematics(g, Pose2D{}, {{0.1, 0.2}});
  EXPECT_NEAR(positioning_cost(g, Pose2D{}, target, w, {{0.1, 0.2}}), 1e-4 * (0.01 + 0.04), 1e-15);
}

void expect_within_limits(const PositioningPlan& p, const RobotGeom& g) {
  for (const auto& s : p.sequence) {
    EXPECT_LE(std::abs(s.theta1), g.step_max);
    EXPECT_LE(std::abs(s.theta2), g.step_max);
  }
}

TEST(PlanTest, StraightAhead) {
  const RobotGeom g;
  const Pose2D target{1.4, 0.0, 0.0};  // C starts at (0.4, 0, 0)
  const auto plan = plan_positioning(g, Pose2D{}, target);
  expect_within_limits(plan, g);
  EXPECT_EQ(plan.sequence.size(), 10u);
  EXPECT_LT(std::hypot(plan.error(0), plan.error(1)), 0.01);
  EXPECT_LT(std::abs(plan.error(2)), 0.02);
  EXPECT_LT(plan.cost, 1e-4);
  // The reported end pose is the rollout of the returned plan.
  const Pose2D re = rollout_kinematics(g, Pose2D{}, plan.sequence);
  EXPECT_EQ(re.x, plan.end_pose_c.x);
  EXPECT_EQ(re.y, plan.end_pose_c.y);
}

TEST(PlanTest, TargetIsStart) {
  const RobotGeom g;
  const Pose2D start{0.3, -0.2, 1.0};
  const auto plan = plan_positioning(g, start, rollout_kinematics(g, start, {}));
  EXPECT_LT(plan.cost, 1e-6);
  for (const auto& s : plan.sequence) {
    EXPECT_LT(std::abs(s.theta1), 1e-2);
    EXPECT_LT(std::abs(s.theta2), 1e-2);
  }
}

TEST(PlanTest, TargetBehindWithReversedHeading) {
  const RobotGeom g;
  const Pose2D target{-0.8, 0.0, kPi};
  const auto plan = plan_positioning(g, Pose2D{}, target);
  expect_within_limits(plan, g);
  EXPECT_LT(std::hypot(plan.error(0), plan.error(1)), 0.02);
}

TEST(PlanTest, Deterministic) {
  const RobotGeom g;
  PositioningOptions o;
  o.pso.iterations = 30;
  const auto a = plan_positioning(g, Pose2D{}, Pose2D{0.9, 0.4, 0.5}, {}, o);
  const auto b = plan_positioning(g, Pose2D{}, Pose2D{0.9, 0.4, 0.5}, {}, o);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.sequence.front().theta1, b.sequence.front().theta1);
}

TEST(PlanTest, Validation) {
  RobotGeom g;
  g.track_width = 0.0;
  EXPECT_THROW(plan_positioning(g, Pose2D{}, Pose2D{}), ConfigError);
  PositioningWeights w;
  w.q(0, 0) = -1.0;
  EXPECT_THROW(plan_positioning(RobotGeom{}, Pose2D{}, Pose2D{}, w), ConfigError);
  PositioningOptions o;
  o.steps = 0;
  EXPECT_THROW(plan_positioning(RobotGeom{}, Pose2D{}, Pose2D{}, {}, o), ConfigError);
}

}  // namespace
}  // namespace golfputt
