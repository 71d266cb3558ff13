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

#include "golfputt/planner.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "golfputt/error.hpp"

namespace golfputt {
namespace {

constexpr double kGMu = 9.81 * 0.15;

// Flat-green models shared by the suite; trained once.
struct FlatModels {
  StrokeDataset data;
  MlpModel forward;
  MlpModel inverse;
};

const FlatModels& flat() {
  static const FlatModels m = [] {
    FlatModels f;
    TrainingStrokeOptions o;
    o.count = 3000;
    o.seed = 2024;
    f.data = generate_training_strokes(BallParams{}, named_surface("flat"), o);
    f.forward = train_forward(f.data);
    f.inverse = train_inverse(f.data);
    return f;
  }();
  return m;
}

std::vector<Vec2> grid() {
  std::vector<Vec2> g;
  for (double x : {-1.5, -0.75, 0.0, 0.75, 1.5})
    for (double y : {-1.5, -0.75, 0.0, 0.75, 1.5}) g.push_back({x, y});
  return g;
}

const Vec2 kHole{0.5, 0.0};

double bearing_error(const Vec2& v, const Vec2& d) {
  return std::abs(std::atan2(v.cross(d), v.dot(d)));
}

TEST(ForwardModelTest, ValidationRmseOnFlatGreen) {
  const auto& m = flat().forward;
  EXPECT_EQ(m.role, "forward");
  EXPECT_LE(m.validation_rmse[0], 0.05);
  EXPECT_LE(m.validation_rmse[1], 0.05);
  // Against the closed form on fresh inputs.
  double acc = 0.0;
  int count = 0;
  for (const auto& s : flat().data) {
    if (++count > 500) break;
    const double in[4] = {s.q0.x, s.q0.y, s.q0.xdot, s.q0.ydot};
    const auto p = m.predict(in);
    const double v = s.q0.speed();
    const Vec2 exact = s.q0.position() + s.q0.velocity() * (v / (2 * kGMu));
    acc += std::pow(p[0] - exact.x, 2) + std::pow(p[1] - exact.y, 2);
  }
  EXPECT_LT(std::sqrt(acc / (2 * 500)), 0.05);
}

TEST(InverseModelTest, FlatGreenSpeedAndBearing) {
  for (const Vec2& ball : grid()) {
    const auto plan = plan_stroke_inverse(flat().inverse, ball, kHole);
    const Vec2 d = kHole - ball;
    const double expect = std::sqrt(2 * kGMu * d.norm());
    EXPECT_NEAR(plan.v_s.norm(), expect, 0.05 * expect) << ball.x << "," << ball.y;
    EXPECT_LT(bearing_error(plan.v_s, d), 2.0 * std::numbers::pi / 180) << ball.x << "," << ball.y;
    EXPECT_TRUE(plan.in_range);
  }
}

TEST(InverseModelTest, OneMetreEast) {
  const auto plan = plan_stroke_inverse(flat().inverse, {0.0, 0.3}, {1.0, 0.3});
  EXPECT_NEAR(plan.v_s.x, 1.7155, 0.05 * 1.7155);
  EXPECT_NEAR(plan.v_s.y, 0.0, 0.05);
}

TEST(InverseModelTest, BallAtTargetNeedsNoSpeed) {
  for (const Vec2& p : {Vec2{0, 0}, Vec2{0.7, -0.4}, Vec2{-1, 1}})
    EXPECT_LE(plan_stroke_inverse(flat().inverse, p, p).v_s.norm(), 0.15);
}

TEST(InverseModelTest, MirroredInputsGiveMirroredOutputs) {
  for (const Vec2& ball : grid()) {
    const Vec2 hole{0.0, 0.0};
    const Vec2 b = ball * 0.6;
    if (b.norm() < 0.3) continue;
    const Vec2 v = plan_stroke_inverse(flat().inverse, b, hole).v_s;
    const Vec2 w = plan_stroke_inverse(flat().inverse, -b, hole).v_s;
    EXPECT_LE((v + w).norm(), 0.05 * v.norm()) << b.x << "," << b.y;
  }
}

TEST(InverseModelTest, RolloutsEndNearTheHole) {
  int near = 0;
  for (const Vec2& ball : grid()) {
    const auto plan = plan_stroke_inverse(flat().inverse, ball, kHole);
    SimOptions o;
    o.record = false;
    o.hole_capture = false;
    const auto r = simulate(BallParams{}, named_surface("flat"), HoleSpec{kHole}, BallState::at(ball, plan.v_s), o);
    near += (r.final_state().position() - kHole).norm() <= 0.10;
  }
  EXPECT_GE(near, 23);  // 90% of 25
}

TEST(ForwardPlannerTest, OneMetreEast) {
  const auto plan = plan_stroke_forward(flat().forward, {0.0, 0.3}, {1.0, 0.3});
  EXPECT_NEAR(plan.v_s.x, 1.7155, 0.05 * 1.7155);
  EXPECT_NEAR(plan.v_s.y, 0.0, 0.05 * 1.7155);
  EXPECT_LT(plan.objective, 1e-4);
}

TEST(ForwardPlannerTest, HoleAtBall) {
  EXPECT_LE(plan_stroke_forward(flat().forward, {0.2, 0.2}, {0.2, 0.2}).v_s.norm(), 0.15);
}

TEST(ForwardPlannerTest, AgreesWithInverseAndIsSlower) {
  using clock = std::chrono::steady_clock;
  double t_fwd = 0.0, t_inv = 0.0;
  for (const Vec2& ball : grid()) {
    auto t0 = clock::now();
    const auto f = plan_stroke_forward(flat().forward, ball, kHole);
    auto t1 = clock::now();
    const auto i = plan_stroke_inverse(flat().inverse, ball, kHole);
    auto t2 = clock::now();
    t_fwd += std::chrono::duration<double>(t1 - t0).count();
    t_inv += std::chrono::duration<double>(t2 - t1).count();
    EXPECT_LE((f.v_s - i.v_s).norm(), 0.1) << ball.x << "," << ball.y;
  }
  EXPECT_LE(t_inv, 0.01 * t_fwd);
}

TEST(PlannerTest, TrainingIsDeterministic) {
  StrokeDataset small(flat().data.begin(), flat().data.begin() + 300);
  TrainConfig cfg;
  cfg.epochs = 10;
  const auto a = train_inverse(small, cfg);
  const auto b = train_inverse(small, cfg);
  EXPECT_TRUE(std::equal(a.params().begin(), a.params().end(), b.params().begin()));
}

TEST(PlannerTest, RejectsWrongShapes) {
  const MlpModel m(3, 4, 2);
  EXPECT_THROW(plan_stroke_inverse(m, {0, 0}, {1, 0}), ConfigError);
  EXPECT_THROW(plan_stroke_forward(m, {0, 0}, {1, 0}), ConfigError);
  EXPECT_THROW(train_forward(StrokeDataset(10)), ConfigError);
}

}  // namespace
}  // namespace golfputt
