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

#include "golfputt/stroke_reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "golfputt/error.hpp"

namespace golfputt {
namespace {

constexpr double kPi = std::numbers::pi;

StrokeRefParams with_speed(double v) {
  StrokeRefParams p;
  p.stroke_speed = v;
  return p;
}

TEST(StrokeReferenceTest, Examples) {
  const StrokeRefParams p;
  const auto r0 = ref_at(p, 0.0);
  EXPECT_EQ(r0.phi, 0.0);
  EXPECT_EQ(r0.phidot, 0.0);

  const auto rl = ref_at(p, 0.35);
  EXPECT_NEAR(rl.phi, -0.9, 1e-15);
  EXPECT_NEAR(rl.phidot, 0.0, 1e-14);

  const auto rz = ref_at(p, 0.35 + (kPi / 2) * 0.9 * 0.6 / 4.8);
  EXPECT_NEAR(rz.phi, 0.0, 1e-15);
  EXPECT_NEAR(rz.phidot, 8.0, 1e-12);
}

TEST(StrokeReferenceTest, SpeedFromVector) {
  EXPECT_DOUBLE_EQ(stroke_speed_from_vector(0.6, 0.6), 1.0);
  EXPECT_DOUBLE_EQ(stroke_speed_from_vector(4.8, 0.6), 8.0);
  EXPECT_NEAR(stroke_speed_from_vector(1.7155, 0.6), 2.8592, 1e-4);
  EXPECT_THROW(stroke_speed_from_vector(1.0, 0.0), ConfigError);
}

TEST(StrokeReferenceTest, StrikeDuration) {
  EXPECT_NEAR(StrokeRefParams{}.strike_duration(), 0.35343, 1e-5);
  for (double v : {1.2, 2.4, 3.6, 4.8, 6.0}) {
    const auto p = with_speed(v);
    EXPECT_DOUBLE_EQ(p.strike_duration(), 0.9 * kPi * 0.6 / v);
    EXPECT_NEAR(ref_at(p, p.strike_end()).phi, 0.9, 1e-12);
  }
}

TEST(StrokeReferenceTest, ContinuityAtPhaseBoundaries) {
  for (double v : {1.2, 2.4, 3.6, 4.8, 6.0}) {
    const auto p = with_speed(v);
    for (double tb : {0.0, p.strike_start(), p.strike_end(), p.reset_end()}) {
      // Each phase includes its right end, so tb is the left piece and the
      // next representable time is the right piece.
      const auto lo = ref_at(p, tb);
      const auto hi = ref_at(p, std::nextafter(tb, 1e9));
      EXPECT_NEAR(lo.phi, hi.phi, 1e-12) << v << " " << tb;
      EXPECT_NEAR(lo.phidot, hi.phidot, 1e-12) << v << " " << tb;
    }
  }
}

TEST(StrokeReferenceTest, VelocityIsDerivativeOfAngle) {
  for (double v : {1.2, 4.8, 6.0}) {
    const auto p = with_speed(v);
    const double h = 1e-6;
    for (int k = 1; k < 400; ++k) {
      const double t = p.reset_end() * k / 400.0;
      bool near_boundary = false;
      for (double tb : {p.strike_start(), p.strike_end()}) near_boundary |= std::abs(t - tb) < 2 * h;
      if (near_boundary) continue;
      const double fd = (ref_at(p, t + h).phi - ref_at(p, t - h).phi) / (2 * h);
      EXPECT_NEAR(ref_at(p, t).phidot, fd, 1e-6 * std::max(1.0, std::abs(fd))) << t;
    }
  }
}

TEST(StrokeReferenceTest, ZeroCrossingRateIsExact) {
  for (double v : {1.2, 2.4, 3.6, 4.8, 6.0}) {
    const auto p = with_speed(v);
    const auto r = ref_at(p, p.zero_crossing_time());
    EXPECT_NEAR(r.phi, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(r.phidot, v / 0.6);
    // The strike is monotone, so the crossing is unique.
    EXPECT_LT(ref_at(p, p.zero_crossing_time() - 1e-3).phi, 0.0);
    EXPECT_GT(ref_at(p, p.zero_crossing_time() + 1e-3).phi, 0.0);
  }
}

TEST(StrokeReferenceTest, ZeroOutsideTheStroke) {
  const StrokeRefParams p;
  EXPECT_EQ(ref_at(p, -1.0).phi, 0.0);
  EXPECT_EQ(ref_at(p, p.reset_end() + 0.1).phi, 0.0);
  EXPECT_EQ(ref_at(p, p.reset_end() + 0.1).phidot, 0.0);
}

TEST(StrokeReferenceTest, Validation) {
  EXPECT_NO_THROW(StrokeRefParams{}.validate());
  EXPECT_THROW(with_speed(0.0).validate(), ConfigError);
  StrokeRefParams p;
  p.lunge_angle = -0.9;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace golfputt
