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

#pragma once

#include <cmath>
#include <numbers>

namespace golfputt {

/// Planar vector in the inertial frame I. Positions in meters, velocities in m/s.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Maps any finite angle onto (-pi, pi].
double normalize_angle(double a);

/// Planar pose [x, y, psi] of a body frame (G, C, ...) expressed in I.
/// The heading is kept normalized to (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;

  Pose2D() = default;
  Pose2D(double x_, double y_, double psi_) : x(x_), y(y_), psi(normalize_angle(psi_)) {}

  Vec2 position() const { return {x, y}; }
};

/// Rotates `p_local` by the pose heading and adds the pose translation.
Vec2 transform_point(const Pose2D& pose, const Vec2& p_local);

/// Rotates a free vector (no translation).
Vec2 rotate(const Vec2& v, double angle);

/// Pose composition: `local` is expressed in the frame of `base`.
Pose2D compose(const Pose2D& base, const Pose2D& local);

/// Inverse pose, so that compose(pose, inverse(pose)) is the identity.
Pose2D inverse(const Pose2D& pose);

}  // namespace golfputt
