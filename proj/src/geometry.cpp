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

#include "golfputt/geometry.hpp"

namespace golfputt {

double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 transform_point(const Pose2D& pose, const Vec2& p_local) {
  return rotate(p_local, pose.psi) + pose.position();
}

Pose2D compose(const Pose2D& base, const Pose2D& local) {
  const Vec2 p = transform_point(base, {local.x, local.y});
  return {p.x, p.y, base.psi + local.psi};
}

Pose2D inverse(const Pose2D& pose) {
  const Vec2 p = rotate(-pose.position(), -pose.psi);
  return {p.x, p.y, -pose.psi};
}

}  // namespace golfputt
