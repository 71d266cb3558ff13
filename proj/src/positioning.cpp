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

#include <Eigen/Dense>
#include <cmath>

#include "golfputt/error.hpp"

namespace golfputt {

void RobotGeom::validate() const {
  if (!(track_width > 0.0)) throw ConfigError("robot track width must be positive");
  if (!(step_max > 0.0)) throw ConfigError("robot step_max must be positive");
  if (!(ball_offset >= 0.0)) throw ConfigError("robot ball offset must be non-negative");
}

void PositioningWeights::validate() const {
  if (!q.isApprox(q.transpose()) || !r.isApprox(r.transpose()))
    throw ConfigError("positioning weights must be symmetric");
  if (q.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() < -1e-12 ||
      r.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() < -1e-12)
    throw ConfigError("positioning weights must be positive semidefinite");
}

Pose2D target_club_pose(const Vec2& ball, const Vec2& v_s, const RobotGeom& geom) {
  const double speed = v_s.norm();
  if (!(speed > 0.0)) throw ConfigError("stroke velocity vector is zero; the club heading is undefined");
  const Vec2 pos = ball - geom.ball_offset * (v_s / speed);
  return {pos.x, pos.y, std::atan2(v_s.y, v_s.x)};
}

Pose2D rollout_base(const RobotGeom& geom, const Pose2D& start_g, const ControlSequence& seq) {
  double x = start_g.x;
  double y = start_g.y;
  double psi = start_g.psi;
  for (const WheelStep& s : seq) {
    const double dpsi = (s.theta2 - s.theta1) / geom.track_width;
    const double ds = 0.5 * (s.theta1 + s.theta2);
    if (std::abs(dpsi) < 1e-12) {
      x += ds * std::cos(psi);
      y += ds * std::sin(psi);
    } else {
      const double radius = ds / dpsi;
      x += radius * (std::sin(psi + dpsi) - std::sin(psi));
      y -= radius * (std::cos(psi + dpsi) - std::cos(psi));
    }
    psi += dpsi;
  }
  return {x, y, psi};
}

Pose2D rollout_kinematics(const RobotGeom& geom, const Pose2D& start_g, const ControlSequence& seq) {
  return compose(rollout_base(geom, start_g, seq), geom.club_offset);
}

Eigen::Vector3d pose_error(const Pose2D& desired, const Pose2D& actual) {
  return {desired.x - actual.x, desired.y - actual.y, normalize_angle(desired.psi - actual.psi)};
}

double positioning_cost(const RobotGeom& geom, const Pose2D& start_g, const Pose2D& target_c,
                        const PositioningWeights& w, const ControlSequence& seq) {
  const Eigen::Vector3d e = pose_error(target_c, rollout_kinematics(geom, start_g, seq));
  double cost = e.dot(w.q * e);
  for (const WheelStep& s : seq) {
    const Eigen::Vector2d th(s.theta1, s.theta2);
    cost += th.dot(w.r * th);
  }
  return cost;
}

namespace {

ControlSequence unpack(std::span<const double> x) {
  ControlSequence seq(x.size() / 2);
  for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = {x[2 * i], x[2 * i + 1]};
  return seq;
}

}  // namespace

PositioningPlan plan_positioning(const RobotGeom& geom, const Pose2D& start_g, const Pose2D& target_c,
                                 const PositioningWeights& weights, const PositioningOptions& opts) {
  geom.validate();
  weights.validate();
  if (opts.steps < 1) throw ConfigError("positioning needs at least one step");

  const auto dim = static_cast<std::size_t>(2 * opts.steps);
  const std::vector<Bound> bounds(dim, Bound{-geom.step_max, geom.step_max});
  auto objective = [&](std::span<const double> x) {
    return positioning_cost(geom, start_g, target_c, weights, unpack(x));
  };
  // Standing still is always a candidate.
  const std::vector<std::vector<double>> initial{std::vector<double>(dim, 0.0)};
  const PsoResult r = pso_minimize(objective, bounds, opts.pso, initial);

  PositioningPlan plan;
  plan.sequence = unpack(r.x_best);
  plan.cost = r.f_best;
  plan.end_pose_c = rollout_kinematics(geom, start_g, plan.sequence);
  plan.error = pose_error(target_c, plan.end_pose_c);
  return plan;
}

}  // namespace golfputt
