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

#include <Eigen/Core>
#include <vector>

#include "golfputt/geometry.hpp"
#include "golfputt/pso.hpp"

namespace golfputt {

struct RobotGeom {
  double track_width = 0.5;         // W, m
  Pose2D club_offset{0.4, 0.0, 0.0};  // pose of C in G
  double ball_offset = 0.03;        // club placed this far behind the ball along -v_s
  double step_max = 0.3;            // max wheel travel per step, m

  void validate() const;
};

/// One drive command: travel increments of the two wheels, meters.
struct WheelStep {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

using ControlSequence = std::vector<WheelStep>;

struct PositioningWeights {
  Eigen::Matrix3d q = Eigen::Vector3d(100.0, 100.0, 10.0).asDiagonal();
  Eigen::Matrix2d r = 1e-4 * Eigen::Matrix2d::Identity();

  void validate() const;
};

/// Club pose that puts C behind the ball with its x-axis along v_s.
/// Throws ConfigError for a zero stroke vector.
Pose2D target_club_pose(const Vec2& ball, const Vec2& v_s, const RobotGeom& geom);

/// Differential-drive pose of G after applying the sequence (exact arcs).
Pose2D rollout_base(const RobotGeom& geom, const Pose2D& start_g, const ControlSequence& seq);

/// End pose of the club frame C in I after driving the sequence from start_g.
Pose2D rollout_kinematics(const RobotGeom& geom, const Pose2D& start_g, const ControlSequence& seq);

/// Pose error g_d - g_e with the heading difference normalized.
Eigen::Vector3d pose_error(const Pose2D& desired, const Pose2D& actual);

double positioning_cost(const RobotGeom& geom, const Pose2D& start_g, const Pose2D& target_c,
                        const PositioningWeights& w, const ControlSequence& seq);

struct PositioningPlan {
  ControlSequence sequence;
  double cost;             // J_p
  Pose2D end_pose_c;
  Eigen::Vector3d error;   // target - end (x, y, psi)
};

struct PositioningOptions {
  int steps = 10;
  PsoConfig pso{};
};

/// Minimizes J_p over the wheel increments with PSO inside |theta| <= step_max.
PositioningPlan plan_positioning(const RobotGeom& geom, const Pose2D& start_g, const Pose2D& target_c,
                                 const PositioningWeights& weights = {}, const PositioningOptions& opts = {});

}  // namespace golfputt
