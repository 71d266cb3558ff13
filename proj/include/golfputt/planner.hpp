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

#include <vector>

#include "golfputt/ball_dynamics.hpp"
#include "golfputt/geometry.hpp"
#include "golfputt/mlp.hpp"
#include "golfputt/pso.hpp"

namespace golfputt {

/// Rows (x0, y0, xdot0, ydot0, xe, ye) generated on one surface.
using StrokeDataset = std::vector<TrainingStroke>;

/// Forward surrogate: (x0, y0, xdot0, ydot0) -> (xe, ye).
MlpModel train_forward(const StrokeDataset& ds, const TrainConfig& cfg = {}, TrainReport* report = nullptr);

/// Inverse planner: (x0, y0, xe, ye) -> (xdot0, ydot0).
MlpModel train_inverse(const StrokeDataset& ds, const TrainConfig& cfg = {}, TrainReport* report = nullptr);

struct StrokePlan {
  Vec2 v_s;
  double objective = 0.0;  // J_b at v_s (forward planner only)
  bool in_range = true;    // query inside the training input range
};

/// Stroke vector minimizing J_b = |q_e - q_H|^2 with q_e predicted by the
/// forward network; PSO over |xdot|, |ydot| <= v_max.
StrokePlan plan_stroke_forward(const MlpModel& forward, const Vec2& ball, const Vec2& hole,
                               const PsoConfig& cfg = {}, double v_max = 4.0);

/// Stroke vector from a single pass of the inverse network.
StrokePlan plan_stroke_inverse(const MlpModel& inverse, const Vec2& ball, const Vec2& hole);

}  // namespace golfputt
