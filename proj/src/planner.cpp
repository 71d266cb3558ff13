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

#include <array>

#include "golfputt/error.hpp"

namespace golfputt {

namespace {

enum class Role { kForward, kInverse };

MlpModel train_role(const StrokeDataset& ds, const TrainConfig& cfg, TrainReport* report, Role role) {
  const std::size_t n = ds.size();
  std::vector<double> in(4 * n), out(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const TrainingStroke& s = ds[k];
    in[0 * n + k] = s.q0.x;
    in[1 * n + k] = s.q0.y;
    if (role == Role::kForward) {
      in[2 * n + k] = s.q0.xdot;
      in[3 * n + k] = s.q0.ydot;
      out[0 * n + k] = s.end.x;
      out[1 * n + k] = s.end.y;
    } else {
      in[2 * n + k] = s.end.x;
      in[3 * n + k] = s.end.y;
      out[0 * n + k] = s.q0.xdot;
      out[1 * n + k] = s.q0.ydot;
    }
  }
  MlpModel m = train_mlp(in, 4, out, 2, n, cfg, report);
  m.role = role == Role::kForward ? "forward" : "inverse";
  return m;
}

}  // namespace

MlpModel train_forward(const StrokeDataset& ds, const TrainConfig& cfg, TrainReport* report) {
  return train_role(ds, cfg, report, Role::kForward);
}

MlpModel train_inverse(const StrokeDataset& ds, const TrainConfig& cfg, TrainReport* report) {
  return train_role(ds, cfg, report, Role::kInverse);
}

StrokePlan plan_stroke_forward(const MlpModel& forward, const Vec2& ball, const Vec2& hole, const PsoConfig& cfg,
                               double v_max) {
  if (forward.inputs() != 4 || forward.outputs() != 2) throw ConfigError("forward planner needs a 4-in/2-out network");
  if (!(v_max > 0.0)) throw ConfigError("forward planner v_max must be positive");
  // Terminal velocity terms of J_b vanish: the network predicts rest points.
  const std::array<double, 4> weight{1.0, 1.0, 1.0, 1.0};
  auto objective = [&](std::span<const double> v) {
    const std::array<double, 4> in{ball.x, ball.y, v[0], v[1]};
    const std::vector<double> end = forward.predict(in);
    const std::array<double, 4> diff{end[0] - hole.x, end[1] - hole.y, 0.0, 0.0};
    double j = 0.0;
    for (std::size_t i = 0; i < 4; ++i) j += weight[i] * diff[i] * diff[i];
    return j;
  };
  const std::array<Bound, 2> bounds{Bound{-v_max, v_max}, Bound{-v_max, v_max}};
  const PsoResult r = pso_minimize(objective, bounds, cfg);

  StrokePlan plan;
  plan.v_s = {r.x_best[0], r.x_best[1]};
  plan.objective = r.f_best;
  const std::array<double, 4> probe{ball.x, ball.y, plan.v_s.x, plan.v_s.y};
  plan.in_range = forward.in_range(probe);
  return plan;
}

StrokePlan plan_stroke_inverse(const MlpModel& inverse, const Vec2& ball, const Vec2& hole) {
  if (inverse.inputs() != 4 || inverse.outputs() != 2) throw ConfigError("inverse planner needs a 4-in/2-out network");
  const std::array<double, 4> in{ball.x, ball.y, hole.x, hole.y};
  const std::vector<double> v = inverse.predict(in);
  StrokePlan plan;
  plan.v_s = {v[0], v[1]};
  plan.in_range = inverse.in_range(in);
  return plan;
}

}  // namespace golfputt
