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

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace golfputt {

struct PsoConfig {
  int swarm_size = 50;
  int iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  std::uint64_t seed = 1;
  double tolerance = 0.0;  // stop once the global best is at or below this value

  void validate() const;
};

struct Bound {
  double lo;
  double hi;
};

using Objective = std::function<double(std::span<const double>)>;

struct PsoResult {
  std::vector<double> x_best;
  double f_best;
  int iterations_run;
  std::size_t evaluations;
  std::vector<double> best_history;  // global best after initialization and after each iteration
};

/// Global-best particle swarm with inertia weight. Velocities are clamped to
/// half the box width per dimension and particles reflect off the bounds.
/// `initial` optionally fixes the starting positions of the first particles
/// (clamped into the box). Throws NumericalError when the objective returns a
/// non-finite value.
PsoResult pso_minimize(const Objective& objective, std::span<const Bound> bounds, const PsoConfig& cfg = {},
                       std::span<const std::vector<double>> initial = {});

}  // namespace golfputt
