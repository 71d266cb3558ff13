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

#include "golfputt/pso.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <fmt/ranges.h>

#include "golfputt/error.hpp"
#include "golfputt/random.hpp"

namespace golfputt {

void PsoConfig::validate() const {
  if (swarm_size < 2) throw ConfigError("PSO swarm_size must be at least 2");
  if (iterations < 0) throw ConfigError("PSO iterations must be non-negative");
  if (!(inertia >= 0.0 && inertia < 1.0)) throw ConfigError("PSO inertia must lie in [0, 1)");
  if (!(cognitive > 0.0) || !(social > 0.0)) throw ConfigError("PSO acceleration coefficients must be positive");
}

namespace {

double reflect(double x, double lo, double hi, double& v) {
  if (x > hi) {
    x = hi - (x - hi);
    v = -v;
  } else if (x < lo) {
    x = lo + (lo - x);
    v = -v;
  }
  return std::clamp(x, lo, hi);
}

}  // namespace

PsoResult pso_minimize(const Objective& objective, std::span<const Bound> bounds, const PsoConfig& cfg,
                       std::span<const std::vector<double>> initial) {
  cfg.validate();
  const std::size_t dim = bounds.size();
  if (dim == 0) throw ConfigError("PSO needs at least one dimension");
  for (std::size_t d = 0; d < dim; ++d)
    if (!(bounds[d].lo < bounds[d].hi))
      throw ConfigError(fmt::format("PSO bound {} must satisfy lo < hi", d));

  const auto n = static_cast<std::size_t>(cfg.swarm_size);
  Rng rng(cfg.seed);
  std::vector<double> v_max(dim);
  for (std::size_t d = 0; d < dim; ++d) v_max[d] = 0.5 * (bounds[d].hi - bounds[d].lo);

  std::vector<std::vector<double>> pos(n, std::vector<double>(dim));
  std::vector<std::vector<double>> vel(n, std::vector<double>(dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dim; ++d) {
      pos[i][d] = rng.uniform(bounds[d].lo, bounds[d].hi);
      vel[i][d] = rng.uniform(-v_max[d], v_max[d]);
    }
  for (std::size_t i = 0; i < std::min(n, initial.size()); ++i) {
    if (initial[i].size() != dim) throw ConfigError("PSO initial point has the wrong dimension");
    for (std::size_t d = 0; d < dim; ++d) pos[i][d] = std::clamp(initial[i][d], bounds[d].lo, bounds[d].hi);
  }

  PsoResult res;
  res.evaluations = 0;
  auto evaluate = [&](const std::vector<double>& x) {
    const double f = objective(x);
    ++res.evaluations;
    if (!std::isfinite(f))
      throw NumericalError(fmt::format("objective is not finite at [{:.6g}]", fmt::join(x, ", ")));
    return f;
  };

  std::vector<std::vector<double>> best_pos = pos;
  std::vector<double> best_val(n);
  std::size_t g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    best_val[i] = evaluate(pos[i]);
    if (best_val[i] < best_val[g]) g = i;
  }
  std::vector<double> g_pos = best_pos[g];
  double g_val = best_val[g];
  res.best_history.push_back(g_val);

  int it = 0;
  for (; it < cfg.iterations && g_val > cfg.tolerance; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        double v = cfg.inertia * vel[i][d] + cfg.cognitive * r1 * (best_pos[i][d] - pos[i][d]) +
                   cfg.social * r2 * (g_pos[d] - pos[i][d]);
        v = std::clamp(v, -v_max[d], v_max[d]);
        pos[i][d] = reflect(pos[i][d] + v, bounds[d].lo, bounds[d].hi, v);
        vel[i][d] = v;
      }
    }
    // Evaluations of one sweep are independent; the best update below is the barrier.
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = evaluate(pos[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (vals[i] < best_val[i]) {
        best_val[i] = vals[i];
        best_pos[i] = pos[i];
      }
      if (best_val[i] < g_val) {
        g_val = best_val[i];
        g_pos = best_pos[i];
      }
    }
    res.best_history.push_back(g_val);
  }
  res.x_best = std::move(g_pos);
  res.f_best = g_val;
  res.iterations_run = it;
  return res;
}

}  // namespace golfputt
