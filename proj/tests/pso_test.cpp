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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "golfputt/error.hpp"

namespace golfputt {
namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

TEST(PsoTest, Sphere) {
  const Bound b[] = {{-5, 5}, {-5, 5}};
  const auto r = pso_minimize(sphere, b);
  EXPECT_LT(r.f_best, 1e-6);
}

TEST(PsoTest, Rosenbrock) {
  const Bound b[] = {{-2, 2}, {-2, 2}};
  const auto r = pso_minimize(rosenbrock, b);
  EXPECT_NEAR(r.x_best[0], 1.0, 1e-2);
  EXPECT_NEAR(r.x_best[1], 1.0, 1e-2);
}

TEST(PsoTest, OneDimensionalQuadratic) {
  const Bound b[] = {{0, 10}};
  const auto r = pso_minimize([](std::span<const double> x) { return (x[0] - 3) * (x[0] - 3); }, b);
  EXPECT_NEAR(r.x_best[0], 3.0, 1e-4);
}

TEST(PsoTest, BestIsMonotoneAndPointsStayInBounds) {
  const Bound b[] = {{-1, 2}, {0.5, 0.75}, {-3, -1}};
  std::size_t count = 0;
  auto f = [&](std::span<const double> x) {
    ++count;
    for (std::size_t d = 0; d < x.size(); ++d) {
      EXPECT_GE(x[d], b[d].lo);
      EXPECT_LE(x[d], b[d].hi);
    }
    // Minimum outside the box on every axis drives particles into the walls.
    return std::pow(x[0] - 5, 2) + std::pow(x[1] + 1, 2) + std::pow(x[2] - 4, 2);
  };
  PsoConfig cfg;
  cfg.iterations = 60;
  const auto r = pso_minimize(f, b, cfg);
  EXPECT_EQ(count, r.evaluations);
  EXPECT_EQ(r.evaluations, static_cast<std::size_t>(cfg.swarm_size) * (cfg.iterations + 1));
  ASSERT_EQ(r.best_history.size(), static_cast<std::size_t>(cfg.iterations + 1));
  for (std::size_t i = 1; i < r.best_history.size(); ++i) EXPECT_LE(r.best_history[i], r.best_history[i - 1]);
  EXPECT_NEAR(r.x_best[0], 2.0, 5e-3);
  EXPECT_NEAR(r.x_best[1], 0.5, 5e-3);
  EXPECT_NEAR(r.x_best[2], -1.0, 5e-3);
}

TEST(PsoTest, IdenticalSeedsReproduceHistory) {
  const Bound b[] = {{-2, 2}, {-2, 2}};
  PsoConfig cfg;
  cfg.seed = 1234;
  const auto a = pso_minimize(rosenbrock, b, cfg);
  const auto c = pso_minimize(rosenbrock, b, cfg);
  EXPECT_EQ(a.best_history, c.best_history);
  EXPECT_EQ(a.x_best, c.x_best);
  cfg.seed = 1235;
  EXPECT_NE(pso_minimize(rosenbrock, b, cfg).best_history, a.best_history);
}

TEST(PsoTest, ToleranceStopsEarly) {
  const Bound b[] = {{-5, 5}, {-5, 5}};
  PsoConfig cfg;
  cfg.tolerance = 1e-2;
  const auto r = pso_minimize(sphere, b, cfg);
  EXPECT_LE(r.f_best, 1e-2);
  EXPECT_LT(r.iterations_run, cfg.iterations);
}

TEST(PsoTest, InitialParticleIsUsed) {
  const Bound b[] = {{-5, 5}, {-5, 5}};
  PsoConfig cfg;
  cfg.iterations = 0;
  const std::vector<std::vector<double>> init{{0.0, 0.0}};
  const auto r = pso_minimize(sphere, b, cfg, init);
  EXPECT_EQ(r.f_best, 0.0);
}

TEST(PsoTest, NonFiniteObjectiveNamesThePoint) {
  const Bound b[] = {{-1, 1}};
  try {
    pso_minimize([](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); }, b);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find('['), std::string::npos) << e.what();
  }
}

TEST(PsoTest, ConfigValidation) {
  const Bound b[] = {{1, -1}};
  EXPECT_THROW(pso_minimize(sphere, b), ConfigError);
  PsoConfig cfg;
  cfg.swarm_size = 1;
  const Bound ok[] = {{-1, 1}};
  EXPECT_THROW(pso_minimize(sphere, ok, cfg), ConfigError);
}

}  // namespace
}  // namespace golfputt
