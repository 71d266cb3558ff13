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

#include "golfputt/surface.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "golfputt/error.hpp"
#include "golfputt/random.hpp"
#include "test_util.hpp"

namespace golfputt {
namespace {

PointCloud grid_cloud(int n, double (*f)(double, double)) {
  PointCloud c;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -2.0 + 4.0 * i / (n - 1);
      const double y = -2.0 + 4.0 * j / (n - 1);
      c.push_back({x, y, f(x, y)});
    }
  }
  return c;
}

TEST(SurfaceFitTest, ConstantPlane) {
  const auto fit = fit_surface(grid_cloud(10, [](double, double) { return 0.02; }), {1, 1}, Rect{});
  EXPECT_LT(fit.rms_residual, 1e-12);
  EXPECT_NEAR(fit.model.coeff(0, 0), 0.02, 1e-12);
  EXPECT_NEAR(fit.model.coeff(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(fit.model.coeff(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(fit.model.coeff(1, 1), 0.0, 1e-12);
  EXPECT_EQ(fit.n_points, 100u);
}

TEST(SurfaceFitTest, TiltedPlaneGradient) {
  const auto fit = fit_surface(grid_cloud(10, [](double x, double) { return 0.1 * x; }), {1, 1}, Rect{});
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const Vec2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Vec2 g = fit.model.gradient(p);
    EXPECT_NEAR(g.x, 0.1, 1e-12);
    EXPECT_NEAR(g.y, 0.0, 1e-12);
  }
  EXPECT_NEAR(fit.model.height({1.0, 3.0 - 1.0}), 0.1, 1e-12);
}

TEST(SurfaceFitTest, NoisyBowl) {
  Rng rng(11);
  PointCloud cloud;
  for (int k = 0; k < 400; ++k) {
    const double x = rng.uniform(-2, 2);
    const double y = rng.uniform(-2, 2);
    cloud.push_back({x, y, 0.05 * (x * x + y * y) + testing::normal(rng, 0.001)});
  }
  const auto fit = fit_surface(cloud, {2, 2}, Rect{});
  EXPECT_LE(fit.rms_residual, 0.002);
  EXPECT_NEAR(fit.model.height({1.0, 1.0}), 0.1, 2e-3);
  const auto a = fit.model.slope_angles({1.0, 0.0});
  EXPECT_NEAR(a.alpha_x, std::atan(0.1), 5e-3);
  EXPECT_NEAR(a.alpha_y, 0.0, 5e-3);
}

TEST(SurfaceFitTest, ExactPolynomialRecovery) {
  Rng rng(5);
  std::vector<double> c(4 * 3);
  for (auto& v : c) v = rng.uniform(-0.1, 0.1);
  const SurfaceModel truth({3, 2}, Rect{}, c);
  PointCloud cloud;
  for (int k = 0; k < 200; ++k) {
    const Vec2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    cloud.push_back({p.x, p.y, truth.height(p)});
  }
  const auto fit = fit_surface(cloud, {3, 2}, Rect{});
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(fit.model.coeffs()[i], c[i], 1e-10) << i;
}

TEST(SurfaceFitTest, RankDeficientIsNamed) {
  PointCloud cloud;
  for (int k = 0; k < 20; ++k) cloud.push_back({0.5, -2.0 + 0.2 * k, 0.0});
  try {
    fit_surface(cloud, {1, 1}, Rect{});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("rank"), std::string::npos) << e.what();
  }
}

TEST(SurfaceFitTest, TooFewPointsAndOutOfBounds) {
  EXPECT_THROW(fit_surface({{0, 0, 0}, {1, 1, 0}}, {1, 1}, Rect{}), ConfigError);
  auto cloud = grid_cloud(5, [](double, double) { return 0.0; });
  cloud.push_back({3.0, 0.0, 0.0});
  EXPECT_THROW(fit_surface(cloud, {1, 1}, Rect{}), ConfigError);
}

TEST(SurfaceModelTest, NamedSurfaces) {
  const auto flat = named_surface("flat");
  EXPECT_EQ(flat.height({0.3, -1.2}), 0.0);
  const auto fa = flat.slope_angles({1.0, 1.0});
  EXPECT_EQ(fa.alpha_x, 0.0);
  EXPECT_EQ(fa.alpha_y, 0.0);

  const auto tilt = named_surface("tilt_x_01");
  EXPECT_NEAR(tilt.height({1.0, 3.0 - 2.0}), 0.1, 1e-15);
  EXPECT_NEAR(tilt.slope_angles({0.0, 0.0}).alpha_x, 0.09967, 1e-5);
  EXPECT_NEAR(tilt.slope_angles({0.0, 0.0}).alpha_y, 0.0, 1e-15);

  const auto bowl = named_surface("bowl_005");
  EXPECT_NEAR(bowl.height({1.0, 1.0}), 0.1, 1e-15);
  EXPECT_NEAR(bowl.slope_angles({1.0, 0.0}).alpha_x, std::atan(0.1), 1e-15);

  EXPECT_THROW(named_surface("moon"), ConfigError);
}

TEST(SurfaceModelTest, ClampedQueriesAreFlagged) {
  const auto tilt = named_surface("tilt_x_01");
  bool clamped = false;
  EXPECT_NEAR(tilt.height({1.0, 0.0}, clamped), 0.1, 1e-15);
  EXPECT_FALSE(clamped);
  EXPECT_NEAR(tilt.height({5.0, 0.0}, clamped), 0.2, 1e-15);
  EXPECT_TRUE(clamped);
}

TEST(SurfaceModelTest, PartialsMatchFiniteDifferences) {
  Rng rng(21);
  std::vector<double> c(16);
  for (auto& v : c) v = rng.uniform(-0.05, 0.05);
  const SurfaceModel s({3, 3}, Rect{}, c);
  const double h = 1e-5;
  for (int k = 0; k < 100; ++k) {
    const Vec2 p{rng.uniform(-1.9, 1.9), rng.uniform(-1.9, 1.9)};
    const Vec2 g = s.gradient(p);
    const double fx = (s.height({p.x + h, p.y}) - s.height({p.x - h, p.y})) / (2 * h);
    const double fy = (s.height({p.x, p.y + h}) - s.height({p.x, p.y - h})) / (2 * h);
    EXPECT_NEAR(g.x, fx, 1e-6 * std::max(1.0, std::abs(fx)));
    EXPECT_NEAR(g.y, fy, 1e-6 * std::max(1.0, std::abs(fy)));
  }
}

TEST(SurfaceModelTest, ConstructorValidates) {
  EXPECT_THROW(SurfaceModel({1, 1}, Rect{}, {0.0, 0.0}), ConfigError);
  EXPECT_THROW(SurfaceModel({1, 1}, Rect{1, -1, 0, 1}, {0, 0, 0, 0}), ConfigError);
}

}  // namespace
}  // namespace golfputt
