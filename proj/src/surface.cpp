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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>

#include "golfputt/error.hpp"

namespace golfputt {

Vec2 Rect::clamp(const Vec2& p) const {
  return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
}

SurfaceModel::SurfaceModel(SurfaceDegree degree, Rect bounds, std::vector<double> coeffs)
    : degree_(degree), bounds_(bounds), coeffs_(std::move(coeffs)) {
  if (degree_.x < 0 || degree_.y < 0 || degree_.x > simd::kMaxDegree || degree_.y > simd::kMaxDegree)
    throw ConfigError(fmt::format("surface degree ({}, {}) outside [0, {}]", degree_.x, degree_.y,
                                  simd::kMaxDegree));
  if (!(bounds_.x_min < bounds_.x_max) || !(bounds_.y_min < bounds_.y_max))
    throw ConfigError("surface bounds must satisfy min < max on both axes");
  const auto expected = static_cast<std::size_t>((degree_.x + 1) * (degree_.y + 1));
  if (coeffs_.size() != expected)
    throw ConfigError(fmt::format("surface expects {} coefficients for degree ({}, {}), got {}",
                                  expected, degree_.x, degree_.y, coeffs_.size()));
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw ConfigError("surface coefficients must be finite");
}

simd::PolyView SurfaceModel::view() const {
  return {coeffs_.data(), degree_.x,     degree_.y,     bounds_.x_min,
          bounds_.x_max,  bounds_.y_min, bounds_.y_max};
}

double SurfaceModel::height(const Vec2& p) const {
  bool clamped = false;
  return height(p, clamped);
}

double SurfaceModel::height(const Vec2& p, bool& clamped) const {
  clamped = !bounds_.contains(p);
  double z = 0.0;
  simd::scalar_kernels().poly_eval(view(), &p.x, &p.y, 1, &z, nullptr, nullptr);
  return z;
}

Vec2 SurfaceModel::gradient(const Vec2& p) const {
  Vec2 g;
  simd::scalar_kernels().poly_eval(view(), &p.x, &p.y, 1, nullptr, &g.x, &g.y);
  return g;
}

SlopeAngles SurfaceModel::slope_angles(const Vec2& p) const {
  const Vec2 g = gradient(p);
  return {std::atan(g.x), std::atan(g.y)};
}

SurfaceFit fit_surface(const PointCloud& cloud, SurfaceDegree degree, const Rect& bounds) {
  if (degree.x < 0 || degree.y < 0 || degree.x > simd::kMaxDegree || degree.y > simd::kMaxDegree)
    throw ConfigError(fmt::format("surface degree ({}, {}) outside [0, {}]", degree.x, degree.y,
                                  simd::kMaxDegree));
  const int stride = degree.y + 1;
  const int n_basis = (degree.x + 1) * stride;
  const auto n = static_cast<Eigen::Index>(cloud.size());
  if (n < n_basis)
    throw ConfigError(fmt::format("point cloud has {} points, degree ({}, {}) needs at least {}",
                                  cloud.size(), degree.x, degree.y, n_basis));

  Eigen::MatrixXd design(n, n_basis);
  Eigen::VectorXd z(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Point3& pt = cloud[static_cast<std::size_t>(k)];
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y) || !std::isfinite(pt.z))
      throw ConfigError(fmt::format("point {} is not finite", k));
    if (!bounds.contains({pt.x, pt.y}))
      throw ConfigError(fmt::format("point {} ({}, {}) lies outside the green bounds", k, pt.x, pt.y));
    double xi = 1.0;
    for (int i = 0; i <= degree.x; ++i, xi *= pt.x) {
      double yj = 1.0;
      for (int j = 0; j <= degree.y; ++j, yj *= pt.y) design(k, i * stride + j) = xi * yj;
    }
    z(k) = pt.z;
  }

  // Column scaling keeps the rank decision independent of the units.
  const Eigen::VectorXd col_norm = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < n_basis; ++c) {
    if (col_norm(c) == 0.0)
      throw ConfigError(fmt::format("rank-deficient regression: basis x^{} y^{} vanishes on every point",
                                    c / stride, c % stride));
    design.col(c) /= col_norm(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < n_basis)
    throw ConfigError(fmt::format(
        "rank-deficient regression: rank {} < {} basis functions for degree ({}, {}); the points do "
        "not span enough distinct x and y values",
        qr.rank(), n_basis, degree.x, degree.y));
  Eigen::VectorXd c = qr.solve(z);
  const double rms = std::sqrt((design * c - z).squaredNorm() / static_cast<double>(n));
  c.array() /= col_norm.array();

  std::vector<double> coeffs(c.data(), c.data() + c.size());
  return {SurfaceModel(degree, bounds, std::move(coeffs)), rms, cloud.size()};
}

SurfaceModel named_surface(std::string_view name, const Rect& bounds) {
  if (name == "flat") return SurfaceModel({0, 0}, bounds, {0.0});
  if (name == "tilt_x_01") return SurfaceModel({1, 0}, bounds, {0.0, 0.1});
  if (name == "bowl_005") return SurfaceModel({2, 2}, bounds, {0, 0, 0.05, 0, 0, 0, 0.05, 0, 0});
  throw ConfigError(fmt::format("unknown named surface '{}' (expected flat, tilt_x_01, bowl_005)", name));
}

}  // namespace golfputt
