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

#include <cstddef>
#include <string_view>
#include <vector>

#include "golfputt/geometry.hpp"
#include "golfputt/simd/kernels.hpp"

namespace golfputt {

/// Axis-aligned rectangle in the I frame, meters.
struct Rect {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;

  bool contains(const Vec2& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  Vec2 clamp(const Vec2& p) const;
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct Point3 {
  double x;
  double y;
  double z;
};

using PointCloud = std::vector<Point3>;

struct SurfaceDegree {
  int x = 3;
  int y = 3;
  bool operator==(const SurfaceDegree&) const = default;
};

struct SlopeAngles {
  double alpha_x;
  double alpha_y;
};

/// Height field z = f_green(x, y) as a tensor-product polynomial
///   f(x, y) = sum_{i<=dx, j<=dy} c[i*(dy+1) + j] x^i y^j
/// over a bounded rectangle. Queries outside the rectangle are clamped onto it.
class SurfaceModel {
 public:
  SurfaceModel(SurfaceDegree degree, Rect bounds, std::vector<double> coeffs);

  SurfaceDegree degree() const { return degree_; }
  const Rect& bounds() const { return bounds_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int i, int j) const { return coeffs_[static_cast<std::size_t>(i * (degree_.y + 1) + j)]; }

  double height(const Vec2& p) const;
  /// As height(); `clamped` reports whether p was outside the bounds.
  double height(const Vec2& p, bool& clamped) const;
  /// Analytic partials (df/dx, df/dy) at the clamped point.
  Vec2 gradient(const Vec2& p) const;
  SlopeAngles slope_angles(const Vec2& p) const;

  simd::PolyView view() const;

 private:
  SurfaceDegree degree_;
  Rect bounds_;
  std::vector<double> coeffs_;
};

struct SurfaceFit {
  SurfaceModel model;
  double rms_residual;  // meters
  std::size_t n_points;
};

/// Least-squares fit of a tensor-product polynomial to the cloud.
/// Throws ConfigError for degenerate input (points out of bounds, too few
/// points, rank-deficient regression matrix).
SurfaceFit fit_surface(const PointCloud& cloud, SurfaceDegree degree, const Rect& bounds);

/// Built-in analytic greens: "flat" (z=0), "tilt_x_01" (z=0.1x),
/// "bowl_005" (z=0.05(x^2+y^2)). Throws ConfigError for other names.
SurfaceModel named_surface(std::string_view name, const Rect& bounds = {});

}  // namespace golfputt
