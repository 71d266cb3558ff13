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

#include <algorithm>
#include <cmath>

#include "golfputt/simd/kernels.hpp"

namespace golfputt::simd {
namespace {

double sgn(double v) { return static_cast<double>((0.0 < v) - (v < 0.0)); }

void poly_eval_point(const PolyView& p, double x, double y, double& z, double& zx, double& zy) {
  x = std::clamp(x, p.x_min, p.x_max);
  y = std::clamp(y, p.y_min, p.y_max);
  const int stride = p.dy + 1;
  z = zx = zy = 0.0;
  for (int i = p.dx; i >= 0; --i) {
    const double* row = p.coeffs + i * stride;
    double r = 0.0;
    double ry = 0.0;
    for (int j = p.dy; j >= 0; --j) {
      ry = ry * y + r;
      r = r * y + row[j];
    }
    zx = zx * x + z;
    z = z * x + r;
    zy = zy * x + ry;
  }
}

void poly_eval(const PolyView& p, const double* xs, const double* ys, std::size_t n, double* z,
               double* zx, double* zy) {
  for (std::size_t k = 0; k < n; ++k) {
    double v, vx, vy;
    poly_eval_point(p, xs[k], ys[k], v, vx, vy);
    if (z) z[k] = v;
    if (zx) zx[k] = vx;
    if (zy) zy[k] = vy;
  }
}

// Literal form of the rolling-ball equations: slope angles via arctan, rolling
// direction via atan2, friction resolved along |cos|, |sin| with sign of the
// velocity component.
void ball_accel(const BallKernelParams& bp, const PolyView& p, BallStatesView s, std::size_t n,
                double* ax, double* ay) {
  for (std::size_t k = 0; k < n; ++k) {
    double z, fx, fy;
    poly_eval_point(p, s.x[k], s.y[k], z, fx, fy);
    const double alpha_x = std::atan(fx);
    const double alpha_y = std::atan(fy);
    double accel_x = -bp.g * std::sin(alpha_x);
    double accel_y = -bp.g * std::sin(alpha_y);
    const double speed = std::hypot(s.vx[k], s.vy[k]);
    if (speed >= bp.v_eps) {
      const double fr = bp.g * bp.mu * std::cos(alpha_x) * std::cos(alpha_y);
      const double beta = std::atan2(s.vy[k], s.vx[k]);
      accel_x -= fr * std::abs(std::cos(beta)) * sgn(s.vx[k]);
      accel_y -= fr * std::abs(std::sin(beta)) * sgn(s.vy[k]);
    }
    ax[k] = accel_x;
    ay[k] = accel_y;
  }
}

void affine(const double* w, const double* bias, std::size_t rows, std::size_t cols,
            const double* in, std::size_t n, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* o = out + r * n;
    const double b = bias ? bias[r] : 0.0;
    for (std::size_t k = 0; k < n; ++k) o[k] = b;
    for (std::size_t c = 0; c < cols; ++c) {
      const double wrc = w[r * cols + c];
      const double* src = in + c * n;
      for (std::size_t k = 0; k < n; ++k) o[k] += wrc * src[k];
    }
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, "scalar", poly_eval, ball_accel, affine, dot, axpy};
  return table;
}

}  // namespace golfputt::simd
