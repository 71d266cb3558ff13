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

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "golfputt/simd/kernels.hpp"

namespace golfputt::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d clamp4(__m256d v, double lo, double hi) {
  return _mm256_min_pd(_mm256_max_pd(v, _mm256_set1_pd(lo)), _mm256_set1_pd(hi));
}

// Copies the last partial block into a zero-padded 4-wide buffer so tail
// lanes go through the same vector arithmetic as the body. Each lane's result
// is then independent of its position in the batch.
struct Tail {
  double v[kLanes] = {0.0, 0.0, 0.0, 0.0};
  Tail(const double* src, std::size_t m) { std::copy(src, src + m, v); }
  __m256d load() const { return _mm256_loadu_pd(v); }
};

inline void store_partial(double* dst, __m256d v, std::size_t m) {
  double tmp[kLanes];
  _mm256_storeu_pd(tmp, v);
  std::copy(tmp, tmp + m, dst);
}

inline void poly4(const PolyView& p, __m256d x, __m256d y, __m256d& z, __m256d& zx,
                  __m256d& zy) {
  x = clamp4(x, p.x_min, p.x_max);
  y = clamp4(y, p.y_min, p.y_max);
  const int stride = p.dy + 1;
  z = zx = zy = _mm256_setzero_pd();
  for (int i = p.dx; i >= 0; --i) {
    const double* row = p.coeffs + i * stride;
    __m256d r = _mm256_setzero_pd();
    __m256d ry = _mm256_setzero_pd();
    for (int j = p.dy; j >= 0; --j) {
      ry = _mm256_fmadd_pd(ry, y, r);
      r = _mm256_fmadd_pd(r, y, _mm256_set1_pd(row[j]));
    }
    zx = _mm256_fmadd_pd(zx, x, z);
    z = _mm256_fmadd_pd(z, x, r);
    zy = _mm256_fmadd_pd(zy, x, ry);
  }
}

void poly_eval(const PolyView& p, const double* xs, const double* ys, std::size_t n, double* z,
               double* zx, double* zy) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d vz, vzx, vzy;
    poly4(p, _mm256_loadu_pd(xs + k), _mm256_loadu_pd(ys + k), vz, vzx, vzy);
    if (z) _mm256_storeu_pd(z + k, vz);
    if (zx) _mm256_storeu_pd(zx + k, vzx);
    if (zy) _mm256_storeu_pd(zy + k, vzy);
  }
  if (k < n) {
    const std::size_t m = n - k;
    __m256d vz, vzx, vzy;
    poly4(p, Tail(xs + k, m).load(), Tail(ys + k, m).load(), vz, vzx, vzy);
    if (z) store_partial(z + k, vz, m);
    if (zx) store_partial(zx + k, vzx, m);
    if (zy) store_partial(zy + k, vzy, m);
  }
}

// Algebraic form: sin(atan s) = s/sqrt(1+s^2), cos(atan s) = 1/sqrt(1+s^2) and
// |cos(beta)| sgn(vx) = vx/|v|, |sin(beta)| sgn(vy) = vy/|v|.
void ball_accel(const BallKernelParams& bp, const PolyView& p, BallStatesView s, std::size_t n,
                double* ax, double* ay) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d neg_g = _mm256_set1_pd(-bp.g);
  const __m256d g_mu = _mm256_set1_pd(bp.g * bp.mu);
  const __m256d v_eps = _mm256_set1_pd(bp.v_eps);
  auto lanes = [&](__m256d x, __m256d y, __m256d vx, __m256d vy, __m256d& out_x, __m256d& out_y) {
    __m256d z, fx, fy;
    poly4(p, x, y, z, fx, fy);
    const __m256d inv_nx = _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_fmadd_pd(fx, fx, one)));
    const __m256d inv_ny = _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_fmadd_pd(fy, fy, one)));
    __m256d accel_x = _mm256_mul_pd(neg_g, _mm256_mul_pd(fx, inv_nx));
    __m256d accel_y = _mm256_mul_pd(neg_g, _mm256_mul_pd(fy, inv_ny));

    const __m256d speed = _mm256_sqrt_pd(_mm256_fmadd_pd(vx, vx, _mm256_mul_pd(vy, vy)));
    const __m256d moving = _mm256_cmp_pd(speed, v_eps, _CMP_GE_OQ);
    // Lanes inside the dead zone divide by a safe 1 and are masked to zero.
    const __m256d safe_speed = _mm256_blendv_pd(one, speed, moving);
    const __m256d fr = _mm256_mul_pd(g_mu, _mm256_mul_pd(inv_nx, inv_ny));
    const __m256d scale = _mm256_and_pd(_mm256_div_pd(fr, safe_speed), moving);
    out_x = _mm256_fnmadd_pd(scale, vx, accel_x);
    out_y = _mm256_fnmadd_pd(scale, vy, accel_y);
  };
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d a_x, a_y;
    lanes(_mm256_loadu_pd(s.x + k), _mm256_loadu_pd(s.y + k), _mm256_loadu_pd(s.vx + k),
          _mm256_loadu_pd(s.vy + k), a_x, a_y);
    _mm256_storeu_pd(ax + k, a_x);
    _mm256_storeu_pd(ay + k, a_y);
  }
  if (k < n) {
    const std::size_t m = n - k;
    __m256d a_x, a_y;
    lanes(Tail(s.x + k, m).load(), Tail(s.y + k, m).load(), Tail(s.vx + k, m).load(),
          Tail(s.vy + k, m).load(), a_x, a_y);
    store_partial(ax + k, a_x, m);
    store_partial(ay + k, a_y, m);
  }
}

void affine(const double* w, const double* bias, std::size_t rows, std::size_t cols,
            const double* in, std::size_t n, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* o = out + r * n;
    const double* wr = w + r * cols;
    const __m256d b = _mm256_set1_pd(bias ? bias[r] : 0.0);
    std::size_t k = 0;
    for (; k + kLanes <= n; k += kLanes) {
      __m256d acc = b;
      for (std::size_t c = 0; c < cols; ++c)
        acc = _mm256_fmadd_pd(_mm256_set1_pd(wr[c]), _mm256_loadu_pd(in + c * n + k), acc);
      _mm256_storeu_pd(o + k, acc);
    }
    for (; k < n; ++k) {
      double acc = bias ? bias[r] : 0.0;
      for (std::size_t c = 0; c < cols; ++c) acc = std::fma(wr[c], in[c * n + k], acc);
      o[k] = acc;
    }
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 * kLanes <= n; k += 2 * kLanes) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + kLanes), _mm256_loadu_pd(b + k + kLanes), acc1);
  }
  for (; k + kLanes <= n; k += kLanes)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc0);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes)
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
  for (; k < n; ++k) y[k] = std::fma(alpha, x[k], y[k]);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::kAvx2, "avx2", poly_eval, ball_accel, affine, dot, axpy};
  return table;
}

}  // namespace golfputt::simd
