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

// Data-parallel inner loops. Every kernel has a portable scalar reference and,
// where the target supports it, an AVX2/FMA variant. The variant is picked once
// at startup from the CPU features; GOLFPUTT_SIMD=scalar|avx2 overrides it.
// Variants agree to rounding, not bit-for-bit.

namespace golfputt::simd {

enum class Isa { kScalar, kAvx2 };

/// Highest supported polynomial degree per axis for the surface kernels.
inline constexpr int kMaxDegree = 12;

/// Tensor-product polynomial z = sum_ij c[i*(dy+1)+j] x^i y^j with the
/// rectangle used to clamp query points.
struct PolyView {
  const double* coeffs = nullptr;
  int dx = 0;
  int dy = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

struct BallKernelParams {
  double g = 9.81;
  double mu = 0.15;
  double v_eps = 1e-4;  // friction dead zone
};

/// Structure-of-arrays view of n ball states.
struct BallStatesView {
  const double* x;
  const double* y;
  const double* vx;
  const double* vy;
};

struct KernelTable {
  Isa isa;
  std::string_view name;

  // z, dz/dx, dz/dy at n points (clamped to the rectangle). Any output may be null.
  void (*poly_eval)(const PolyView& p, const double* xs, const double* ys, std::size_t n,
                    double* z, double* zx, double* zy);

  // Rolling-ball accelerations on the polynomial green.
  void (*ball_accel)(const BallKernelParams& bp, const PolyView& p, BallStatesView s,
                     std::size_t n, double* ax, double* ay);

  // out[r*n + k] = bias[r] + sum_c w[r*cols + c] * in[c*n + k]
  void (*affine)(const double* w, const double* bias, std::size_t rows, std::size_t cols,
                 const double* in, std::size_t n, double* out);

  double (*dot)(const double* a, const double* b, std::size_t n);

  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Null when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_kernels();

/// The table selected for this process.
const KernelTable& active();

}  // namespace golfputt::simd
