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

#include "golfputt/simd/kernels.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "golfputt/random.hpp"

namespace golfputt::simd {
namespace {

// Sizes straddle the vector width so that both the packed body and the scalar
// tail are exercised.
const std::size_t kSizes[] = {0, 1, 3, 4, 5, 8, 17, 103};

const KernelTable* avx2_or_skip() { return avx2_kernels(); }

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

TEST(KernelsTest, ActiveTableIsOneOfTheVariants) {
  const KernelTable& a = active();
  EXPECT_TRUE(&a == &scalar_kernels() || &a == avx2_kernels());
}

TEST(KernelsTest, PolyEvalEquivalence) {
  const KernelTable* v = avx2_or_skip();
  if (!v) GTEST_SKIP() << "AVX2 variant unavailable";
  Rng rng(1);
  for (int dx : {0, 1, 3, 5}) {
    for (int dy : {0, 2, 3}) {
      const auto c = random_vec(rng, static_cast<std::size_t>((dx + 1) * (dy + 1)), -0.2, 0.2);
      const PolyView p{c.data(), dx, dy, -2.0, 2.0, -2.0, 2.0};
      for (std::size_t n : kSizes) {
        // Some points fall outside the rectangle to cover clamping.
        const auto xs = random_vec(rng, n, -2.5, 2.5);
        const auto ys = random_vec(rng, n, -2.5, 2.5);
        std::vector<double> z0(n), zx0(n), zy0(n), z1(n), zx1(n), zy1(n);
        scalar_kernels().poly_eval(p, xs.data(), ys.data(), n, z0.data(), zx0.data(), zy0.data());
        v->poly_eval(p, xs.data(), ys.data(), n, z1.data(), zx1.data(), zy1.data());
        for (std::size_t i = 0; i < n; ++i) {
          EXPECT_NEAR(z0[i], z1[i], 1e-13);
          EXPECT_NEAR(zx0[i], zx1[i], 1e-13);
          EXPECT_NEAR(zy0[i], zy1[i], 1e-13);
        }
      }
    }
  }
}

TEST(KernelsTest, PolyEvalNullOutputs) {
  const std::vector<double> c{0.0, 0.0, 0.1, 0.0};  // z = 0.1 x
  const PolyView p{c.data(), 1, 1, -2.0, 2.0, -2.0, 2.0};
  const double xs[] = {1.0, 3.0, -1.0, 0.5, 0.25};
  const double ys[] = {0.0, 0.0, 1.0, 1.0, 0.0};
  for (const KernelTable* k : {&scalar_kernels(), avx2_kernels()}) {
    if (!k) continue;
    double zx[5];
    k->poly_eval(p, xs, ys, 5, nullptr, zx, nullptr);
    for (double g : zx) EXPECT_DOUBLE_EQ(g, 0.1) << k->name;
    double z[5];
    k->poly_eval(p, xs, ys, 5, z, nullptr, nullptr);
    EXPECT_DOUBLE_EQ(z[1], 0.2) << k->name;  // clamped to x = 2
  }
}

TEST(KernelsTest, BallAccelEquivalence) {
  const KernelTable* v = avx2_or_skip();
  if (!v) GTEST_SKIP() << "AVX2 variant unavailable";
  Rng rng(2);
  const auto c = random_vec(rng, 16, -0.1, 0.1);
  const PolyView p{c.data(), 3, 3, -2.0, 2.0, -2.0, 2.0};
  const BallKernelParams bp{};
  for (std::size_t n : kSizes) {
    auto x = random_vec(rng, n, -2, 2);
    auto y = random_vec(rng, n, -2, 2);
    auto vx = random_vec(rng, n, -3, 3);
    auto vy = random_vec(rng, n, -3, 3);
    // Inside and at the edge of the friction dead zone, plus exact rest.
    for (std::size_t i = 0; i < n; i += 3) {
      vx[i] = (i % 2 ? 5e-5 : 0.0);
      vy[i] = 0.0;
    }
    std::vector<double> ax0(n), ay0(n), ax1(n), ay1(n);
    const BallStatesView s{x.data(), y.data(), vx.data(), vy.data()};
    scalar_kernels().ball_accel(bp, p, s, n, ax0.data(), ay0.data());
    v->ball_accel(bp, p, s, n, ax1.data(), ay1.data());
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(ax0[i], ax1[i], 1e-12) << i;
      EXPECT_NEAR(ay0[i], ay1[i], 1e-12) << i;
    }
  }
}

TEST(KernelsTest, BallAccelFlatOracle) {
  const std::vector<double> c{0.0};
  const PolyView p{c.data(), 0, 0, -2.0, 2.0, -2.0, 2.0};
  const double x[] = {0, 0, 0, 0, 0};
  const double vx[] = {1.0, 0.0, -2.0, 0.0, 3.0};
  const double vy[] = {0.0, 0.0, 0.0, 1.0, 4.0};
  for (const KernelTable* k : {&scalar_kernels(), avx2_kernels()}) {
    if (!k) continue;
    double ax[5], ay[5];
    k->ball_accel(BallKernelParams{}, p, {x, x, vx, vy}, 5, ax, ay);
    EXPECT_NEAR(ax[0], -1.4715, 1e-12) << k->name;
    EXPECT_EQ(ax[1], 0.0);
    EXPECT_EQ(ay[1], 0.0);
    EXPECT_NEAR(ax[2], 1.4715, 1e-12);
    EXPECT_NEAR(ay[3], -1.4715, 1e-12);
    // |cos(beta)| weighting of each axis.
    EXPECT_NEAR(ax[4], -1.4715 * 0.6, 1e-12);
    EXPECT_NEAR(ay[4], -1.4715 * 0.8, 1e-12);
  }
}

TEST(KernelsTest, AffineDotAxpyEquivalence) {
  const KernelTable* v = avx2_or_skip();
  if (!v) GTEST_SKIP() << "AVX2 variant unavailable";
  Rng rng(3);
  for (std::size_t n : kSizes) {
    for (std::size_t rows : {1u, 2u, 30u}) {
      for (std::size_t cols : {1u, 4u, 30u}) {
        const auto w = random_vec(rng, rows * cols, -1, 1);
        const auto b = random_vec(rng, rows, -1, 1);
        const auto in = random_vec(rng, cols * n, -2, 2);
        std::vector<double> o0(rows * n), o1(rows * n);
        scalar_kernels().affine(w.data(), b.data(), rows, cols, in.data(), n, o0.data());
        v->affine(w.data(), b.data(), rows, cols, in.data(), n, o1.data());
        for (std::size_t i = 0; i < o0.size(); ++i) EXPECT_NEAR(o0[i], o1[i], 1e-12);
      }
    }
    const auto a = random_vec(rng, n, -1, 1);
    const auto b = random_vec(rng, n, -1, 1);
    EXPECT_NEAR(scalar_kernels().dot(a.data(), b.data(), n), v->dot(a.data(), b.data(), n), 1e-12);
    auto y0 = random_vec(rng, n, -1, 1);
    auto y1 = y0;
    scalar_kernels().axpy(0.37, a.data(), y0.data(), n);
    v->axpy(0.37, a.data(), y1.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y0[i], y1[i], 1e-15);
  }
}

TEST(KernelsTest, AffineOracle) {
  // 2x3 weights, two samples.
  const double w[] = {1, 2, 3, 4, 5, 6};
  const double b[] = {0.5, -1};
  const double in[] = {1, 2, 0, 1, -1, 0};  // feature-major: f0=(1,2) f1=(0,1) f2=(-1,0)
  for (const KernelTable* k : {&scalar_kernels(), avx2_kernels()}) {
    if (!k) continue;
    double out[4];
    k->affine(w, b, 2, 3, in, 2, out);
    EXPECT_DOUBLE_EQ(out[0], 0.5 + 1 - 3);
    EXPECT_DOUBLE_EQ(out[1], 0.5 + 2 + 2);
    EXPECT_DOUBLE_EQ(out[2], -1 + 4 - 6);
    EXPECT_DOUBLE_EQ(out[3], -1 + 8 + 5);
  }
}

}  // namespace
}  // namespace golfputt::simd
