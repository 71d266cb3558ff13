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
#include <span>
#include <vector>

#include "golfputt/geometry.hpp"
#include "golfputt/simd/kernels.hpp"
#include "golfputt/surface.hpp"

namespace golfputt {

struct BallParams {
  double mass_kg = 0.046;
  double gravity = 9.81;
  double rolling_resistance = 0.15;

  void validate() const;
};

/// Planar ball state q = [x, y, xdot, ydot] in the I frame.
struct BallState {
  double x = 0.0;
  double y = 0.0;
  double xdot = 0.0;
  double ydot = 0.0;

  Vec2 position() const { return {x, y}; }
  Vec2 velocity() const { return {xdot, ydot}; }
  double speed() const { return std::hypot(xdot, ydot); }
  static BallState at(const Vec2& p, const Vec2& v = {}) { return {p.x, p.y, v.x, v.y}; }
};

struct HoleSpec {
  Vec2 center{};
  double radius = 0.054;
  double capture_speed = 0.5;
};

enum class Outcome { kStopped, kCaptured, kLeftGreen, kTimeLimit };

const char* to_string(Outcome o);

struct RolloutSample {
  double t;
  BallState q;
};

struct Rollout {
  std::vector<RolloutSample> samples;
  Outcome outcome = Outcome::kStopped;

  const BallState& final_state() const { return samples.back().q; }
  double duration() const { return samples.back().t; }
};

struct SimOptions {
  double dt = 1e-3;
  double t_max = 30.0;
  double v_stop = 1e-2;   // below this speed static friction may hold the ball
  double v_eps = 1e-4;    // friction dead zone around zero speed
  bool hole_capture = true;
  bool record = true;     // false keeps only the first and last samples
};

/// Ball acceleration (xddot, yddot) from slope forces and rolling resistance.
Vec2 ball_accel(const BallParams& params, const SurfaceModel& surface, const BallState& state,
                double v_eps = SimOptions{}.v_eps);

/// Fixed-step RK4 rollout. Terminates when the ball comes to rest, is
/// captured by the hole, leaves the surface bounds or reaches t_max.
/// Throws NumericalError if the state becomes non-finite.
Rollout simulate(const BallParams& params, const SurfaceModel& surface, const HoleSpec& hole,
                 const BallState& q0, const SimOptions& opts = {});

struct RolloutEnd {
  BallState state;
  Outcome outcome;
  double t;
  bool turned_back = false;  // velocity at some step opposed the initial velocity
};

/// Many independent rollouts stepped together through the data-parallel
/// kernels. Same termination rules as simulate(); no trajectories recorded.
std::vector<RolloutEnd> simulate_batch(const BallParams& params, const SurfaceModel& surface,
                                       const HoleSpec& hole, std::span<const BallState> q0,
                                       const SimOptions& opts = {},
                                       const simd::KernelTable& kernels = simd::active());

struct TrainingStroke {
  BallState q0;
  Vec2 end;  // rest position, end velocity is zero
};

struct TrainingStrokeOptions {
  std::size_t count = 3000;
  Rect start_region{};     // starts are drawn uniformly from here
  double v_min = 0.1;      // m/s
  double v_max = 4.0;
  std::uint64_t seed = 1;
  SimOptions sim{};
  int max_attempts = 1000;  // per stroke, before giving up on finding one that stays on the green
  bool rest_starts_only = true;  // starts only where static friction can hold a ball at rest
  // Strokes that roll back against their launch direction are redrawn. Such
  // strokes end where a gentler stroke would also end, so keeping them makes
  // the end-to-launch map multi-valued.
  bool direct_only = true;
};

/// True when static friction holds a ball at rest at `p`.
bool can_rest(const BallParams& params, const SurfaceModel& surface, const Vec2& p);

/// Random strokes rolled out to rest on the surface. Strokes whose ball leaves
/// the green, does not settle by t_max or (with direct_only) turns back are
/// redrawn from the same per-index substream, so the dataset depends only on
/// (seed, index).
std::vector<TrainingStroke> generate_training_strokes(const BallParams& params,
                                                    const SurfaceModel& surface,
                                                    const TrainingStrokeOptions& opts,
                                                    const simd::KernelTable& kernels = simd::active());

}  // namespace golfputt
