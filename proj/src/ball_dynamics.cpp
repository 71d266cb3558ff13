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

#include "golfputt/ball_dynamics.hpp"

#include <cmath>
#include <fmt/core.h>
#include <numbers>
#include <optional>

#include "golfputt/error.hpp"
#include "golfputt/random.hpp"

namespace golfputt {

void BallParams::validate() const {
  if (!(mass_kg > 0.0) || !(gravity > 0.0))
    throw ConfigError("ball mass and gravity must be positive");
  if (!(rolling_resistance >= 0.0)) throw ConfigError("ball rolling resistance must be non-negative");
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kStopped: return "stopped";
    case Outcome::kCaptured: return "captured";
    case Outcome::kLeftGreen: return "left_green";
    case Outcome::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

namespace {

simd::BallKernelParams kernel_params(const BallParams& p, double v_eps) {
  return {p.gravity, p.rolling_resistance, v_eps};
}

Vec2 accel_with(const simd::KernelTable& k, const BallParams& params, const SurfaceModel& surface,
                const BallState& s, double v_eps) {
  Vec2 a;
  k.ball_accel(kernel_params(params, v_eps), surface.view(), {&s.x, &s.y, &s.xdot, &s.ydot}, 1,
               &a.x, &a.y);
  return a;
}

bool holds_at_rest(const BallParams& params, const Vec2& grad) {
  const double ax = std::atan(grad.x);
  const double ay = std::atan(grad.y);
  const double downslope = params.gravity * std::hypot(std::sin(ax), std::sin(ay));
  return downslope <= params.gravity * params.rolling_resistance * std::cos(ax) * std::cos(ay);
}

// Terminal events evaluated at a sample; `grad` is the surface gradient there.
std::optional<Outcome> classify(const BallParams& params, const Rect& bounds, const HoleSpec& hole,
                                const SimOptions& opts, const BallState& q, const Vec2& grad) {
  const Vec2 pos = q.position();
  if (!bounds.contains(pos)) return Outcome::kLeftGreen;
  const double speed = q.speed();
  if (opts.hole_capture && (pos - hole.center).norm() < hole.radius && speed < hole.capture_speed)
    return Outcome::kCaptured;
  if (speed < opts.v_stop && holds_at_rest(params, grad)) return Outcome::kStopped;
  return std::nullopt;
}

// Residual slow motion is finished analytically under the current deceleration
// so the rest point does not depend on which step crossed v_stop.
RolloutSample settle(const BallState& q, double t, const Vec2& accel) {
  const double speed = q.speed();
  BallState rest = q;
  rest.xdot = rest.ydot = 0.0;
  if (speed == 0.0) return {t, rest};
  const Vec2 dir = q.velocity() / speed;
  const double decel = -accel.dot(dir);
  if (!(decel > 0.0)) return {t, rest};
  const double dist = 0.5 * speed * speed / decel;
  rest.x += dist * dir.x;
  rest.y += dist * dir.y;
  return {t + speed / decel, rest};
}

bool finite(const BallState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.xdot) && std::isfinite(s.ydot);
}

void check_options(const SimOptions& opts) {
  if (!(opts.dt > 0.0)) throw ConfigError("simulation dt must be positive");
  if (!(opts.t_max > 0.0)) throw ConfigError("simulation t_max must be positive");
}

}  // namespace

Vec2 ball_accel(const BallParams& params, const SurfaceModel& surface, const BallState& state,
                double v_eps) {
  return accel_with(simd::scalar_kernels(), params, surface, state, v_eps);
}

Rollout simulate(const BallParams& params, const SurfaceModel& surface, const HoleSpec& hole,
                 const BallState& q0, const SimOptions& opts) {
  check_options(opts);
  const auto& k = simd::scalar_kernels();
  const double dt = opts.dt;
  auto f = [&](const BallState& s) { return accel_with(k, params, surface, s, opts.v_eps); };

  if (!finite(q0)) throw NumericalError("initial ball state is not finite (step 0)");
  Rollout out;
  out.samples.push_back({0.0, q0});
  BallState q = q0;
  for (std::size_t step = 0;; ++step) {
    const double t = static_cast<double>(step) * dt;
    if (auto event = classify(params, surface.bounds(), hole, opts, q, surface.gradient(q.position()))) {
      out.outcome = *event;
      const RolloutSample last = *event == Outcome::kStopped ? settle(q, t, f(q)) : RolloutSample{t, q};
      if (opts.record || step == 0) {
        // samples.back() already holds (t, q)
        if (last.t > t)
          out.samples.push_back(last);
        else
          out.samples.back() = last;
      } else {
        out.samples.push_back(last);
      }
      return out;
    }
    if (t >= opts.t_max) {
      out.outcome = Outcome::kTimeLimit;
      if (!opts.record && step > 0) out.samples.push_back({t, q});
      return out;
    }

    const Vec2 p = q.position();
    const Vec2 v = q.velocity();
    const Vec2 a1 = f(q);
    const Vec2 p2 = p + 0.5 * dt * v, v2 = v + 0.5 * dt * a1;
    const Vec2 a2 = f(BallState::at(p2, v2));
    const Vec2 p3 = p + 0.5 * dt * v2, v3 = v + 0.5 * dt * a2;
    const Vec2 a3 = f(BallState::at(p3, v3));
    const Vec2 p4 = p + dt * v3, v4 = v + dt * a3;
    const Vec2 a4 = f(BallState::at(p4, v4));
    q = BallState::at(p + (dt / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4),
                      v + (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4));
    if (!finite(q)) throw NumericalError(fmt::format("ball state became non-finite at step {}", step + 1));
    if (opts.record) out.samples.push_back({static_cast<double>(step + 1) * dt, q});
  }
}

std::vector<RolloutEnd> simulate_batch(const BallParams& params, const SurfaceModel& surface,
                                       const HoleSpec& hole, std::span<const BallState> q0,
                                       const SimOptions& opts, const simd::KernelTable& kernels) {
  check_options(opts);
  const double dt = opts.dt;
  const simd::PolyView poly = surface.view();
  const simd::BallKernelParams kp = kernel_params(params, opts.v_eps);

  std::vector<RolloutEnd> result(q0.size());
  std::vector<std::size_t> lane(q0.size());
  std::vector<double> x(q0.size()), y(q0.size()), vx(q0.size()), vy(q0.size());
  std::vector<double> v0x(q0.size()), v0y(q0.size());
  std::vector<char> turned(q0.size(), 0);
  for (std::size_t i = 0; i < q0.size(); ++i) {
    if (!finite(q0[i])) throw NumericalError(fmt::format("initial state of rollout {} is not finite (step 0)", i));
    lane[i] = i;
    x[i] = q0[i].x;
    y[i] = q0[i].y;
    vx[i] = q0[i].xdot;
    vy[i] = q0[i].ydot;
    v0x[i] = q0[i].xdot;
    v0y[i] = q0[i].ydot;
  }
  std::vector<double> gx(q0.size()), gy(q0.size());
  std::vector<double> px(q0.size()), py(q0.size());
  std::vector<double> ax[4], ay[4], sv_x[3], sv_y[3];
  for (auto* group : {ax, ay})
    for (int s = 0; s < 4; ++s) group[s].resize(q0.size());
  for (auto* group : {sv_x, sv_y})
    for (int s = 0; s < 3; ++s) group[s].resize(q0.size());

  std::size_t m = q0.size();
  for (std::size_t step = 0; m > 0; ++step) {
    const double t = static_cast<double>(step) * dt;

    kernels.poly_eval(poly, x.data(), y.data(), m, nullptr, gx.data(), gy.data());
    std::size_t w = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const BallState q{x[i], y[i], vx[i], vy[i]};
      auto event = classify(params, surface.bounds(), hole, opts, q, {gx[i], gy[i]});
      if (!event && t >= opts.t_max) event = Outcome::kTimeLimit;
      if (event) {
        RolloutSample last{t, q};
        if (*event == Outcome::kStopped) last = settle(q, t, accel_with(kernels, params, surface, q, opts.v_eps));
        result[lane[i]] = {last.q, *event, last.t, turned[i] != 0};
        continue;
      }
      lane[w] = lane[i];
      v0x[w] = v0x[i];
      v0y[w] = v0y[i];
      turned[w] = turned[i];
      x[w] = x[i];
      y[w] = y[i];
      vx[w] = vx[i];
      vy[w] = vy[i];
      ++w;
    }
    m = w;
    if (m == 0) break;

    // RK4 across all live lanes.
    kernels.ball_accel(kp, poly, {x.data(), y.data(), vx.data(), vy.data()}, m, ax[0].data(), ay[0].data());
    const double step_size[3] = {0.5 * dt, 0.5 * dt, dt};
    const double* vel_x = vx.data();
    const double* vel_y = vy.data();
    for (int s = 0; s < 3; ++s) {
      const double h = step_size[s];
      for (std::size_t i = 0; i < m; ++i) {
        px[i] = x[i] + h * vel_x[i];
        py[i] = y[i] + h * vel_y[i];
        sv_x[s][i] = vx[i] + h * ax[s][i];
        sv_y[s][i] = vy[i] + h * ay[s][i];
      }
      kernels.ball_accel(kp, poly, {px.data(), py.data(), sv_x[s].data(), sv_y[s].data()}, m,
                         ax[s + 1].data(), ay[s + 1].data());
      vel_x = sv_x[s].data();
      vel_y = sv_y[s].data();
    }
    for (std::size_t i = 0; i < m; ++i) {
      x[i] += (dt / 6.0) * (vx[i] + 2.0 * sv_x[0][i] + 2.0 * sv_x[1][i] + sv_x[2][i]);
      y[i] += (dt / 6.0) * (vy[i] + 2.0 * sv_y[0][i] + 2.0 * sv_y[1][i] + sv_y[2][i]);
      vx[i] += (dt / 6.0) * (ax[0][i] + 2.0 * ax[1][i] + 2.0 * ax[2][i] + ax[3][i]);
      vy[i] += (dt / 6.0) * (ay[0][i] + 2.0 * ay[1][i] + 2.0 * ay[2][i] + ay[3][i]);
      if (!finite({x[i], y[i], vx[i], vy[i]}))
        throw NumericalError(fmt::format("ball state of rollout {} became non-finite at step {}", lane[i], step + 1));
      if (vx[i] * v0x[i] + vy[i] * v0y[i] < 0.0) turned[i] = 1;
    }
  }
  return result;
}

bool can_rest(const BallParams& params, const SurfaceModel& surface, const Vec2& p) {
  return holds_at_rest(params, surface.gradient(p));
}

std::vector<TrainingStroke> generate_training_strokes(const BallParams& params,
                                                    const SurfaceModel& surface,
                                                    const TrainingStrokeOptions& opts,
                                                    const simd::KernelTable& kernels) {
  params.validate();
  if (opts.count == 0) throw ConfigError("training stroke count must be positive");
  if (!(opts.v_min > 0.0) || !(opts.v_min < opts.v_max))
    throw ConfigError("training velocity range must satisfy 0 < v_min < v_max");

  std::vector<Rng> streams;
  streams.reserve(opts.count);
  for (std::size_t i = 0; i < opts.count; ++i) streams.emplace_back(opts.seed, i);

  const Rect& r = opts.start_region;
  auto draw = [&](Rng& rng) {
    double px = 0.0, py = 0.0;
    for (int k = 0;; ++k) {
      if (k >= opts.max_attempts)
        throw ConfigError(fmt::format("no start position in {} draws where the ball can rest; the start region is "
                                      "steeper than static friction holds",
                                      opts.max_attempts));
      px = rng.uniform(r.x_min, r.x_max);
      py = rng.uniform(r.y_min, r.y_max);
      if (!opts.rest_starts_only || can_rest(params, surface, {px, py})) break;
    }
    const double speed = rng.uniform(opts.v_min, opts.v_max);
    const double dir = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return BallState{px, py, speed * std::cos(dir), speed * std::sin(dir)};
  };

  SimOptions sim = opts.sim;
  sim.hole_capture = false;
  sim.record = false;

  std::vector<TrainingStroke> out(opts.count);
  std::vector<std::size_t> pending(opts.count);
  for (std::size_t i = 0; i < opts.count; ++i) pending[i] = i;
  std::vector<BallState> starts;
  for (int attempt = 0; !pending.empty(); ++attempt) {
    if (attempt >= opts.max_attempts)
      throw NumericalError(fmt::format(
          "{} training strokes still leave the green after {} draws; widen the green or lower v_max",
          pending.size(), opts.max_attempts));
    starts.clear();
    for (std::size_t i : pending) starts.push_back(draw(streams[i]));
    const auto ends = simulate_batch(params, surface, HoleSpec{}, starts, sim, kernels);
    std::vector<std::size_t> retry;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      if (ends[k].outcome == Outcome::kStopped && !(opts.direct_only && ends[k].turned_back))
        out[pending[k]] = {starts[k], ends[k].state.position()};
      else
        retry.push_back(pending[k]);
    }
    pending.swap(retry);
  }
  return out;
}

}  // namespace golfputt
