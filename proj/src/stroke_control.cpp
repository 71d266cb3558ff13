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

#include "golfputt/stroke_control.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/core.h>

#include "golfputt/error.hpp"

namespace golfputt {

void StrokePlantParams::validate() const {
  const double values[] = {club_mass, inertia, gravity, com_distance, viscous_friction,
                           friction_radius, sliding_friction, hit_radius, u_max, gear_ratio};
  for (double v : values)
    if (!(v > 0.0)) throw ConfigError("stroke plant parameters must all be positive");
}

namespace {

double sgn(double v) { return static_cast<double>((0.0 < v) - (v < 0.0)); }

// Solves F' X + X F = -M (Kronecker form, 4 unknowns).
Mat2 solve_lyapunov(const Mat2& f, const Mat2& m) {
  Eigen::Matrix4d op = Eigen::Matrix4d::Zero();
  const Mat2 ft = f.transpose();
  // vec(F' X) = (I kron F') vec(X), vec(X F) = (F' kron I) vec(X); column-major vec.
  for (int col = 0; col < 2; ++col) op.block<2, 2>(2 * col, 2 * col) += ft;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) op.block<2, 2>(2 * r, 2 * c) += ft(r, c) * Mat2::Identity();
  Eigen::Vector4d rhs;
  rhs << -m(0, 0), -m(1, 0), -m(0, 1), -m(1, 1);
  const Eigen::Vector4d v = op.fullPivLu().solve(rhs);
  Mat2 x;
  x << v(0), v(2), v(1), v(3);
  return 0.5 * (x + x.transpose());
}

bool hurwitz(const Mat2& m) {
  const auto ev = m.eigenvalues();
  return ev(0).real() < 0.0 && ev(1).real() < 0.0;
}

}  // namespace

Vec2d plant_deriv(const StrokePlantParams& p, const Vec2d& x, double u) {
  const double phi = x(0);
  const double rate = x(1);
  const double normal = p.club_mass * rate * rate * p.com_distance + p.club_mass * p.gravity * std::cos(phi);
  const double damping =
      p.viscous_friction * rate + p.friction_radius * p.sliding_friction * sgn(rate) * std::abs(normal);
  const double gravity = p.club_mass * p.gravity * p.com_distance * std::sin(phi);
  return {rate, (-gravity - damping + p.gear_ratio * u) / p.inertia};
}

LinearModel linearize(const StrokePlantParams& p, double phi_r) {
  LinearModel m;
  m.a << 0.0, 1.0,
      -(p.club_mass * p.gravity * p.com_distance / p.inertia) * std::cos(phi_r), -p.viscous_friction / p.inertia;
  m.b << 0.0, p.gear_ratio / p.inertia;
  m.c << 1.0, 0.0;
  return m;
}

double care_residual(const Mat2& a, const Vec2d& b, const Mat2& q, double r, const Mat2& p) {
  return (a.transpose() * p + p * a - p * b * b.transpose() * p / r + q).norm();
}

Mat2 solve_care(const Mat2& a, const Vec2d& b, const Mat2& q, double r) {
  if (!(r > 0.0)) throw ConfigError("LQR input weight R must be positive");
  // Stable invariant subspace of the Hamiltonian [[A, -b b'/r], [-Q, -A']].
  Eigen::Matrix4d h;
  h << a, -b * b.transpose() / r, -q, -a.transpose();
  Eigen::EigenSolver<Eigen::Matrix4d> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Hamiltonian eigen-decomposition failed");

  Eigen::Matrix<std::complex<double>, 4, 2> basis;
  int found = 0;
  for (int i = 0; i < 4; ++i) {
    if (es.eigenvalues()(i).real() < 0.0) {
      if (found == 2) throw NumericalError("Hamiltonian has more than two stable eigenvalues");
      basis.col(found++) = es.eigenvectors().col(i);
    }
  }
  if (found != 2) throw NumericalError("Hamiltonian has eigenvalues on the imaginary axis");

  const Eigen::Matrix2cd u = basis.topRows<2>();
  const Eigen::Matrix2cd v = basis.bottomRows<2>();
  Mat2 p = (v * u.inverse()).real();
  p = 0.5 * (p + p.transpose());

  // Newton (Kleinman) refinement from the stabilizing estimate.
  for (int it = 0; it < 4; ++it) {
    const Row2d k = b.transpose() * p / r;
    const Mat2 closed = a - b * k;
    if (!hurwitz(closed)) break;
    const Mat2 next = solve_lyapunov(closed, q + k.transpose() * r * k);
    if (!next.allFinite()) break;
    const bool better = care_residual(a, b, q, r, next) <= care_residual(a, b, q, r, p);
    p = next;
    if (!better) break;
  }
  if (!p.allFinite() || !hurwitz(a - b * (b.transpose() * p / r)))
    throw NumericalError("no stabilizing Riccati solution");
  return p;
}

Vec2d place_observer(const Mat2& a, double pole1, double pole2) {
  // A - L c' = [[-l1, 1], [a21 - l2, a22]]
  const double trace = pole1 + pole2;
  const double det = pole1 * pole2;
  Vec2d l;
  l(0) = a(1, 1) - trace;
  l(1) = det + l(0) * a(1, 1) + a(1, 0);
  return l;
}

GainSchedule::GainSchedule(std::vector<OperatingPoint> points, double step)
    : points_(std::move(points)), step_(step) {
  if (points_.empty()) throw ConfigError("gain schedule needs at least one operating point");
  if (!(step_ > 0.0)) throw ConfigError("gain schedule step must be positive");
}

std::size_t GainSchedule::index_for(double phi) const {
  const double pos = (phi - points_.front().phi) / step_;
  if (!(pos > 0.0)) return 0;  // also catches NaN
  const auto last = points_.size() - 1;
  const auto i = static_cast<std::size_t>(std::llround(pos));
  return std::min(i, last);
}

GainSchedule design_schedule(const StrokePlantParams& p, const ScheduleOptions& opts) {
  p.validate();
  if (!(opts.grid_step > 0.0) || !(opts.grid_limit >= 0.0))
    throw ConfigError("schedule grid step must be positive and the limit non-negative");
  const auto half = static_cast<long>(std::floor(opts.grid_limit / opts.grid_step + 1e-9));
  std::vector<OperatingPoint> points;
  points.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long i = -half; i <= half; ++i) {
    OperatingPoint op;
    op.phi = static_cast<double>(i) * opts.grid_step;
    op.model = linearize(p, op.phi);
    const Mat2& a = op.model.a;
    const Vec2d& b = op.model.b;
    try {
      op.riccati = solve_care(a, b, opts.q, opts.r);
    } catch (const NumericalError& e) {
      throw NumericalError(fmt::format("Riccati solve failed at operating point phi = {:.4f} rad: {}", op.phi, e.what()));
    }
    op.riccati_residual = care_residual(a, b, opts.q, opts.r, op.riccati);
    op.k = b.transpose() * op.riccati / opts.r;
    op.f_u = -(1.0 / b(1)) * Row2d(a(1, 0), a(1, 1));

    const auto cl = (a - b * op.k).eigenvalues();
    double pole1 = opts.observer_factor * cl(0).real();
    double pole2 = opts.observer_factor * cl(1).real();
    if (std::abs(cl(0).imag()) > 0.0) pole1 = pole2 = opts.observer_factor * std::min(cl(0).real(), cl(1).real());
    op.l = place_observer(a, pole1, pole2);
    points.push_back(op);
  }
  return GainSchedule(std::move(points), opts.grid_step);
}

StrokeSimResult simulate_stroke(const StrokePlantParams& p, const GainSchedule& sched,
                                const StrokeRefParams& ref, const StrokeSimOptions& opts) {
  p.validate();
  ref.validate();
  if (!(opts.dt > 0.0)) throw ConfigError("stroke simulation dt must be positive");

  StrokeSimResult res;
  res.target_impact_speed = opts.stroke_enabled ? ref.impact_rate() : 0.0;
  const double t_end = (opts.stroke_enabled ? ref.reset_end() : 0.0) + opts.settle_time;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / opts.dt - 1e-9));
  res.samples.reserve(steps + 1);

  auto reference = [&](double t) {
    return opts.stroke_enabled ? ref_at(ref, t) : RefSample{0.0, 0.0};
  };

  Vec2d x = opts.x0;
  Vec2d xhat = opts.xhat0;
  const double dt = opts.dt;
  for (std::size_t step = 0;; ++step) {
    const double t = static_cast<double>(step) * dt;
    const RefSample r = reference(t);
    const Vec2d w(r.phi, r.phidot);
    const double sched_angle = opts.scheduling == Scheduling::kEstimate ? xhat(0) : x(0);
    const OperatingPoint& op = sched.at(sched_angle);
    const double u_ff = op.f_u * w;
    const double u_fb = opts.feedback_enabled ? double(-op.k * (xhat - w)) : 0.0;
    const double u = std::clamp(u_ff + u_fb, -p.u_max, p.u_max);
    res.samples.push_back({t, x(0), x(1), r.phi, r.phidot, u, xhat(0), xhat(1)});
    if (step == steps) break;

    // Plant and observer together, control held over the step.
    auto rhs = [&](const Eigen::Vector4d& z) {
      const Vec2d xs = z.head<2>();
      const Vec2d xh = z.tail<2>();
      Eigen::Vector4d dz;
      dz.head<2>() = plant_deriv(p, xs, u);
      dz.tail<2>() = op.model.a * xh + op.model.b * u + op.l * (xs(0) - xh(0));
      return dz;
    };
    Eigen::Vector4d z;
    z << x, xhat;
    const Eigen::Vector4d k1 = rhs(z);
    const Eigen::Vector4d k2 = rhs(z + 0.5 * dt * k1);
    const Eigen::Vector4d k3 = rhs(z + 0.5 * dt * k2);
    const Eigen::Vector4d k4 = rhs(z + dt * k3);
    const Eigen::Vector4d zn = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!zn.allFinite()) throw NumericalError(fmt::format("stroke simulation became non-finite at step {}", step + 1));

    if (opts.stroke_enabled && !res.impact_found && t >= ref.strike_start() && t < ref.reset_end() &&
        z(0) < 0.0 && zn(0) >= 0.0) {
      const double frac = -z(0) / (zn(0) - z(0));
      res.impact_found = true;
      res.impact_time = t + frac * dt;
      res.realized_impact_speed = z(1) + frac * (zn(1) - z(1));
    }
    x = zn.head<2>();
    xhat = zn.tail<2>();
  }
  return res;
}

StrokeCalibration calibrate_stroke_speed(const StrokePlantParams& p, const GainSchedule& sched,
                                         const StrokeRefParams& ref_template, double desired_rate,
                                         const StrokeSimOptions& opts, double rel_tol, int max_iter) {
  if (!(desired_rate > 0.0)) throw ConfigError("desired impact rate must be positive");
  StrokeRefParams ref = ref_template;
  auto realized = [&](double stroke_speed) {
    ref.stroke_speed = stroke_speed;
    const StrokeSimResult r = simulate_stroke(p, sched, ref, opts);
    if (!r.impact_found)
      throw NumericalError(fmt::format("club never crossed zero for commanded stroke speed {:.4f} m/s", stroke_speed));
    return r.realized_impact_speed;
  };

  double s0 = desired_rate * ref.hit_radius;
  double f0 = realized(s0) - desired_rate;
  if (std::abs(f0) <= rel_tol * desired_rate) return {s0, f0 + desired_rate, 0};
  double s1 = s0 * desired_rate / (f0 + desired_rate);
  for (int it = 1; it <= max_iter; ++it) {
    const double f1 = realized(s1) - desired_rate;
    if (std::abs(f1) <= rel_tol * desired_rate) return {s1, f1 + desired_rate, it};
    if (f1 == f0) break;
    const double next = s1 - f1 * (s1 - s0) / (f1 - f0);
    s0 = s1;
    f0 = f1;
    s1 = std::max(next, 0.05 * s0);
  }
  throw NumericalError(fmt::format("stroke speed calibration did not converge for {:.4f} rad/s", desired_rate));
}

}  // namespace golfputt
