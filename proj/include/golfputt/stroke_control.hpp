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

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "golfputt/stroke_reference.hpp"

namespace golfputt {

/// Single-body model of the stroke device (motor, belt and club lumped).
struct StrokePlantParams {
  double club_mass = 0.5241;       // m_c, kg
  double inertia = 0.1445;         // J, kg m^2
  double gravity = 9.81;           // m/s^2
  double com_distance = 0.4702;    // a, m
  double viscous_friction = 0.0132;  // d, kg m^2/s
  double friction_radius = 0.0245;   // r, m
  double sliding_friction = 1.5136;  // mu_c
  double hit_radius = 0.6;           // h, m
  double u_max = 15.0;               // N m, motor torque limit
  double gear_ratio = 4.0;

  void validate() const;
};

using Mat2 = Eigen::Matrix2d;
using Vec2d = Eigen::Vector2d;
using Row2d = Eigen::RowVector2d;

/// Nonlinear plant right-hand side: returns (phidot, phiddot).
Vec2d plant_deriv(const StrokePlantParams& p, const Vec2d& x, double u);

struct LinearModel {
  Mat2 a;
  Vec2d b;
  Vec2d c;
};

/// Gravity and viscous terms linearized about the club angle `phi_r`.
/// The sliding-friction term is left out.
LinearModel linearize(const StrokePlantParams& p, double phi_r);

/// Stabilizing solution P of A'P + PA - P b b' P / r + Q = 0 for a 2-state,
/// single-input system. Throws NumericalError if no stabilizing solution is found.
Mat2 solve_care(const Mat2& a, const Vec2d& b, const Mat2& q, double r);

double care_residual(const Mat2& a, const Vec2d& b, const Mat2& q, double r, const Mat2& p);

/// Observer gain L placing the eigenvalues of (A - L c') at `poles`
/// (a real pair) for the output y = x1.
Vec2d place_observer(const Mat2& a, double pole1, double pole2);

struct OperatingPoint {
  double phi;         // linearization angle
  LinearModel model;
  Mat2 riccati;       // P
  Row2d k;            // state feedback
  Row2d f_u;          // feedforward
  Vec2d l;            // observer gain
  double riccati_residual;
};

/// Controller, feedforward and observer gains over a uniform grid of
/// operating angles, looked up by nearest angle.
class GainSchedule {
 public:
  GainSchedule(std::vector<OperatingPoint> points, double step);

  const std::vector<OperatingPoint>& points() const { return points_; }
  double step() const { return step_; }
  std::size_t size() const { return points_.size(); }
  /// argmin_i |phi - phi_i|
  std::size_t index_for(double phi) const;
  const OperatingPoint& at(double phi) const { return points_[index_for(phi)]; }

 private:
  std::vector<OperatingPoint> points_;
  double step_;
};

struct ScheduleOptions {
  Mat2 q = (Mat2() << 5.0, 0.0, 0.0, 1.0).finished();
  double r = 1.0;
  double grid_step = 0.01;   // rad
  double grid_limit = 3.14159265358979323846;  // grid spans [-limit, limit]
  double observer_factor = 2.0;  // observer poles this many times further left
};

/// LQR, feedforward and observer design at every operating point.
GainSchedule design_schedule(const StrokePlantParams& p, const ScheduleOptions& opts = {});

enum class Scheduling { kEstimate, kMeasurement };

struct StrokeSimOptions {
  double dt = 1e-4;
  double settle_time = 0.3;  // simulated past the end of the reset
  Scheduling scheduling = Scheduling::kEstimate;
  Vec2d x0 = Vec2d::Zero();
  Vec2d xhat0 = Vec2d::Zero();
  bool stroke_enabled = true;    // false commands a zero reference
  bool feedback_enabled = true;  // false applies the feedforward torque only
};

struct StrokeSample {
  double t;
  double phi;
  double phidot;
  double phi_ref;
  double phidot_ref;
  double u;
  double xhat1;
  double xhat2;
};

struct StrokeSimResult {
  std::vector<StrokeSample> samples;
  bool impact_found = false;
  double impact_time = 0.0;
  double realized_impact_speed = 0.0;  // rad/s at the strike zero crossing of phi
  double target_impact_speed = 0.0;
};

/// Closed-loop simulation of plant and observer with scheduled two-degree-of-
/// freedom control and torque saturation, RK4 at fixed step.
StrokeSimResult simulate_stroke(const StrokePlantParams& p, const GainSchedule& sched,
                                const StrokeRefParams& ref, const StrokeSimOptions& opts = {});

/// Stroke speed |v_s| to command so that the closed loop realizes the desired
/// club rate at impact (secant iteration on simulate_stroke).
struct StrokeCalibration {
  double commanded_stroke_speed;
  double realized_impact_speed;
  int iterations;
};

StrokeCalibration calibrate_stroke_speed(const StrokePlantParams& p, const GainSchedule& sched,
                                         const StrokeRefParams& ref_template, double desired_rate,
                                         const StrokeSimOptions& opts = {}, double rel_tol = 1e-4,
                                         int max_iter = 25);

}  // namespace golfputt
