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

namespace golfputt {

/// Lunge/strike/reset reference for the stroke device. `lunge_angle` is the
/// positive magnitude of the backswing; the club rests at -lunge_angle at the
/// end of the lunge and at +lunge_angle at the end of the strike.
struct StrokeRefParams {
  double lunge_angle = 0.9;    // rad
  double lunge_duration = 0.35;  // s, also used for the reset
  double hit_radius = 0.6;     // m, rotation axis to hitting point
  double stroke_speed = 4.8;   // m/s, |v_s|

  void validate() const;

  /// Club angular rate at the strike zero crossing, |v_s| / h.
  double impact_rate() const { return stroke_speed / hit_radius; }
  double strike_duration() const;
  double strike_start() const { return lunge_duration; }
  double strike_end() const { return lunge_duration + strike_duration(); }
  double reset_end() const { return 2.0 * lunge_duration + strike_duration(); }
  /// Time at which the reference angle crosses zero during the strike.
  double zero_crossing_time() const { return lunge_duration + 0.5 * strike_duration(); }
};

struct RefSample {
  double phi;     // rad
  double phidot;  // rad/s
};

/// Piecewise cosine-blend reference; zero before t = 0 and after the reset.
RefSample ref_at(const StrokeRefParams& p, double t);

/// Controlled rotational velocity of the stroke device for a desired stroke
/// speed: |v_s| / h.
double stroke_speed_from_vector(double v_s_norm, double hit_radius);

}  // namespace golfputt
