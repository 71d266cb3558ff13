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

#include "golfputt/stroke_reference.hpp"

#include <cmath>
#include <numbers>

#include "golfputt/error.hpp"

namespace golfputt {

using std::numbers::pi;

void StrokeRefParams::validate() const {
  if (!(lunge_angle > 0.0) || !(lunge_duration > 0.0) || !(hit_radius > 0.0) || !(stroke_speed > 0.0))
    throw ConfigError("stroke reference parameters must all be positive");
}

double StrokeRefParams::strike_duration() const {
  return lunge_angle * pi * hit_radius / stroke_speed;
}

double stroke_speed_from_vector(double v_s_norm, double hit_radius) {
  if (!(hit_radius > 0.0)) throw ConfigError("hit radius must be positive");
  return v_s_norm / hit_radius;
}

RefSample ref_at(const StrokeRefParams& p, double t) {
  const double phi_l = p.lunge_angle;
  const double t_l = p.lunge_duration;
  const double t_strike_end = p.strike_end();
  const double w_lunge = pi / t_l;

  if (t <= 0.0) return {0.0, 0.0};
  if (t <= t_l) {
    return {0.5 * phi_l * (std::cos(w_lunge * t) - 1.0),
            -0.5 * phi_l * w_lunge * std::sin(w_lunge * t)};
  }
  if (t <= t_strike_end) {
    const double w_strike = p.stroke_speed / (phi_l * p.hit_radius);
    const double tau = t - t_l;
    return {-phi_l * std::cos(w_strike * tau), p.impact_rate() * std::sin(w_strike * tau)};
  }
  if (t <= p.reset_end()) {
    const double tau = t - t_strike_end;
    return {0.5 * phi_l * (std::cos(w_lunge * tau) + 1.0),
            -0.5 * phi_l * w_lunge * std::sin(w_lunge * tau)};
  }
  return {0.0, 0.0};
}

}  // namespace golfputt
