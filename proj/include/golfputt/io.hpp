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

#include <filesystem>
#include <iosfwd>
#include <functional>
#include <json.hpp>

#include "golfputt/ball_dynamics.hpp"
#include "golfputt/mlp.hpp"
#include "golfputt/planner.hpp"
#include "golfputt/positioning.hpp"
#include "golfputt/stroke_control.hpp"
#include "golfputt/surface.hpp"

// File formats. CSV numbers are written with 17 significant digits so that
// reading a file back reproduces the doubles exactly.

namespace golfputt::io {

using nlohmann::json;
namespace fs = std::filesystem;

/// Point cloud with header `x,y,z`, meters.
PointCloud read_point_cloud_csv(const fs::path& path);
void write_point_cloud_csv(std::ostream& os, const PointCloud& cloud);

/// `t,x,y,xdot,ydot`
void write_rollout_csv(std::ostream& os, const Rollout& r);

/// `x0,y0,xdot0,ydot0,xe,ye`
void write_dataset_csv(std::ostream& os, const StrokeDataset& ds);
StrokeDataset read_dataset_csv(const fs::path& path);

/// `t,phi,phidot,phi_ref,phidot_ref,u,xhat1,xhat2`
void write_stroke_csv(std::ostream& os, const StrokeSimResult& r);

/// `i,theta1,theta2` with i starting at 1.
void write_plan_csv(std::ostream& os, const ControlSequence& seq);

/// {degree: [dx, dy], bounds: {x_min, x_max, y_min, y_max}, coeffs: [...] row-major}
json to_json(const SurfaceModel& s);
SurfaceModel surface_from_json(const json& j);

json to_json(const Rect& r);
Rect rect_from_json(const json& j);

/// {sizes, weights: [W1, W2] row-major, biases: [b1, b2], normalizers, ...}
json to_json(const MlpModel& m);
MlpModel model_from_json(const json& j);

json to_json(const Pose2D& p);

json read_json(const fs::path& path);
void write_json(const fs::path& path, const json& j);
/// Writes a text file through a callback, creating parent directories.
void write_text(const fs::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace golfputt::io
