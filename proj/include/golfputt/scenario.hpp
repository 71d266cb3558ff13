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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>
#include <json.hpp>

#include "golfputt/ball_dynamics.hpp"
#include "golfputt/mlp.hpp"
#include "golfputt/planner.hpp"
#include "golfputt/positioning.hpp"
#include "golfputt/stroke_control.hpp"
#include "golfputt/surface.hpp"

// Scenario configuration and the end-to-end putting pipeline.
//
// A configuration is a JSON document whose field names carry their SI units.
// User documents are merged over the built-in defaults; unknown fields and
// type mismatches are rejected with the offending field path. The merged
// document is what gets written to resolved_config.json.

namespace golfputt {

using nlohmann::json;

/// Complete default configuration document.
json default_config();

struct SurfaceSource {
  std::string kind;  // "named", "csv" or "model"
  std::string name;
  std::filesystem::path csv_path;
  std::filesystem::path model_path;
  SurfaceDegree degree;
  Rect bounds;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  SurfaceSource surface;
  BallParams ball;
  Vec2 ball_start;
  HoleSpec hole;
  SimOptions sim;

  TrainingStrokeOptions dataset;
  std::filesystem::path dataset_path;  // empty: generate
  TrainConfig train;
  std::filesystem::path forward_model_path;  // empty: train
  std::filesystem::path inverse_model_path;

  std::string planner_method;  // "inverse" or "forward"
  double v_s_max = 6.0;
  double forward_v_bound = 4.0;
  PsoConfig planner_pso;

  StrokeRefParams stroke_ref;
  double phi_dot_s = 8.0;  // stroke-sim target rate, rad/s
  StrokeSimOptions stroke_sim;
  double transfer_coefficient = 1.0;
  bool calibrate_in_play = true;
  bool calibrate_in_stroke_sim = false;
  StrokePlantParams plant;
  ScheduleOptions control;

  RobotGeom robot;
  Pose2D robot_start;
  PositioningWeights positioning_weights;
  PositioningOptions positioning;
  std::optional<Pose2D> positioning_target;  // position subcommand only

  json resolved;
};

/// Merges `user` over the defaults and validates the result. Relative paths
/// are resolved against `base_dir`. Throws ConfigError naming the field path.
ScenarioConfig load_config(const json& user, const std::filesystem::path& base_dir = {});

/// Applies a `dotted.path=value` override to a user document. The value is
/// parsed as JSON when possible and taken as a string otherwise.
void apply_override(json& doc, const std::string& assignment);

SurfaceModel build_surface(const ScenarioConfig& cfg);

/// Dataset from dataset_path, or generated on the surface.
StrokeDataset obtain_dataset(const ScenarioConfig& cfg, const SurfaceModel& surface);

struct GameReport {
  bool skipped_stroke = false;  // ball already holed or no stroke needed
  std::vector<std::string> warnings;

  StrokePlan plan;
  bool speed_clamped = false;

  Pose2D target_club;
  PositioningPlan positioning;

  double desired_rate = 0.0;  // rad/s
  StrokeCalibration calibration{0.0, 0.0, 0};
  StrokeSimResult stroke;

  double launch_speed = 0.0;
  double launch_heading = 0.0;
  Rollout rollout;
  double final_distance = 0.0;

  Outcome outcome() const { return rollout.outcome; }
  bool captured() const { return rollout.outcome == Outcome::kCaptured; }
};

/// Runs plan, positioning, stroke and ball rollout for the configured ball,
/// hole and robot start. `model` is the network for cfg.planner_method.
/// Failures are rethrown with the stage name prepended.
GameReport play(const ScenarioConfig& cfg, const SurfaceModel& surface, const MlpModel& model,
                const GainSchedule& schedule);

json to_json(const GameReport& r, const ScenarioConfig& cfg);

}  // namespace golfputt
