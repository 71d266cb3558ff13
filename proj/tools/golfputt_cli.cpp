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

// Scenario runner. Every subcommand writes resolved_config.json next to its
// outputs; identical configs produce byte-identical primary outputs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fmt/core.h>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "golfputt/error.hpp"
#include "golfputt/io.hpp"
#include "golfputt/scenario.hpp"

namespace fs = std::filesystem;
using namespace golfputt;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
  std::string config;
  std::optional<long long> seed;
  std::string out = "out";
  std::vector<std::string> sets;
};

struct Context {
  ScenarioConfig cfg;
  fs::path out;
};

double rad_to_deg(double a) { return a * 180.0 / std::numbers::pi; }

json vec_json(const Vec2& v) { return {v.x, v.y}; }

// Builds the user document from --config, --seed, --set and the
// subcommand's own overrides, then loads and records it.
Context prepare(const CommonArgs& args, const std::vector<std::string>& extra_sets) {
  json user = json::object();
  fs::path base;
  if (!args.config.empty()) {
    user = io::read_json(args.config);
    base = fs::path(args.config).parent_path();
  }
  if (args.seed) {
    if (*args.seed < 0) throw ConfigError("--seed must be non-negative");
    user["seed"] = *args.seed;
  }
  for (const auto& s : args.sets) apply_override(user, s);
  for (const auto& s : extra_sets) apply_override(user, s);
  Context ctx{load_config(user, base), fs::path(args.out)};
  io::write_json(ctx.out / "resolved_config.json", ctx.cfg.resolved);
  return ctx;
}

MlpModel obtain_model(const ScenarioConfig& cfg, const SurfaceModel& surface, const std::string& role,
                      const fs::path& out) {
  const fs::path& path = role == "forward" ? cfg.forward_model_path : cfg.inverse_model_path;
  if (!path.empty()) {
    MlpModel m = io::model_from_json(io::read_json(path));
    const std::size_t want_in = 4, want_out = 2;
    if (m.inputs() != want_in || m.outputs() != want_out)
      throw ConfigError(fmt::format("model '{}' has shape {}-{}, expected {}-{}", path.string(), m.inputs(),
                                    m.outputs(), want_in, want_out));
    return m;
  }
  const StrokeDataset ds = obtain_dataset(cfg, surface);
  MlpModel m = role == "forward" ? train_forward(ds, cfg.train) : train_inverse(ds, cfg.train);
  io::write_json(out / (role + "_model.json"), io::to_json(m));
  return m;
}

json train_summary(const MlpModel& m, const TrainReport& r) {
  return {{"epochs_run", r.epochs_run},
          {"best_epoch", r.best_epoch},
          {"final_train_loss", r.train_loss.empty() ? 0.0 : r.train_loss.back()},
          {"best_validation_loss", r.validation_loss.empty() ? 0.0 : r.validation_loss[r.best_epoch]},
          {"validation_rmse", m.validation_rmse}};
}

int cmd_fit_surface(const Context& ctx) {
  const ScenarioConfig& c = ctx.cfg;
  if (c.surface.kind != "csv") throw ConfigError("fit-surface needs surface.kind 'csv' (or --cloud)");
  const PointCloud cloud = io::read_point_cloud_csv(c.surface.csv_path);
  const SurfaceFit fit = fit_surface(cloud, c.surface.degree, c.surface.bounds);
  io::write_json(ctx.out / "surface.json", io::to_json(fit.model));
  io::write_json(ctx.out / "fit_report.json", {{"points", fit.n_points},
                                               {"degree", {c.surface.degree.x, c.surface.degree.y}},
                                               {"rms_residual_m", fit.rms_residual}});
  fmt::print("fitted {} points, rms residual {:.3g} m\n", fit.n_points, fit.rms_residual);
  return 0;
}

int cmd_gen_data(const Context& ctx) {
  const SurfaceModel surface = build_surface(ctx.cfg);
  const StrokeDataset ds = generate_training_strokes(ctx.cfg.ball, surface, ctx.cfg.dataset);
  io::write_text(ctx.out / "dataset.csv", [&](std::ostream& os) { io::write_dataset_csv(os, ds); });
  fmt::print("wrote {} strokes\n", ds.size());
  return 0;
}

int cmd_train(const Context& ctx, const std::string& role) {
  const SurfaceModel surface = build_surface(ctx.cfg);
  const StrokeDataset ds = obtain_dataset(ctx.cfg, surface);
  json report = json::object();
  report["samples"] = ds.size();
  for (const char* r : {"forward", "inverse"}) {
    if (role != "both" && role != r) continue;
    TrainReport tr;
    const MlpModel m = std::string(r) == "forward" ? train_forward(ds, ctx.cfg.train, &tr)
                                                   : train_inverse(ds, ctx.cfg.train, &tr);
    io::write_json(ctx.out / fmt::format("{}_model.json", r), io::to_json(m));
    report[r] = train_summary(m, tr);
    fmt::print("{} model: {} epochs, validation rmse [{:.4g}, {:.4g}]\n", r, tr.epochs_run, m.validation_rmse[0],
               m.validation_rmse[1]);
  }
  io::write_json(ctx.out / "train_report.json", report);
  return 0;
}

int cmd_plan(const Context& ctx) {
  const ScenarioConfig& c = ctx.cfg;
  const SurfaceModel surface = build_surface(c);
  const MlpModel model = obtain_model(c, surface, c.planner_method, ctx.out);
  const StrokePlan plan = c.planner_method == "forward"
                              ? plan_stroke_forward(model, c.ball_start, c.hole.center, c.planner_pso, c.forward_v_bound)
                              : plan_stroke_inverse(model, c.ball_start, c.hole.center);
  const double distance = (c.hole.center - c.ball_start).norm();
  const double heading = std::atan2(plan.v_s.y, plan.v_s.x);
  const Vec2 d = c.hole.center - c.ball_start;
  json j = {{"method", c.planner_method},
            {"ball_m", vec_json(c.ball_start)},
            {"hole_m", vec_json(c.hole.center)},
            {"distance_m", distance},
            {"v_s_m_s", vec_json(plan.v_s)},
            {"speed_m_s", plan.v_s.norm()},
            {"heading_rad", heading},
            {"heading_deg", rad_to_deg(heading)},
            {"bearing_rad", std::atan2(d.y, d.x)},
            {"flat_green_speed_m_s", std::sqrt(2.0 * c.ball.gravity * c.ball.rolling_resistance * distance)},
            {"objective", plan.objective},
            {"in_range", plan.in_range}};
  io::write_json(ctx.out / "plan.json", j);
  if (!plan.in_range) fmt::print(stderr, "warning: ball or hole lies outside the training input range\n");
  fmt::print("v_s = ({:.4f}, {:.4f}) m/s, speed {:.4f} m/s, heading {:.2f} deg\n", plan.v_s.x, plan.v_s.y,
             plan.v_s.norm(), rad_to_deg(heading));
  return 0;
}

int cmd_stroke_sim(const Context& ctx) {
  const ScenarioConfig& c = ctx.cfg;
  const GainSchedule schedule = design_schedule(c.plant, c.control);
  StrokeRefParams ref = c.stroke_ref;
  StrokeCalibration cal{ref.stroke_speed, 0.0, 0};
  if (c.calibrate_in_stroke_sim) {
    cal = calibrate_stroke_speed(c.plant, schedule, ref, c.phi_dot_s, c.stroke_sim);
    ref.stroke_speed = cal.commanded_stroke_speed;
  }
  const StrokeSimResult res = simulate_stroke(c.plant, schedule, ref, c.stroke_sim);
  double max_torque = 0.0;
  for (const auto& s : res.samples) max_torque = std::max(max_torque, std::abs(s.u));
  io::write_text(ctx.out / "stroke.csv", [&](std::ostream& os) { io::write_stroke_csv(os, res); });
  const double err = res.impact_found ? (res.realized_impact_speed - c.phi_dot_s) / c.phi_dot_s : 1.0;
  io::write_json(ctx.out / "stroke_summary.json",
                 {{"target_impact_speed_rad_s", c.phi_dot_s},
                  {"commanded_stroke_speed_m_s", ref.stroke_speed},
                  {"calibrated", c.calibrate_in_stroke_sim},
                  {"calibration_iterations", cal.iterations},
                  {"impact_found", res.impact_found},
                  {"impact_time_s", res.impact_time},
                  {"realized_impact_speed_rad_s", res.realized_impact_speed},
                  {"impact_speed_error_rel", err},
                  {"max_abs_torque_n_m", max_torque},
                  {"operating_points", schedule.size()}});
  if (!res.impact_found) throw NumericalError("club did not swing through the ball");
  fmt::print("impact speed {:.4f} rad/s (target {:.4f}, error {:+.2f}%)\n", res.realized_impact_speed, c.phi_dot_s,
             100.0 * err);
  return 0;
}

json position_summary(const Pose2D& start, const Pose2D& target, const PositioningPlan& p) {
  return {{"start_pose", io::to_json(start)},
          {"target_club_pose", io::to_json(target)},
          {"end_club_pose", io::to_json(p.end_pose_c)},
          {"error", {{"x_m", p.error(0)}, {"y_m", p.error(1)}, {"psi_rad", p.error(2)}}},
          {"position_error_m", std::hypot(p.error(0), p.error(1))},
          {"heading_error_rad", std::abs(p.error(2))},
          {"cost", p.cost},
          {"steps", p.sequence.size()}};
}

int cmd_position(const Context& ctx) {
  const ScenarioConfig& c = ctx.cfg;
  Pose2D target;
  if (c.positioning_target) {
    target = *c.positioning_target;
  } else {
    const Vec2 dir = c.hole.center - c.ball_start;
    if (dir.norm() == 0.0) throw ConfigError("positioning.target_club_pose is required when the ball is at the hole");
    target = target_club_pose(c.ball_start, dir, c.robot);
  }
  const PositioningPlan p = plan_positioning(c.robot, c.robot_start, target, c.positioning_weights, c.positioning);
  io::write_text(ctx.out / "positioning_plan.csv", [&](std::ostream& os) { io::write_plan_csv(os, p.sequence); });
  io::write_json(ctx.out / "positioning_summary.json", position_summary(c.robot_start, target, p));
  fmt::print("position error {:.4f} m, heading error {:.4f} rad, cost {:.4g}\n", std::hypot(p.error(0), p.error(1)),
             std::abs(p.error(2)), p.cost);
  return 0;
}

int cmd_play(const Context& ctx) {
  const ScenarioConfig& c = ctx.cfg;
  const SurfaceModel surface = build_surface(c);
  const MlpModel model = obtain_model(c, surface, c.planner_method, ctx.out);
  const GainSchedule schedule = design_schedule(c.plant, c.control);
  const GameReport r = play(c, surface, model, schedule);
  io::write_json(ctx.out / "game_report.json", to_json(r, c));
  io::write_text(ctx.out / "ball_rollout.csv", [&](std::ostream& os) { io::write_rollout_csv(os, r.rollout); });
  if (!r.skipped_stroke) {
    io::write_text(ctx.out / "stroke.csv", [&](std::ostream& os) { io::write_stroke_csv(os, r.stroke); });
    io::write_text(ctx.out / "positioning_plan.csv",
                   [&](std::ostream& os) { io::write_plan_csv(os, r.positioning.sequence); });
  }
  for (const auto& w : r.warnings) fmt::print(stderr, "warning: {}\n", w);
  fmt::print("{}: final distance {:.4f} m\n", to_string(r.outcome()), r.final_distance);
  return 0;
}

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config, "JSON scenario configuration");
  sub->add_option("--seed", args.seed, "seed for every random stream");
  sub->add_option("--out", args.out, "output directory")->capture_default_str();
  sub->add_option("--set", args.sets, "override a config field, e.g. --set hole.radius_m=0.06");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"golfputt: simulated autonomous golf putting"};
  app.require_subcommand(1);
  CommonArgs args;
  std::vector<std::string> extra;

  auto* fit = app.add_subcommand("fit-surface", "fit a polynomial green model to a point cloud");
  add_common(fit, args);
  std::string cloud;
  fit->add_option("--cloud", cloud, "point cloud CSV (x,y,z)");

  auto* gen = app.add_subcommand("gen-data", "simulate training strokes");
  add_common(gen, args);

  auto* train = app.add_subcommand("train", "train the forward and/or inverse networks");
  add_common(train, args);
  std::string role = "both";
  train->add_option("--role", role, "forward, inverse or both")
      ->check(CLI::IsMember({"forward", "inverse", "both"}))
      ->capture_default_str();

  auto* plan = app.add_subcommand("plan", "plan the stroke vector for the configured ball and hole");
  add_common(plan, args);
  std::string method;
  plan->add_option("--method", method, "inverse or forward")->check(CLI::IsMember({"inverse", "forward"}));

  auto* stroke = app.add_subcommand("stroke-sim", "simulate one closed-loop stroke");
  add_common(stroke, args);
  std::optional<double> phi_dot_s;
  stroke->add_option("--phi-dot-s", phi_dot_s, "desired club rate at impact, rad/s");

  auto* position = app.add_subcommand("position", "plan the drive to the club pose behind the ball");
  add_common(position, args);

  auto* game = app.add_subcommand("play", "run plan, positioning, stroke and rollout end to end");
  add_common(game, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (!cloud.empty()) {
      extra.push_back("surface.kind=\"csv\"");
      extra.push_back("surface.csv_path=" + json(fs::absolute(cloud).string()).dump());
    }
    if (!method.empty()) extra.push_back("planner.method=\"" + method + "\"");
    if (phi_dot_s) extra.push_back(fmt::format("stroke.phi_dot_s_rad_s={:.17g}", *phi_dot_s));
    const Context ctx = prepare(args, extra);
    if (fit->parsed()) return cmd_fit_surface(ctx);
    if (gen->parsed()) return cmd_gen_data(ctx);
    if (train->parsed()) return cmd_train(ctx, role);
    if (plan->parsed()) return cmd_plan(ctx);
    if (stroke->parsed()) return cmd_stroke_sim(ctx);
    if (position->parsed()) return cmd_position(ctx);
    return cmd_play(ctx);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitRuntime;
  }
}
