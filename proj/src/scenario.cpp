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

#include "golfputt/scenario.hpp"

#include <cmath>
#include <fmt/core.h>
#include <numbers>

#include "golfputt/error.hpp"
#include "golfputt/io.hpp"

namespace golfputt {

namespace fs = std::filesystem;

namespace {

constexpr double kMinStrokeSpeed = 1e-3;  // m/s; slower plans are not played

json pso_defaults() {
  const PsoConfig p;
  return {{"swarm_size", p.swarm_size}, {"iterations", p.iterations}, {"inertia", p.inertia},
          {"cognitive", p.cognitive},   {"social", p.social},         {"tolerance", p.tolerance}};
}

json pose_json(const Pose2D& p) { return io::to_json(p); }

}  // namespace

json default_config() {
  const BallParams ball;
  const HoleSpec hole;
  const SimOptions sim;
  const TrainingStrokeOptions ds;
  const TrainConfig tr;
  const StrokeRefParams ref;
  const StrokeSimOptions ss;
  const StrokePlantParams pl;
  const ScheduleOptions ctl;
  const RobotGeom rb;
  const PositioningWeights pw;
  const PositioningOptions po;

  return {
      {"seed", 1},
      {"surface",
       {{"kind", "named"},
        {"name", "flat"},
        {"csv_path", ""},
        {"model_path", ""},
        {"degree", {3, 3}},
        {"bounds_m", io::to_json(Rect{})}}},
      {"ball",
       {{"mass_kg", ball.mass_kg},
        {"gravity_m_s2", ball.gravity},
        {"rolling_resistance", ball.rolling_resistance},
        {"start_m", {-1.0, 0.0}}}},
      {"hole",
       {{"center_m", {0.0, 0.0}}, {"radius_m", hole.radius}, {"capture_speed_m_s", hole.capture_speed}}},
      {"simulation",
       {{"dt_s", sim.dt}, {"t_max_s", sim.t_max}, {"v_stop_m_s", sim.v_stop}, {"v_eps_m_s", sim.v_eps}}},
      {"dataset",
       {{"count", ds.count},
        {"v_min_m_s", ds.v_min},
        {"v_max_m_s", ds.v_max},
        {"start_region_m", nullptr},
        {"max_attempts", ds.max_attempts},
        {"rest_starts_only", ds.rest_starts_only},
        {"direct_only", ds.direct_only},
        {"path", ""}}},
      {"train",
       {{"trainer", "levenberg_marquardt"},
        {"hidden", tr.hidden},
        {"epochs", tr.epochs},
        {"patience", tr.patience},
        {"validation_fraction", tr.validation_fraction},
        {"learning_rate", tr.learning_rate},
        {"momentum", tr.momentum},
        {"batch_size", tr.batch_size},
        {"damping_init", tr.damping_init},
        {"damping_up", tr.damping_up},
        {"damping_down", tr.damping_down},
        {"damping_max", tr.damping_max}}},
      {"models", {{"forward_path", ""}, {"inverse_path", ""}}},
      {"planner",
       {{"method", "inverse"}, {"v_s_max_m_s", 6.0}, {"forward_v_bound_m_s", 4.0}, {"pso", pso_defaults()}}},
      {"stroke",
       {{"lunge_angle_rad", ref.lunge_angle},
        {"lunge_duration_s", ref.lunge_duration},
        {"phi_dot_s_rad_s", 8.0},
        {"dt_s", ss.dt},
        {"settle_time_s", ss.settle_time},
        {"scheduling", "estimate"},
        {"transfer_coefficient", 1.0},
        {"calibrate_in_play", true},
        {"calibrate_in_stroke_sim", false}}},
      {"plant",
       {{"club_mass_kg", pl.club_mass},
        {"inertia_kg_m2", pl.inertia},
        {"gravity_m_s2", pl.gravity},
        {"com_distance_m", pl.com_distance},
        {"viscous_friction_kg_m2_s", pl.viscous_friction},
        {"friction_radius_m", pl.friction_radius},
        {"sliding_friction", pl.sliding_friction},
        {"hit_radius_m", pl.hit_radius},
        {"u_max_n_m", pl.u_max},
        {"gear_ratio", pl.gear_ratio}}},
      {"control",
       {{"q_diag", {ctl.q(0, 0), ctl.q(1, 1)}},
        {"r", ctl.r},
        {"grid_step_rad", ctl.grid_step},
        {"grid_limit_rad", ctl.grid_limit},
        {"observer_factor", ctl.observer_factor}}},
      {"robot",
       {{"track_width_m", rb.track_width},
        {"club_offset", pose_json(rb.club_offset)},
        {"ball_offset_m", rb.ball_offset},
        {"step_max_m", rb.step_max},
        {"start", pose_json(Pose2D{-1.5, -0.5, 0.0})}}},
      {"positioning",
       {{"steps", po.steps},
        {"q_diag", {pw.q(0, 0), pw.q(1, 1), pw.q(2, 2)}},
        {"r_diag", {pw.r(0, 0), pw.r(1, 1)}},
        {"pso", pso_defaults()},
        {"target_club_pose", nullptr}}},
  };
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ConfigError(fmt::format("config field '{}' {}", path, what));
}

std::string type_name(const json& j) {
  if (j.is_number_integer()) return "an integer";
  if (j.is_number()) return "a number";
  if (j.is_boolean()) return "a boolean";
  if (j.is_string()) return "a string";
  if (j.is_array()) return "an array";
  if (j.is_object()) return "an object";
  return "null";
}

void merge(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) {
    if (path.empty()) throw ConfigError("config root must be a JSON object");
    bad(path, "must be an object");
  }
  for (const auto& [key, value] : user.items()) {
    const std::string p = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError(fmt::format("unknown config field '{}'", p));
    json& b = base[key];
    if (b.is_null()) {
      b = value;  // optional field; checked when parsed
    } else if (b.is_object()) {
      merge(b, value, p);
    } else if (b.is_number_integer()) {
      if (!value.is_number_integer()) bad(p, "must be an integer");
      b = value;
    } else if (b.is_number()) {
      if (!value.is_number()) bad(p, "must be a number");
      b = value.get<double>();
    } else if (b.type() != value.type()) {
      bad(p, "must be " + type_name(b));
    } else {
      b = value;
    }
  }
}

// Typed access to the merged document with the field path kept for messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  Node operator[](const char* key) const {
    if (!j_.contains(key)) bad(path_ + "." + key, "is missing");
    return {j_.at(key), path_.empty() ? key : path_ + "." + key};
  }
  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  double num() const {
    if (!j_.is_number()) bad(path_, "must be a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) bad(path_, "must be finite");
    return v;
  }
  double positive() const {
    const double v = num();
    if (!(v > 0.0)) bad(path_, fmt::format("must be positive, got {}", v));
    return v;
  }
  double non_negative() const {
    const double v = num();
    if (!(v >= 0.0)) bad(path_, fmt::format("must be non-negative, got {}", v));
    return v;
  }
  long long integer(long long lo) const {
    if (!j_.is_number_integer()) bad(path_, "must be an integer");
    const auto v = j_.get<long long>();
    if (v < lo) bad(path_, fmt::format("must be at least {}, got {}", lo, v));
    return v;
  }
  bool boolean() const {
    if (!j_.is_boolean()) bad(path_, "must be a boolean");
    return j_.get<bool>();
  }
  std::string str() const {
    if (!j_.is_string()) bad(path_, "must be a string");
    return j_.get<std::string>();
  }
  std::vector<double> numbers(std::size_t n) const {
    if (!j_.is_array() || j_.size() != n) bad(path_, fmt::format("must be an array of {} numbers", n));
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Node(j_[i], fmt::format("{}[{}]", path_, i)).num());
    return v;
  }
  Vec2 vec2() const {
    const auto v = numbers(2);
    return {v[0], v[1]};
  }
  Pose2D pose() const { return {(*this)["x_m"].num(), (*this)["y_m"].num(), (*this)["psi_rad"].num()}; }
  Rect rect() const {
    const Rect r{(*this)["x_min"].num(), (*this)["x_max"].num(), (*this)["y_min"].num(), (*this)["y_max"].num()};
    if (!(r.x_min < r.x_max) || !(r.y_min < r.y_max)) bad(path_, "must satisfy x_min < x_max and y_min < y_max");
    return r;
  }
  fs::path file(const fs::path& base) const {
    const std::string s = str();
    if (s.empty()) return {};
    fs::path p(s);
    if (p.is_relative() && !base.empty()) p = base / p;
    if (!fs::exists(p)) bad(path_, fmt::format("refers to '{}', which does not exist", p.string()));
    return p;
  }
  template <class E>
  E choice(std::initializer_list<std::pair<const char*, E>> options) const {
    const std::string s = str();
    std::string names;
    for (const auto& [name, value] : options) {
      if (s == name) return value;
      names += names.empty() ? name : std::string(", ") + name;
    }
    bad(path_, fmt::format("must be one of {}, got '{}'", names, s));
  }

 private:
  const json& j_;
  std::string path_;
};

PsoConfig parse_pso(const Node& n, std::uint64_t seed) {
  PsoConfig p;
  p.swarm_size = static_cast<int>(n["swarm_size"].integer(2));
  p.iterations = static_cast<int>(n["iterations"].integer(0));
  p.inertia = n["inertia"].non_negative();
  if (p.inertia >= 1.0) bad(n.path() + ".inertia", "must be below 1");
  p.cognitive = n["cognitive"].positive();
  p.social = n["social"].positive();
  p.tolerance = n["tolerance"].num();
  p.seed = seed;
  return p;
}

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError(fmt::format("override '{}' must have the form path.to.field=value", assignment));
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError(fmt::format("override path '{}' has an empty component", path));
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

ScenarioConfig load_config(const json& user, const fs::path& base_dir) {
  json doc = default_config();
  merge(doc, user, "");
  const Node root(doc, "");
  ScenarioConfig c;

  const long long seed = root["seed"].integer(0);
  c.seed = static_cast<std::uint64_t>(seed);

  const Node s = root["surface"];
  c.surface.kind = s["kind"].choice<std::string>({{"named", "named"}, {"csv", "csv"}, {"model", "model"}});
  c.surface.name = s["name"].str();
  c.surface.csv_path = s["csv_path"].file(base_dir);
  c.surface.model_path = s["model_path"].file(base_dir);
  const auto deg = s["degree"].numbers(2);
  for (int i = 0; i < 2; ++i)
    if (deg[i] != std::floor(deg[i]) || deg[i] < 0 || deg[i] > simd::kMaxDegree)
      bad(fmt::format("surface.degree[{}]", i), fmt::format("must be an integer in [0, {}]", simd::kMaxDegree));
  c.surface.degree = {static_cast<int>(deg[0]), static_cast<int>(deg[1])};
  c.surface.bounds = s["bounds_m"].rect();
  if (c.surface.kind == "csv" && c.surface.csv_path.empty()) bad("surface.csv_path", "is required when surface.kind is 'csv'");
  if (c.surface.kind == "model" && c.surface.model_path.empty())
    bad("surface.model_path", "is required when surface.kind is 'model'");

  const Node b = root["ball"];
  c.ball.mass_kg = b["mass_kg"].positive();
  c.ball.gravity = b["gravity_m_s2"].positive();
  c.ball.rolling_resistance = b["rolling_resistance"].non_negative();
  c.ball_start = b["start_m"].vec2();

  const Node h = root["hole"];
  c.hole.center = h["center_m"].vec2();
  c.hole.radius = h["radius_m"].positive();
  c.hole.capture_speed = h["capture_speed_m_s"].non_negative();

  const Node sim = root["simulation"];
  c.sim.dt = sim["dt_s"].positive();
  c.sim.t_max = sim["t_max_s"].positive();
  c.sim.v_stop = sim["v_stop_m_s"].non_negative();
  c.sim.v_eps = sim["v_eps_m_s"].non_negative();

  const Node d = root["dataset"];
  c.dataset.count = static_cast<std::size_t>(d["count"].integer(1));
  c.dataset.v_min = d["v_min_m_s"].positive();
  c.dataset.v_max = d["v_max_m_s"].positive();
  if (!(c.dataset.v_min < c.dataset.v_max)) bad("dataset.v_min_m_s", "must be below dataset.v_max_m_s");
  c.dataset.start_region = d["start_region_m"].raw().is_null() ? c.surface.bounds : d["start_region_m"].rect();
  c.dataset.max_attempts = static_cast<int>(d["max_attempts"].integer(1));
  c.dataset.rest_starts_only = d["rest_starts_only"].boolean();
  c.dataset.direct_only = d["direct_only"].boolean();
  c.dataset.seed = c.seed;
  c.dataset.sim = c.sim;
  c.dataset_path = d["path"].file(base_dir);

  const Node t = root["train"];
  c.train.trainer = t["trainer"].choice<Trainer>(
      {{"levenberg_marquardt", Trainer::kLevenbergMarquardt}, {"momentum", Trainer::kMomentum}});
  c.train.hidden = static_cast<std::size_t>(t["hidden"].integer(1));
  c.train.epochs = static_cast<int>(t["epochs"].integer(1));
  c.train.patience = static_cast<int>(t["patience"].integer(1));
  c.train.validation_fraction = t["validation_fraction"].positive();
  if (c.train.validation_fraction > 0.5) bad("train.validation_fraction", "must not exceed 0.5");
  c.train.learning_rate = t["learning_rate"].positive();
  c.train.momentum = t["momentum"].non_negative();
  if (c.train.momentum >= 1.0) bad("train.momentum", "must be below 1");
  c.train.batch_size = static_cast<std::size_t>(t["batch_size"].integer(0));
  c.train.damping_init = t["damping_init"].positive();
  c.train.damping_up = t["damping_up"].positive();
  if (c.train.damping_up <= 1.0) bad("train.damping_up", "must exceed 1");
  c.train.damping_down = t["damping_down"].positive();
  if (c.train.damping_down >= 1.0) bad("train.damping_down", "must be below 1");
  c.train.damping_max = t["damping_max"].positive();
  c.train.seed = c.seed;

  const Node m = root["models"];
  c.forward_model_path = m["forward_path"].file(base_dir);
  c.inverse_model_path = m["inverse_path"].file(base_dir);

  const Node p = root["planner"];
  c.planner_method = p["method"].choice<std::string>({{"inverse", "inverse"}, {"forward", "forward"}});
  c.v_s_max = p["v_s_max_m_s"].positive();
  c.forward_v_bound = p["forward_v_bound_m_s"].positive();
  c.planner_pso = parse_pso(p["pso"], c.seed);

  const Node pl = root["plant"];
  c.plant.club_mass = pl["club_mass_kg"].positive();
  c.plant.inertia = pl["inertia_kg_m2"].positive();
  c.plant.gravity = pl["gravity_m_s2"].positive();
  c.plant.com_distance = pl["com_distance_m"].positive();
  c.plant.viscous_friction = pl["viscous_friction_kg_m2_s"].positive();
  c.plant.friction_radius = pl["friction_radius_m"].positive();
  c.plant.sliding_friction = pl["sliding_friction"].positive();
  c.plant.hit_radius = pl["hit_radius_m"].positive();
  c.plant.u_max = pl["u_max_n_m"].positive();
  c.plant.gear_ratio = pl["gear_ratio"].positive();

  const Node st = root["stroke"];
  c.stroke_ref.lunge_angle = st["lunge_angle_rad"].positive();
  c.stroke_ref.lunge_duration = st["lunge_duration_s"].positive();
  c.stroke_ref.hit_radius = c.plant.hit_radius;
  c.phi_dot_s = st["phi_dot_s_rad_s"].positive();
  c.stroke_ref.stroke_speed = c.phi_dot_s * c.plant.hit_radius;
  c.stroke_sim.dt = st["dt_s"].positive();
  c.stroke_sim.settle_time = st["settle_time_s"].non_negative();
  c.stroke_sim.scheduling =
      st["scheduling"].choice<Scheduling>({{"estimate", Scheduling::kEstimate}, {"measurement", Scheduling::kMeasurement}});
  c.transfer_coefficient = st["transfer_coefficient"].positive();
  c.calibrate_in_play = st["calibrate_in_play"].boolean();
  c.calibrate_in_stroke_sim = st["calibrate_in_stroke_sim"].boolean();

  const Node ct = root["control"];
  const auto q = ct["q_diag"].numbers(2);
  for (int i = 0; i < 2; ++i)
    if (!(q[i] >= 0.0)) bad(fmt::format("control.q_diag[{}]", i), "must be non-negative");
  c.control.q = Eigen::Vector2d(q[0], q[1]).asDiagonal();
  c.control.r = ct["r"].positive();
  c.control.grid_step = ct["grid_step_rad"].positive();
  c.control.grid_limit = ct["grid_limit_rad"].non_negative();
  c.control.observer_factor = ct["observer_factor"].positive();

  const Node r = root["robot"];
  c.robot.track_width = r["track_width_m"].positive();
  c.robot.club_offset = r["club_offset"].pose();
  c.robot.ball_offset = r["ball_offset_m"].non_negative();
  c.robot.step_max = r["step_max_m"].positive();
  c.robot_start = r["start"].pose();

  const Node po = root["positioning"];
  c.positioning.steps = static_cast<int>(po["steps"].integer(1));
  const auto pq = po["q_diag"].numbers(3);
  const auto pr = po["r_diag"].numbers(2);
  for (int i = 0; i < 3; ++i)
    if (!(pq[i] >= 0.0)) bad(fmt::format("positioning.q_diag[{}]", i), "must be non-negative");
  for (int i = 0; i < 2; ++i)
    if (!(pr[i] >= 0.0)) bad(fmt::format("positioning.r_diag[{}]", i), "must be non-negative");
  c.positioning_weights.q = Eigen::Vector3d(pq[0], pq[1], pq[2]).asDiagonal();
  c.positioning_weights.r = Eigen::Vector2d(pr[0], pr[1]).asDiagonal();
  c.positioning.pso = parse_pso(po["pso"], c.seed);
  if (!po["target_club_pose"].raw().is_null()) c.positioning_target = po["target_club_pose"].pose();

  c.resolved = std::move(doc);
  return c;
}

SurfaceModel build_surface(const ScenarioConfig& cfg) {
  const SurfaceSource& s = cfg.surface;
  if (s.kind == "named") {
    try {
      return named_surface(s.name, s.bounds);
    } catch (const ConfigError& e) {
      bad("surface.name", e.what());
    }
  }
  if (s.kind == "csv") return fit_surface(io::read_point_cloud_csv(s.csv_path), s.degree, s.bounds).model;
  return io::surface_from_json(io::read_json(s.model_path));
}

StrokeDataset obtain_dataset(const ScenarioConfig& cfg, const SurfaceModel& surface) {
  if (!cfg.dataset_path.empty()) return io::read_dataset_csv(cfg.dataset_path);
  return generate_training_strokes(cfg.ball, surface, cfg.dataset);
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("stage '{}': {}", name, e.what()));
  } catch (const NumericalError& e) {
    throw NumericalError(fmt::format("stage '{}': {}", name, e.what()));
  } catch (const Error& e) {
    throw Error(fmt::format("stage '{}': {}", name, e.what()));
  }
}

}  // namespace

GameReport play(const ScenarioConfig& cfg, const SurfaceModel& surface, const MlpModel& model,
                const GainSchedule& schedule) {
  GameReport r;
  const Vec2 ball = cfg.ball_start;
  const Vec2 hole = cfg.hole.center;
  auto finish_without_stroke = [&](Outcome outcome) {
    r.skipped_stroke = true;
    r.rollout.samples = {{0.0, BallState::at(ball)}};
    r.rollout.outcome = outcome;
    r.final_distance = (ball - hole).norm();
    return r;
  };
  if (!surface.bounds().contains(ball)) throw ConfigError("ball.start_m lies outside the green");
  if ((ball - hole).norm() < cfg.hole.radius) return finish_without_stroke(Outcome::kCaptured);

  r.plan = stage("plan", [&] {
    return cfg.planner_method == "forward"
               ? plan_stroke_forward(model, ball, hole, cfg.planner_pso, cfg.forward_v_bound)
               : plan_stroke_inverse(model, ball, hole);
  });
  if (!r.plan.in_range) r.warnings.push_back("ball or hole lies outside the training input range");
  Vec2 v_s = r.plan.v_s;
  double speed = v_s.norm();
  if (speed > cfg.v_s_max) {
    v_s = v_s * (cfg.v_s_max / speed);
    speed = cfg.v_s_max;
    r.speed_clamped = true;
    r.warnings.push_back(fmt::format("planned stroke speed clamped to {} m/s", cfg.v_s_max));
  }
  if (speed < kMinStrokeSpeed) return finish_without_stroke(Outcome::kStopped);

  r.target_club = stage("positioning", [&] { return target_club_pose(ball, v_s, cfg.robot); });
  r.positioning = stage("positioning", [&] {
    return plan_positioning(cfg.robot, cfg.robot_start, r.target_club, cfg.positioning_weights, cfg.positioning);
  });

  const double h = cfg.plant.hit_radius;
  r.desired_rate = speed / h;
  r.stroke = stage("stroke", [&] {
    StrokeRefParams ref = cfg.stroke_ref;
    if (cfg.calibrate_in_play) {
      r.calibration = calibrate_stroke_speed(cfg.plant, schedule, ref, r.desired_rate, cfg.stroke_sim);
      ref.stroke_speed = r.calibration.commanded_stroke_speed;
    } else {
      ref.stroke_speed = speed;
      r.calibration = {speed, 0.0, 0};
    }
    StrokeSimResult res = simulate_stroke(cfg.plant, schedule, ref, cfg.stroke_sim);
    if (!res.impact_found) throw NumericalError("club did not swing through the ball");
    r.calibration.realized_impact_speed = res.realized_impact_speed;
    return res;
  });

  r.launch_speed = cfg.transfer_coefficient * h * r.stroke.realized_impact_speed;
  r.launch_heading = r.positioning.end_pose_c.psi;
  const Vec2 launch{r.launch_speed * std::cos(r.launch_heading), r.launch_speed * std::sin(r.launch_heading)};
  r.rollout = stage("ball", [&] { return simulate(cfg.ball, surface, cfg.hole, BallState::at(ball, launch), cfg.sim); });
  r.final_distance = (r.rollout.final_state().position() - hole).norm();
  return r;
}

json to_json(const GameReport& r, const ScenarioConfig& cfg) {
  const BallState& end = r.rollout.final_state();
  json j = {
      {"captured", r.captured()},
      {"outcome", to_string(r.outcome())},
      {"final_distance_m", r.final_distance},
      {"final_position_m", {end.x, end.y}},
      {"stroke_skipped", r.skipped_stroke},
      {"out_of_training_range", !r.plan.in_range},
      {"warnings", r.warnings},
      {"ball_start_m", {cfg.ball_start.x, cfg.ball_start.y}},
      {"hole_m", {cfg.hole.center.x, cfg.hole.center.y}},
  };
  if (r.skipped_stroke) return j;

  const double planned_speed = r.plan.v_s.norm();
  const double planned_heading = std::atan2(r.plan.v_s.y, r.plan.v_s.x);
  j["stages"] = {
      {"plan",
       {{"method", cfg.planner_method},
        {"v_s_m_s", {r.plan.v_s.x, r.plan.v_s.y}},
        {"speed_m_s", planned_speed},
        {"objective", r.plan.objective},
        {"in_range", r.plan.in_range},
        {"speed_clamped", r.speed_clamped}}},
      {"positioning",
       {{"target_club_pose", io::to_json(r.target_club)},
        {"end_club_pose", io::to_json(r.positioning.end_pose_c)},
        {"error", {{"x_m", r.positioning.error(0)}, {"y_m", r.positioning.error(1)}, {"psi_rad", r.positioning.error(2)}}},
        {"position_error_m", std::hypot(r.positioning.error(0), r.positioning.error(1))},
        {"cost", r.positioning.cost},
        {"steps", r.positioning.sequence.size()}}},
      {"stroke",
       {{"desired_rate_rad_s", r.desired_rate},
        {"commanded_stroke_speed_m_s", r.calibration.commanded_stroke_speed},
        {"calibration_iterations", r.calibration.iterations},
        {"realized_rate_rad_s", r.stroke.realized_impact_speed},
        {"rate_error_rel", (r.stroke.realized_impact_speed - r.desired_rate) / r.desired_rate},
        {"impact_time_s", r.stroke.impact_time}}},
      {"launch",
       {{"speed_m_s", r.launch_speed},
        {"heading_rad", r.launch_heading},
        {"speed_error_rel", (r.launch_speed - planned_speed) / planned_speed},
        {"heading_error_rad", normalize_angle(r.launch_heading - planned_heading)}}},
      {"ball", {{"outcome", to_string(r.outcome())}, {"duration_s", r.rollout.duration()}}},
  };
  return j;
}

}  // namespace golfputt
