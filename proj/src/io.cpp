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

#include "golfputt/io.hpp"

#include <fmt/core.h>
#include <fmt/ranges.h>
#include <fstream>
#include <sstream>

#include "golfputt/error.hpp"

namespace golfputt::io {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}' for reading", path.string()));
  return in;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

// Reads a numeric CSV whose header must match `columns` exactly.
std::vector<std::vector<double>> read_numeric_csv(const fs::path& path, const std::vector<std::string>& columns) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(fmt::format("'{}' is empty", path.string()));
  if (split(line) != columns)
    throw ConfigError(fmt::format("'{}' has header '{}', expected '{}'", path.string(), line,
                                  fmt::format("{}", fmt::join(columns, ","))));
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != columns.size())
      throw ConfigError(fmt::format("'{}' line {}: expected {} fields, got {}", path.string(), line_no,
                                    columns.size(), cells.size()));
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("'{}' line {}: '{}' is not a number", path.string(), line_no, c));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> vec(const json& j, const char* key) { return j.at(key).get<std::vector<double>>(); }

}  // namespace

PointCloud read_point_cloud_csv(const fs::path& path) {
  PointCloud cloud;
  for (const auto& r : read_numeric_csv(path, {"x", "y", "z"})) cloud.push_back({r[0], r[1], r[2]});
  return cloud;
}

void write_point_cloud_csv(std::ostream& os, const PointCloud& cloud) {
  os << "x,y,z\n";
  for (const auto& p : cloud) os << num(p.x) << ',' << num(p.y) << ',' << num(p.z) << '\n';
}

void write_rollout_csv(std::ostream& os, const Rollout& r) {
  os << "t,x,y,xdot,ydot\n";
  for (const auto& s : r.samples)
    os << num(s.t) << ',' << num(s.q.x) << ',' << num(s.q.y) << ',' << num(s.q.xdot) << ',' << num(s.q.ydot) << '\n';
}

void write_dataset_csv(std::ostream& os, const StrokeDataset& ds) {
  os << "x0,y0,xdot0,ydot0,xe,ye\n";
  for (const auto& s : ds)
    os << num(s.q0.x) << ',' << num(s.q0.y) << ',' << num(s.q0.xdot) << ',' << num(s.q0.ydot) << ','
       << num(s.end.x) << ',' << num(s.end.y) << '\n';
}

StrokeDataset read_dataset_csv(const fs::path& path) {
  StrokeDataset ds;
  for (const auto& r : read_numeric_csv(path, {"x0", "y0", "xdot0", "ydot0", "xe", "ye"}))
    ds.push_back({BallState{r[0], r[1], r[2], r[3]}, Vec2{r[4], r[5]}});
  return ds;
}

void write_stroke_csv(std::ostream& os, const StrokeSimResult& r) {
  os << "t,phi,phidot,phi_ref,phidot_ref,u,xhat1,xhat2\n";
  for (const auto& s : r.samples)
    os << num(s.t) << ',' << num(s.phi) << ',' << num(s.phidot) << ',' << num(s.phi_ref) << ','
       << num(s.phidot_ref) << ',' << num(s.u) << ',' << num(s.xhat1) << ',' << num(s.xhat2) << '\n';
}

void write_plan_csv(std::ostream& os, const ControlSequence& seq) {
  os << "i,theta1,theta2\n";
  for (std::size_t i = 0; i < seq.size(); ++i)
    os << (i + 1) << ',' << num(seq[i].theta1) << ',' << num(seq[i].theta2) << '\n';
}

json to_json(const Rect& r) {
  return {{"x_min", r.x_min}, {"x_max", r.x_max}, {"y_min", r.y_min}, {"y_max", r.y_max}};
}

Rect rect_from_json(const json& j) {
  return {j.at("x_min").get<double>(), j.at("x_max").get<double>(), j.at("y_min").get<double>(),
          j.at("y_max").get<double>()};
}

json to_json(const SurfaceModel& s) {
  return {{"degree", {s.degree().x, s.degree().y}}, {"bounds", to_json(s.bounds())}, {"coeffs", s.coeffs()}};
}

SurfaceModel surface_from_json(const json& j) {
  try {
    const auto deg = j.at("degree").get<std::vector<int>>();
    if (deg.size() != 2) throw ConfigError("surface degree must have two entries");
    return SurfaceModel({deg[0], deg[1]}, rect_from_json(j.at("bounds")), vec(j, "coeffs"));
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("malformed surface model: {}", e.what()));
  }
}

json to_json(const MlpModel& m) {
  const auto slice = [](const double* p, std::size_t n) { return std::vector<double>(p, p + n); };
  const std::size_t ni = m.inputs(), nh = m.hidden(), no = m.outputs();
  return {
      {"role", m.role},
      {"activation", "tanh"},
      {"sizes", {ni, nh, no}},
      {"weights", {slice(m.w1(), nh * ni), slice(m.w2(), no * nh)}},
      {"biases", {slice(m.b1(), nh), slice(m.b2(), no)}},
      {"normalizers",
       {{"input", {{"mean", m.input_norm.mean}, {"scale", m.input_norm.scale}}},
        {"output", {{"mean", m.output_norm.mean}, {"scale", m.output_norm.scale}}}}},
      {"input_range", {{"min", m.input_min}, {"max", m.input_max}}},
      {"validation_rmse", m.validation_rmse},
  };
}

MlpModel model_from_json(const json& j) {
  try {
    const auto sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (sizes.size() != 3) throw ConfigError("model sizes must be [inputs, hidden, outputs]");
    MlpModel m(sizes[0], sizes[1], sizes[2]);
    const auto w = j.at("weights").get<std::vector<std::vector<double>>>();
    const auto b = j.at("biases").get<std::vector<std::vector<double>>>();
    if (w.size() != 2 || b.size() != 2 || w[0].size() != sizes[1] * sizes[0] || w[1].size() != sizes[2] * sizes[1] ||
        b[0].size() != sizes[1] || b[1].size() != sizes[2])
      throw ConfigError("model weights or biases do not match sizes");
    auto p = m.params().begin();
    for (const auto* part : {&w[0], &b[0], &w[1], &b[1]}) p = std::copy(part->begin(), part->end(), p);
    const json& nz = j.at("normalizers");
    m.input_norm = {vec(nz.at("input"), "mean"), vec(nz.at("input"), "scale")};
    m.output_norm = {vec(nz.at("output"), "mean"), vec(nz.at("output"), "scale")};
    if (m.input_norm.dims() != sizes[0] || m.output_norm.dims() != sizes[2])
      throw ConfigError("model normalizers do not match sizes");
    for (double s : m.input_norm.scale)
      if (!(s > 0.0)) throw ConfigError("model input normalizer has a non-positive scale");
    for (double s : m.output_norm.scale)
      if (!(s > 0.0)) throw ConfigError("model output normalizer has a non-positive scale");
    if (j.contains("input_range")) {
      m.input_min = vec(j.at("input_range"), "min");
      m.input_max = vec(j.at("input_range"), "max");
    }
    if (j.contains("validation_rmse")) m.validation_rmse = j.at("validation_rmse").get<std::vector<double>>();
    if (j.contains("role")) m.role = j.at("role").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("malformed network model: {}", e.what()));
  }
}

json to_json(const Pose2D& p) { return {{"x_m", p.x}, {"y_m", p.y}, {"psi_rad", p.psi}}; }

json read_json(const fs::path& path) {
  std::ifstream in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

void write_text(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  body(out);
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

}  // namespace golfputt::io
