#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjchar/cli.hpp"
#include "hjchar/errors.hpp"

namespace hjchar::cli {

using nlohmann::json;

namespace {

template <typename T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest key '") + key + "': " + e.what());
  }
}

int parse_sign(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "+" || s == "plus" || s == "1" || s == "+1") return 1;
    if (s == "-" || s == "minus" || s == "-1") return -1;
  }
  throw ConfigError("sign must be '+' or '-'");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + tok + "'");
    }
  }
  return out;
}

Vec parse_point(const std::string& text, std::size_t dim) {
  const auto dots = text.find("...");
  if (dots == std::string::npos) {
    Vec v = parse_list(text);
    if (v.size() != dim) {
      throw ConfigError("point has " + std::to_string(v.size()) + " entries, expected " +
                        std::to_string(dim));
    }
    return v;
  }
  const Vec head = parse_list(text.substr(0, dots));
  const Vec tail = parse_list(text.substr(dots + 3));
  if (head.empty()) throw ConfigError("'...' in a point needs a value before it");
  if (head.size() + tail.size() > dim) throw ConfigError("point has more entries than dim");
  Vec v(dim, head.back());
  std::copy(head.begin(), head.end(), v.begin());
  std::copy(tail.begin(), tail.end(), v.end() - static_cast<std::ptrdiff_t>(tail.size()));
  return v;
}

json to_json(const RunManifest& m) {
  const DescentConfig& d = m.solve.descent;
  json j;
  j["command"] = m.command;
  j["example"] = m.example.id;
  j["sign"] = m.example.sign > 0 ? "+" : "-";
  j["dim"] = m.example.dim;
  j["k"] = m.example.split_k;
  j["data"] = to_string(m.example.data);
  j["mode"] = to_string(m.mode);
  j["T"] = m.horizon;
  j["times"] = m.times;
  j["grid"] = m.grid;
  j["half_width"] = m.half_width;
  j["point"] = m.point ? json(*m.point) : json(nullptr);
  j["ds"] = m.solve.ds;
  j["sigma"] = m.solve.sigma;
  j["cert_tol"] = m.solve.cert_tol;
  j["lipschitz"] = d.lipschitz;
  j["max_iterations"] = d.max_iterations;
  j["eps"] = d.eps;
  j["max_backoffs"] = d.max_backoffs;
  j["trials"] = d.trials;
  j["seed"] = d.rng_seed;
  j["init_low"] = d.init_low;
  j["init_high"] = d.init_high;
  j["max_resamples"] = d.max_resamples;
  j["lf"] = {{"dx", m.lf.dx},           {"dt", m.lf.dt},
             {"pad", m.lf.pad},         {"cfl", m.lf.cfl},
             {"x_points", m.lf.x_points}, {"p_points", m.lf.p_points},
             {"p_half", m.lf.p_half},   {"write_spacing", m.lf.write_spacing}};
  json masks = json::array();
  for (const MaskDisk& md : m.masks) masks.push_back({{"x1", md.x1}, {"x2", md.x2}, {"radius", md.radius}});
  j["masks"] = masks;
  const ConvergenceSettings& c = m.convergence;
  j["convergence"] = {{"x", c.x},
                      {"t", c.t},
                      {"ref_ds", c.ref_ds},
                      {"ref_sigma", c.ref_sigma},
                      {"table1_ds", c.table1_ds},
                      {"table1_sigmas", c.table1_sigmas},
                      {"table2_sigma", c.table2_sigma},
                      {"table2_ds", c.table2_ds}};
  j["out"] = m.out_dir;
  j["trajectory_csv"] = m.trajectory_csv;
  return j;
}

RunManifest resolve_manifest(const json& o) {
  if (!o.is_object()) throw ConfigError("manifest must be a JSON object");
  RunManifest m;
  take(o, "command", m.command);
  if (!o.contains("example") || !o.at("example").is_string()) {
    throw ConfigError("missing required setting: example");
  }
  m.example.id = o.at("example").get<std::string>();
  if (o.contains("sign") && !o.at("sign").is_null()) m.example.sign = parse_sign(o.at("sign"));
  take(o, "dim", m.example.dim);
  take(o, "k", m.example.split_k);
  if (o.contains("data") && o.at("data").is_string()) {
    m.example.data = initial_data_from_string(o.at("data").get<std::string>());
  }

  const ExampleSetup setup = example_setup(m.example);
  m.mode = setup.problem.mode;
  m.solve = setup.solve;
  m.horizon = setup.horizon;
  m.times = setup.times;
  if (m.example.id == "ex5") m.masks.push_back({-1.0, -0.4, 0.3});

  if (o.contains("mode") && o.at("mode").is_string()) {
    const std::string mode = o.at("mode").get<std::string>();
    if (mode != "auto") m.mode = solve_mode_from_string(mode);
  }
  const bool has_times = o.contains("times") && !o.at("times").is_null();
  if (o.contains("T") && !o.at("T").is_null()) {
    take(o, "T", m.horizon);
    require_positive(m.horizon, "T");
    if (!has_times) m.times = uniform_times(m.horizon, setup.times.size());
  }
  take(o, "grid", m.grid);
  take(o, "half_width", m.half_width);
  if (o.contains("point") && !o.at("point").is_null()) {
    const json& p = o.at("point");
    m.point = p.is_string() ? parse_point(p.get<std::string>(), m.example.dim) : p.get<Vec>();
    // a point solve reports the final time unless times are given explicitly
    if (!has_times) m.times = {m.horizon};
  }
  take(o, "times", m.times);
  take(o, "ds", m.solve.ds);
  take(o, "sigma", m.solve.sigma);
  take(o, "cert_tol", m.solve.cert_tol);
  DescentConfig& d = m.solve.descent;
  take(o, "lipschitz", d.lipschitz);
  take(o, "max_iterations", d.max_iterations);
  take(o, "eps", d.eps);
  take(o, "max_backoffs", d.max_backoffs);
  take(o, "trials", d.trials);
  take(o, "seed", d.rng_seed);
  take(o, "init_low", d.init_low);
  take(o, "init_high", d.init_high);
  take(o, "max_resamples", d.max_resamples);
  if (o.contains("lf") && o.at("lf").is_object()) {
    const json& l = o.at("lf");
    take(l, "dx", m.lf.dx);
    take(l, "dt", m.lf.dt);
    take(l, "pad", m.lf.pad);
    take(l, "cfl", m.lf.cfl);
    take(l, "x_points", m.lf.x_points);
    take(l, "p_points", m.lf.p_points);
    take(l, "p_half", m.lf.p_half);
    take(l, "write_spacing", m.lf.write_spacing);
  }
  if (o.contains("masks") && o.at("masks").is_array()) {
    m.masks.clear();
    for (const json& md : o.at("masks")) {
      MaskDisk disk;
      take(md, "x1", disk.x1);
      take(md, "x2", disk.x2);
      take(md, "radius", disk.radius);
      m.masks.push_back(disk);
    }
  }
  if (o.contains("convergence") && o.at("convergence").is_object()) {
    const json& c = o.at("convergence");
    ConvergenceSettings& cs = m.convergence;
    take(c, "x", cs.x);
    take(c, "t", cs.t);
    take(c, "ref_ds", cs.ref_ds);
    take(c, "ref_sigma", cs.ref_sigma);
    take(c, "table1_ds", cs.table1_ds);
    take(c, "table1_sigmas", cs.table1_sigmas);
    take(c, "table2_sigma", cs.table2_sigma);
    take(c, "table2_ds", cs.table2_ds);
  }
  take(o, "out", m.out_dir);
  take(o, "trajectory_csv", m.trajectory_csv);

  // Validate everything up front so no compute starts on a bad run.
  build_problem(m).validate();
  require_positive(m.horizon, "T");
  if (m.times.empty()) throw ConfigError("at least one snapshot time is required");
  for (double t : m.times) require_positive(t, "every snapshot time");
  if (m.grid < 2) throw ConfigError("grid must have at least 2 points per axis");
  require_positive(m.half_width, "half_width");
  require_positive(m.solve.ds, "ds");
  require_positive(m.solve.sigma, "sigma");
  require_positive(m.solve.cert_tol, "cert_tol");
  if (m.mode != SolveMode::LinearDirect) d.validate(m.example.dim);
  if (m.point && m.point->size() != m.example.dim) {
    throw ConfigError("point dimension does not match dim");
  }
  require_positive(m.lf.dx, "lf.dx");
  require_positive(m.lf.dt, "lf.dt");
  require_positive(m.lf.cfl, "lf.cfl");
  if (m.lf.cfl > 1.0) throw ConfigError("lf.cfl must be <= 1");
  if (m.lf.pad < 0.0) throw ConfigError("lf.pad must be non-negative");
  if (m.lf.x_points < 2 || m.lf.p_points < 2) throw ConfigError("lf lattices need >= 2 points");
  for (const MaskDisk& md : m.masks) require_positive(md.radius, "mask radius");
  if (m.out_dir.empty()) throw ConfigError("out directory must not be empty");
  return m;
}

ProblemSpec build_problem(const RunManifest& m) {
  ProblemSpec p = example_setup(m.example).problem;
  p.mode = m.mode;
  return p;
}

GridAxes view_axes(const RunManifest& m) { return GridAxes::square(m.half_width, m.grid); }

bool masked(const std::vector<MaskDisk>& masks, double x1, double x2) {
  for (const MaskDisk& md : masks) {
    if (std::hypot(x1 - md.x1, x2 - md.x2) <= md.radius) return true;
  }
  return false;
}

}  // namespace hjchar::cli
