#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "hjchar/cli.hpp"
#include "hjchar/errors.hpp"

namespace hjchar::cli {

using nlohmann::json;
namespace fs = std::filesystem;

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("HJ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

using Clock = std::chrono::steady_clock;

struct Runtime {
  unsigned threads = 1;
  bool quiet = false;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

GridProgress progress_printer(const Runtime& rt, std::ostream& err, const char* label) {
  if (rt.quiet) return {};
  return [&err, label](std::size_t done, std::size_t total) {
    const std::size_t step = std::max<std::size_t>(1, total / 10);
    if (done % step == 0 || done == total) err << label << ": " << done << '/' << total << '\n';
  };
}

json runtime_json(const Runtime& rt, Clock::time_point start) {
  return {{"threads", rt.threads},
          {"wall_time_s", std::chrono::duration<double>(Clock::now() - start).count()}};
}

struct CharRun {
  std::vector<Grid2DField> fields;
  std::vector<std::vector<Segment>> sets;
  json summaries = json::array();
  json files = json::array();
};

CharRun run_char_grid(const RunManifest& m, const Runtime& rt, std::ostream& err) {
  CharRun r;
  const ProblemSpec problem = build_problem(m);
  r.fields = solve_grid(problem, view_axes(m), m.times, m.solve, rt.threads,
                        progress_printer(rt, err, "char grid"));
  const fs::path dir(m.out_dir);
  for (std::size_t k = 0; k < r.fields.size(); ++k) {
    const std::string name = "field_char_" + std::to_string(k) + ".csv";
    auto f = open_out(dir / name);
    write_field_csv(f, r.fields[k]);
    r.files.push_back(name);
    r.sets.push_back(extract_zero_levelset(r.fields[k]));
    r.summaries.push_back(field_summary(r.fields[k]));
  }
  auto ls = open_out(dir / "levelset_char.csv");
  write_levelset_csv(ls, m.times, r.sets);
  r.files.push_back("levelset_char.csv");
  return r;
}

int cmd_solve(const RunManifest& m, const Runtime& rt, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const fs::path dir(m.out_dir);
  json manifest = to_json(m);
  write_json(dir / "manifest.json", manifest);
  if (m.point) {
    const ProblemSpec problem = build_problem(m);
    json sols = json::array();
    for (double t : m.times) {
      const PointSolution s = solve_point(problem, *m.point, t, m.solve);
      sols.push_back(point_to_json(s));
      if (!m.trajectory_csv.empty() && !s.v_star.empty()) {
        Trajectory traj;
        integrate_backward(*problem.model, *m.point, s.v_star, t, std::min(m.solve.ds, t), traj);
        auto f = open_out(dir / (m.trajectory_csv + "_" + std::to_string(sols.size() - 1) + ".csv"));
        write_trajectory_csv(f, traj);
      }
    }
    const json result = sols.size() == 1 ? sols[0] : sols;
    write_json(dir / "point.json", {{"manifest", manifest},
                                    {"solution", result},
                                    {"runtime", runtime_json(rt, start)}});
    out << result.dump(2) << '\n';
    return 0;
  }
  const CharRun r = run_char_grid(m, rt, err);
  json files = r.files;
  files.push_back("manifest.json");
  const json summary = {{"manifest", manifest},
                        {"runtime", runtime_json(rt, start)},
                        {"fields", r.summaries},
                        {"files", files}};
  write_json(dir / "summary.json", summary);
  out << summary["fields"].dump(2) << '\n';
  return 0;
}

int cmd_compare(const RunManifest& m, const Runtime& rt, std::ostream& out, std::ostream& err) {
  if (m.example.dim != 2) throw ConfigError("compare needs dim = 2 (the LF oracle is 2-D)");
  const auto start = Clock::now();
  const fs::path dir(m.out_dir);
  const json manifest = to_json(m);
  write_json(dir / "manifest.json", manifest);
  const CharRun chr = run_char_grid(m, rt, err);

  const ProblemSpec problem = build_problem(m);
  const double half = m.half_width + m.lf.pad;
  const Dissipation a = estimate_dissipation(*problem.model, -half, half, m.lf.p_half,
                                             m.lf.x_points, m.lf.p_points);
  LFConfig cfg{m.lf.dx, m.lf.dt, m.half_width, m.lf.pad, a.alpha1, a.alpha2};
  const double horizon = *std::max_element(m.times.begin(), m.times.end());
  cfg = fit_time_step(cfg, horizon, m.lf.cfl);
  if (!rt.quiet) {
    err << "lf: alpha = (" << a.alpha1 << ", " << a.alpha2 << "), dt = " << cfg.dt
        << ", steps = " << std::llround(horizon / cfg.dt) << '\n';
  }
  const std::vector<Grid2DField> lf_full = lf_solve(problem, cfg, horizon, m.times);

  json files = chr.files;
  json snapshots = json::array();
  std::vector<std::vector<Segment>> lf_sets;
  const auto stride = static_cast<std::size_t>(
      std::max(1.0, std::round(m.lf.write_spacing / m.lf.dx)));
  for (std::size_t k = 0; k < lf_full.size(); ++k) {
    const Grid2DField lf = crop_to_window(lf_full[k], m.half_width);
    lf_sets.push_back(extract_zero_levelset(lf));
    const std::string name = "field_lf_" + std::to_string(k) + ".csv";
    auto f = open_out(dir / name);
    write_field_csv(f, lf, stride);
    files.push_back(name);
    json s = compare_fields(chr.fields[k], lf, chr.sets[k], lf_sets.back(), m.masks);
    s["hausdorff_cells"] = s["hausdorff"].get<double>() / cfg.dx;
    snapshots.push_back(s);
  }
  auto ls = open_out(dir / "levelset_lf.csv");
  write_levelset_csv(ls, m.times, lf_sets);
  files.push_back("levelset_lf.csv");
  files.push_back("manifest.json");
  files.push_back("compare_report.json");

  const json report = {
      {"manifest", manifest},
      {"runtime", runtime_json(rt, start)},
      {"lf",
       {{"alpha1", cfg.alpha1}, {"alpha2", cfg.alpha2}, {"dx", cfg.dx}, {"dt", cfg.dt},
        {"cfl", cfg.cfl_number()}, {"steps", std::llround(horizon / cfg.dt)}}},
      {"char_fields", chr.summaries},
      {"snapshots", snapshots},
      {"files", files}};
  write_json(dir / "compare_report.json", report);
  out << snapshots.dump(2) << '\n';
  return 0;
}

int cmd_convergence(const RunManifest& m, const Runtime& rt, std::ostream& out) {
  const auto start = Clock::now();
  const fs::path dir(m.out_dir);
  const ConvergenceSettings& c = m.convergence;
  if (c.x.size() != m.example.dim) throw ConfigError("convergence point dimension != dim");
  const ProblemSpec problem = build_problem(m);
  auto solve = [&](double ds, double sigma) {
    SolveConfig cfg = m.solve;
    cfg.ds = ds;
    cfg.sigma = sigma;
    return solve_point(problem, c.x, c.t, cfg).value;
  };
  const double ref = solve(c.ref_ds, c.ref_sigma);

  auto table = [&](const std::string& name, const std::vector<std::pair<double, double>>& rows) {
    auto f = open_out(dir / name);
    f << "ds,sigma,value,reference,error\n";
    json j = json::array();
    for (auto [ds, sigma] : rows) {
      const double v = solve(ds, sigma);
      const double e = std::fabs(v - ref);
      f << format_double(ds) << ',' << format_double(sigma) << ',' << format_double(v) << ','
        << format_double(ref) << ',' << format_double(e) << '\n';
      j.push_back({{"ds", ds}, {"sigma", sigma}, {"value", v}, {"error", e}});
    }
    return j;
  };
  std::vector<std::pair<double, double>> t1, t2;
  for (double s : c.table1_sigmas) t1.emplace_back(c.table1_ds, s);
  for (double ds : c.table2_ds) t2.emplace_back(ds, c.table2_sigma);
  t1.emplace_back(c.ref_ds, c.ref_sigma);
  t2.emplace_back(c.ref_ds, c.ref_sigma);
  const json result = {{"reference", ref},
                       {"table1", table("table1_sigma.csv", t1)},
                       {"table2", table("table2_ds.csv", t2)}};
  const json manifest = to_json(m);
  write_json(dir / "manifest.json", manifest);
  write_json(dir / "convergence.json",
             {{"manifest", manifest}, {"runtime", runtime_json(rt, start)}, {"result", result}});
  out << result.dump(2) << '\n';
  return 0;
}

int cmd_list(std::ostream& out) {
  json list = json::array();
  for (const std::string& id : example_ids()) {
    for (int sign : {1, -1}) {
      ExampleChoice ch;
      ch.id = id;
      ch.sign = sign;
      const ExampleSetup s = example_setup(ch);
      list.push_back({{"example", id},
                      {"sign", sign > 0 ? "+" : "-"},
                      {"description", s.description},
                      {"mode", to_string(s.problem.mode)},
                      {"T", s.horizon},
                      {"times", s.times},
                      {"ds", s.solve.ds},
                      {"sigma", s.solve.sigma},
                      {"lipschitz", s.solve.descent.lipschitz},
                      {"trials", s.solve.descent.trials}});
      if (id != "ex2" && id != "ex3") break;
    }
  }
  out << list.dump(2) << '\n';
  return 0;
}

// Flags are collected as strings and turned into manifest overrides only when given,
// so values from --manifest survive unless a flag replaces them.
struct FlagTable {
  struct Entry {
    std::string pointer;
    std::function<json(const std::string&)> convert;
    std::shared_ptr<std::string> value;
    CLI::Option* option;
  };
  std::vector<Entry> entries;

  void add(CLI::App& app, const std::string& name, const std::string& pointer,
           std::function<json(const std::string&)> convert, const std::string& help) {
    auto value = std::make_shared<std::string>();
    CLI::Option* opt = app.add_option(name, *value, help);
    entries.push_back({pointer, std::move(convert), value, opt});
  }

  void apply(json& o) const {
    for (const Entry& e : entries) {
      if (e.option->count() > 0) o[json::json_pointer(e.pointer)] = e.convert(*e.value);
    }
  }
};

json as_number(const std::string& s) {
  const std::vector<double> v = parse_list(s);
  if (v.size() != 1) throw ConfigError("expected one number, got '" + s + "'");
  return v[0];
}

json as_integer(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("expected an integer, got '" + s + "'");
}

json as_string(const std::string& s) { return s; }
json as_list(const std::string& s) { return parse_list(s); }

void add_run_flags(CLI::App& app, FlagTable& flags, bool with_point) {
  flags.add(app, "--example", "/example", as_string, "example id ex1..ex5");
  flags.add(app, "--sign", "/sign", as_string, "+ or - (ex2, ex3)");
  flags.add(app, "--dim", "/dim", as_integer, "space dimension d");
  flags.add(app, "--k", "/k", as_integer, "ex5 block size k");
  flags.add(app, "--data", "/data", as_string, "initial data: ellipse or rosenbrock");
  flags.add(app, "--mode", "/mode", as_string, "lax, lax-max, min-over-time, hopf, linear-direct, auto");
  flags.add(app, "--T", "/T", as_number, "final time");
  flags.add(app, "--times", "/times", as_list, "comma-separated snapshot times");
  flags.add(app, "--grid", "/grid", as_integer, "grid points per axis");
  flags.add(app, "--half-width", "/half_width", as_number, "grid covers [-w, w]^2");
  if (with_point) flags.add(app, "--point", "/point", as_string, "single point, e.g. 0,...,0");
  flags.add(app, "--ds", "/ds", as_number, "characteristic step");
  flags.add(app, "--sigma", "/sigma", as_number, "finite-difference step");
  flags.add(app, "--lipschitz", "/lipschitz", as_number, "initial L (alpha = 1/L)");
  flags.add(app, "--max-iterations", "/max_iterations", as_integer, "steps per alpha level");
  flags.add(app, "--eps", "/eps", as_number, "coordinate stopping tolerance");
  flags.add(app, "--max-backoffs", "/max_backoffs", as_integer, "alpha halvings");
  flags.add(app, "--trials", "/trials", as_integer, "random initial guesses");
  flags.add(app, "--seed", "/seed", as_integer, "RNG seed");
  flags.add(app, "--cert-tol", "/cert_tol", as_number, "certificate tolerance");
  flags.add(app, "--lf-dx", "/lf/dx", as_number, "LF spatial step");
  flags.add(app, "--lf-dt", "/lf/dt", as_number, "LF time step upper bound");
  flags.add(app, "--lf-cfl", "/lf/cfl", as_number, "LF target CFL number");
  flags.add(app, "--conv-x", "/convergence/x", as_list, "convergence point");
  flags.add(app, "--conv-t", "/convergence/t", as_number, "convergence time");
  flags.add(app, "--out", "/out", as_string, "output directory");
  flags.add(app, "--trajectory-csv", "/trajectory_csv", as_string,
            "file stem for trajectory dumps in point mode");
}

json load_manifest_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read manifest " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path + " is not valid JSON: " + e.what());
  }
}

void report_error(std::ostream& err, const char* type, const std::string& message) {
  err << json{{"error", {{"type", type}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid-free Hamilton-Jacobi solver via generalized Lax and Hopf formulas"};
  app.require_subcommand(1);
  std::optional<unsigned> threads;
  bool quiet = false;
  std::string manifest_path;

  struct Sub {
    CLI::App* app;
    FlagTable flags;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  for (const char* name : {"solve", "compare", "convergence"}) {
    auto s = std::make_unique<Sub>();
    const std::string help = std::string(name) == "solve"
                                 ? "solve on a grid or at one point"
                                 : std::string(name) == "compare"
                                       ? "compare against the Lax-Friedrichs oracle (d = 2)"
                                       : "reproduce the step-size convergence tables";
    s->app = app.add_subcommand(name, help);
    s->app->add_option("--manifest", manifest_path, "JSON manifest; flags override it");
    s->app->add_option("--threads", threads, "worker threads (default HJ_THREADS or all cores)");
    s->app->add_flag("--quiet", quiet, "no progress output");
    add_run_flags(*s->app, s->flags, std::string(name) == "solve");
    subs.push_back(std::move(s));
  }
  CLI::App* list = app.add_subcommand("list-examples", "print the built-in examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (list->parsed()) return cmd_list(out);
    for (const auto& s : subs) {
      if (!s->app->parsed()) continue;
      json o = manifest_path.empty() ? json::object() : load_manifest_file(manifest_path);
      s->flags.apply(o);
      o["command"] = s->app->get_name();
      if (!o.contains("example")) {
        err << s->app->help();
        report_error(err, "UsageError", "--example is required (directly or via --manifest)");
        return 2;
      }
      const RunManifest m = resolve_manifest(o);
      fs::create_directories(m.out_dir);
      Runtime rt{resolve_threads(threads), quiet};
      if (m.command == "solve") return cmd_solve(m, rt, out, err);
      if (m.command == "compare") return cmd_compare(m, rt, out, err);
      return cmd_convergence(m, rt, out);
    }
  } catch (const ConfigError& e) {
    report_error(err, "ConfigError", e.what());
    return 2;
  } catch (const UnsupportedOperationError& e) {
    report_error(err, "UnsupportedOperationError", e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error(err, "Error", e.what());
    return 1;
  }
  return 1;
}

}  // namespace hjchar::cli
