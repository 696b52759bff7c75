#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hjchar/catalog.hpp"
#include "hjchar/grid.hpp"
#include "hjchar/lax_friedrichs.hpp"
#include "hjchar/levelset.hpp"
#include "hjchar/pointwise_solver.hpp"

namespace hjchar::cli {

struct LFSettings {
  double dx = 0.005;
  double dt = 0.001;
  double pad = 1.0;
  double cfl = 0.9;               // dt is lowered until dt*(a1+a2)/dx <= cfl
  std::size_t x_points = 61;      // dissipation lattice, per axis
  std::size_t p_points = 21;
  double p_half = 5.0;
  double write_spacing = 0.02;    // LF field CSVs are thinned to about this spacing
};

struct MaskDisk {
  double x1 = 0.0;
  double x2 = 0.0;
  double radius = 0.0;
};

struct ConvergenceSettings {
  Vec x{-0.93, -0.35};
  double t = 0.3;
  double ref_ds = 0.005;
  double ref_sigma = 0.01;
  double table1_ds = 0.005;
  std::vector<double> table1_sigmas{0.02, 0.03, 0.04, 0.05, 0.06};
  double table2_sigma = 0.01;
  std::vector<double> table2_ds{0.03, 0.025, 0.02, 0.015, 0.01};
};

/// Fully resolved description of one run. Serializing it and resolving the result
/// again gives the same manifest.
struct RunManifest {
  std::string command;
  ExampleChoice example;
  SolveMode mode = SolveMode::Lax;
  double horizon = 0.0;
  std::vector<double> times;
  std::size_t grid = 121;
  double half_width = 3.0;
  std::optional<Vec> point;
  SolveConfig solve;
  LFSettings lf;
  std::vector<MaskDisk> masks;
  ConvergenceSettings convergence;
  std::string out_dir = "out";
  std::string trajectory_csv;
};

nlohmann::json to_json(const RunManifest& m);

/// Fills every field from the example defaults and then applies `overrides`
/// (keys as produced by to_json). Throws ConfigError on any invalid value.
RunManifest resolve_manifest(const nlohmann::json& overrides);

/// "1,2,3" -> {1,2,3}; "a,...,b" repeats a up to `dim` entries and ends with b.
Vec parse_point(const std::string& text, std::size_t dim);
std::vector<double> parse_list(const std::string& text);

ProblemSpec build_problem(const RunManifest& m);
GridAxes view_axes(const RunManifest& m);
bool masked(const std::vector<MaskDisk>& masks, double x1, double x2);

std::string format_double(double v);

// Writers. Field columns: x1,x2,t,value,converged,certificate_ok,trials_used,source.
extern const char* const kFieldHeader;
extern const char* const kLevelSetHeader;
void write_field_csv(std::ostream& os, const Grid2DField& f, std::size_t stride = 1);
void write_levelset_csv(std::ostream& os, const std::vector<double>& times,
                        const std::vector<std::vector<Segment>>& sets);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
nlohmann::json point_to_json(const PointSolution& s);

/// Per-grid statistics for the run summary.
nlohmann::json field_summary(const Grid2DField& f);

/// Discrepancy between a characteristics field and an LF field on the same window.
nlohmann::json compare_fields(const Grid2DField& chr, const Grid2DField& lf,
                              const std::vector<Segment>& chr_set,
                              const std::vector<Segment>& lf_set,
                              const std::vector<MaskDisk>& masks);

/// The LF field restricted to the characteristics viewing window.
Grid2DField crop_to_window(const Grid2DField& f, double half_width);

unsigned resolve_threads(std::optional<unsigned> flag);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hjchar::cli
