#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hjchar/functionals.hpp"
#include "hjchar/grid.hpp"
#include "hjchar/optimizer.hpp"
#include "hjchar/vec.hpp"

namespace hjchar {

struct SolveConfig {
  double ds = 0.02;      // Euler and quadrature step
  double sigma = 0.001;  // forward-difference step
  DescentConfig descent{};
  double cert_tol = 1e-3;
};

struct PointSolution {
  Vec x;
  double t = 0.0;
  double value = 0.0;
  Vec v_star;  // approximates grad_x phi(x, t) where phi is smooth
  bool converged = false;
  bool certificate_ok = false;
  int trials_used = 0;
  int resamples = 0;
  long iterations = 0;
  double wall_time = 0.0;
  SolveMode mode = SolveMode::Lax;
};

/// phi(x, t) by the spec's representation formula:
///   Lax / MinOverTime: min_v F(v) over multi-start coordinate descent;
///   LaxMax:            max_v F1(v), as -min_v of -F1;
///   Hopf:              -min_v G(v);
///   LinearDirect:      one trajectory, no optimization. v* is recovered by
///                      carrying p_0 = grad g(x_0) forward along the path.
/// For degree-1 homogeneous H the Lax and min-over-time functionals are invariant
/// under v -> lambda v; v* is rescaled so |p| matches |grad g| before certifying.
PointSolution solve_point(const ProblemSpec& spec, ConstSpan x, double t, const SolveConfig& cfg);

using GridProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Solves every node of `axes` (embedded as (x1, x2, 0, ..., 0)) at every time in
/// `times`. Node seeds derive from (cfg seed, time index, node index), so the
/// output is bit-identical for any worker count. Per-point failures land in the
/// field flags and never abort the grid.
std::vector<Grid2DField> solve_grid(const ProblemSpec& spec, const GridAxes& axes,
                                    const std::vector<double>& times, const SolveConfig& cfg,
                                    unsigned workers = 1, const GridProgress& progress = {});

/// Seed used for grid node `node` at time index `time_index`.
std::uint64_t grid_point_seed(std::uint64_t seed, std::size_t time_index, std::size_t node,
                              std::size_t nodes_per_time);

}  // namespace hjchar
