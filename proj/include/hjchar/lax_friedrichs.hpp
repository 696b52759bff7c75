#pragma once

#include <cstddef>
#include <vector>

#include "hjchar/functionals.hpp"
#include "hjchar/grid.hpp"
#include "hjchar/hamiltonian.hpp"

namespace hjchar {

/// First-order Lax-Friedrichs scheme on [-(half_width + pad), half_width + pad]^2.
struct LFConfig {
  double dx = 0.005;
  double dt = 0.001;
  double half_width = 3.0;
  double pad = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  GridAxes axes() const;
  /// dt * (alpha1 + alpha2) / dx; the scheme is monotone when this is <= 1.
  double cfl_number() const { return dt * (alpha1 + alpha2) / dx; }
  /// Throws ConfigError on non-positive steps, negative dissipation, or CFL > 1.
  void validate() const;
};

struct Dissipation {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
};

/// alpha_i = max |dH/dp_i| over a lattice of x_points^2 states in [lo, hi]^2 and
/// p_points^2 co-states in [-p_half, p_half]^2. Lattice points where dH/dp is
/// undefined (p = 0 for non-smooth models) are skipped.
Dissipation estimate_dissipation(const HamiltonianModel& model, double lo, double hi,
                                 double p_half = 5.0, std::size_t x_points = 21,
                                 std::size_t p_points = 21, double t = 0.0);

/// Largest dt <= cfg.dt with CFL number <= cfl that divides T into whole steps.
LFConfig fit_time_step(LFConfig cfg, double horizon, double cfl = 0.9);

/// One explicit step phi -> out with the numerical Hamiltonian
///   H(x, (p- + p+)/2, t) - alpha1 (p1+ - p1-)/2 - alpha2 (p2+ - p2-)/2.
/// Boundary nodes use the one available one-sided difference for both p- and p+.
void lf_step(const HamiltonianModel& model, const GridAxes& axes, ConstSpan phi, double t,
             double dt, const Dissipation& alpha, MutSpan out);

/// Integrates phi_t + H(x, grad phi, t) = 0 from phi(., 0) = g up to `horizon` and
/// returns a field (source "lf") at the step nearest to each snapshot time.
std::vector<Grid2DField> lf_solve(const ProblemSpec& spec, const LFConfig& cfg, double horizon,
                                  const std::vector<double>& snapshot_times);

}  // namespace hjchar
