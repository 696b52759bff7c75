#pragma once

#include <cstddef>

#include "hjchar/hamiltonian.hpp"
#include "hjchar/vec.hpp"

namespace hjchar {

/// A discretized bi-characteristic (x_n, p_n) on s_0 = 0 < s_1 < ... < s_N = t.
///
/// Node N carries the terminal condition (x, v). The sweep also records, per node,
/// the scalars the Lax and Hopf quadratures need so that a functional evaluation
/// costs one Hamiltonian evaluation per node.
struct Trajectory {
  std::size_t dim = 0;
  std::size_t steps = 0;  // N
  double dt = 0.0;        // nominal step; the first interval may be shorter
  Vec times;              // N + 1
  Vec states;             // (N + 1) * dim, row n is x_n
  Vec costates;           // (N + 1) * dim, row n is p_n
  Vec hamiltonian;        // H(x_n, p_n, s_n)
  Vec p_dot_dph;          // <p_n, dH/dp(x_n, p_n, s_n)>
  Vec x_dot_dxh;          // <x_n, dH/dx(x_n, p_n, s_n)>
  Vec terminal_x;
  Vec terminal_v;
  Vec work_dp, work_dx;    // per-step gradients, kept to avoid reallocating

  ConstSpan state(std::size_t n) const { return {states.data() + n * dim, dim}; }
  ConstSpan costate(std::size_t n) const { return {costates.data() + n * dim, dim}; }
  MutSpan state(std::size_t n) { return {states.data() + n * dim, dim}; }
  MutSpan costate(std::size_t n) { return {costates.data() + n * dim, dim}; }
  /// Length of the interval (s_{n-1}, s_n], n >= 1.
  double interval(std::size_t n) const { return times[n] - times[n - 1]; }
};

/// Number of Euler steps for horizon t at nominal step ds: ceil(t / ds), ignoring
/// round-off in the ratio.
std::size_t step_count(double t, double ds);

/// Explicit Euler sweep of the bi-characteristic system from s = t back to s = 0:
///   x_{n-1} = x_n - h_n dH/dp(x_n, p_n, s_n),
///   p_{n-1} = p_n + h_n dH/dx(x_n, p_n, s_n),
/// with x_N = x and p_N = v. When t is not a multiple of ds the first interval
/// (s_0, s_1] is the short one.
///
/// Throws ConfigError for t <= 0 or ds outside (0, t]; SingularPointError when a
/// non-smooth model meets p = 0; NonFiniteStateError on overflow.
void integrate_backward(const HamiltonianModel& model, ConstSpan x, ConstSpan v, double t,
                        double ds, Trajectory& out);

Trajectory integrate_backward(const HamiltonianModel& model, ConstSpan x, ConstSpan v, double t,
                              double ds);

/// Given the state path of `traj` and an initial co-state p_0, recovers p_1..p_N by
/// inverting the backward co-state update at each step (fixed-point iteration on
/// p_n = p_{n-1} - h_n dH/dx(x_n, p_n, s_n)). Only meaningful when the state path
/// does not depend on p, i.e. for Hamiltonians linear in p. Returns p_N.
Vec recover_terminal_costate(const HamiltonianModel& model, const Trajectory& traj, ConstSpan p0);

}  // namespace hjchar
