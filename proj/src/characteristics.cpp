#include "hjchar/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hjchar/errors.hpp"

namespace hjchar {

std::size_t step_count(double t, double ds) {
  const double ratio = t / ds;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::fabs(ratio - nearest) <= 1e-9 * nearest) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

void integrate_backward(const HamiltonianModel& model, ConstSpan x, ConstSpan v, double t,
                        double ds, Trajectory& out) {
  const std::size_t d = model.dimension();
  if (x.size() != d || v.size() != d) {
    throw ConfigError("integrate_backward: point/co-state dimension mismatch");
  }
  if (!(t > 0.0)) throw ConfigError("integrate_backward: horizon t must be positive");
  if (!(ds > 0.0) || ds > t * (1.0 + 1e-12)) {
    throw ConfigError("integrate_backward: step must satisfy 0 < ds <= t");
  }
  if (!model.traits().smooth_at_p0 && norm2(v) <= kSingularNorm) {
    throw SingularPointError(model.name() + ": terminal co-state v = 0");
  }

  const std::size_t n_steps = step_count(t, ds);
  out.dim = d;
  out.steps = n_steps;
  out.dt = ds;
  out.times.resize(n_steps + 1);
  out.states.resize((n_steps + 1) * d);
  out.costates.resize((n_steps + 1) * d);
  out.hamiltonian.resize(n_steps + 1);
  out.p_dot_dph.resize(n_steps + 1);
  out.x_dot_dxh.resize(n_steps + 1);
  out.terminal_x.assign(x.begin(), x.end());
  out.terminal_v.assign(v.begin(), v.end());

  out.times[0] = 0.0;
  for (std::size_t n = 1; n < n_steps; ++n) {
    out.times[n] = t - static_cast<double>(n_steps - n) * ds;
  }
  out.times[n_steps] = t;

  std::copy(x.begin(), x.end(), out.state(n_steps).begin());
  std::copy(v.begin(), v.end(), out.costate(n_steps).begin());

  out.work_dp.resize(d);
  out.work_dx.resize(d);
  MutSpan dp(out.work_dp);
  MutSpan dx(out.work_dx);
  auto record = [&](std::size_t n) {
    const ConstSpan xn = out.state(n);
    const ConstSpan pn = out.costate(n);
    out.hamiltonian[n] = model.eval_with_grads(xn, pn, out.times[n], dp, dx);
    out.p_dot_dph[n] = dot(pn, dp);
    out.x_dot_dxh[n] = dot(xn, dx);
  };

  for (std::size_t n = n_steps; n >= 1; --n) {
    record(n);
    const double h = out.interval(n);
    const ConstSpan xn = out.state(n);
    const ConstSpan pn = out.costate(n);
    MutSpan xp = out.state(n - 1);
    MutSpan pp = out.costate(n - 1);
    for (std::size_t i = 0; i < d; ++i) {
      xp[i] = xn[i] - h * dp[i];
      pp[i] = pn[i] + h * dx[i];
    }
    if (!all_finite(xp) || !all_finite(pp)) {
      throw NonFiniteStateError(model.name() + ": characteristic left the finite range at step " +
                                std::to_string(n - 1));
    }
  }
  record(0);
  if (!std::isfinite(out.hamiltonian[0])) {
    throw NonFiniteStateError(model.name() + ": Hamiltonian overflow at s = 0");
  }
}

Trajectory integrate_backward(const HamiltonianModel& model, ConstSpan x, ConstSpan v, double t,
                              double ds) {
  Trajectory traj;
  integrate_backward(model, x, v, t, ds, traj);
  return traj;
}

Vec recover_terminal_costate(const HamiltonianModel& model, const Trajectory& traj, ConstSpan p0) {
  const std::size_t d = traj.dim;
  Vec prev(p0.begin(), p0.end());
  Vec cur(d), next(d), dx(d);
  for (std::size_t n = 1; n <= traj.steps; ++n) {
    const double h = traj.interval(n);
    const ConstSpan xn = traj.state(n);
    cur = prev;
    for (int it = 0; it < 200; ++it) {
      model.grad_x(xn, cur, traj.times[n], dx);
      double change = 0.0;
      double scale = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        next[i] = prev[i] - h * dx[i];
        change = std::fmax(change, std::fabs(next[i] - cur[i]));
        scale = std::fmax(scale, std::fabs(next[i]));
      }
      cur.swap(next);
      if (change <= 1e-15 * (1.0 + scale)) break;
    }
    if (!all_finite(cur)) {
      throw NonFiniteStateError(model.name() + ": co-state recovery diverged");
    }
    prev.swap(cur);
  }
  return prev;
}

}  // namespace hjchar
