#include "hjchar/lax_friedrichs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hjchar/errors.hpp"

namespace hjchar {

GridAxes LFConfig::axes() const {
  const double half = half_width + pad;
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half / dx)) + 1;
  return GridAxes::square(half, n);
}

void LFConfig::validate() const {
  if (!(dx > 0.0) || !(dt > 0.0)) throw ConfigError("LF steps dx and dt must be positive");
  if (!(half_width > 0.0) || pad < 0.0) throw ConfigError("LF domain is empty");
  if (alpha1 < 0.0 || alpha2 < 0.0) throw ConfigError("LF dissipation must be non-negative");
  if (cfl_number() > 1.0 + 1e-12) {
    throw ConfigError("LF CFL condition violated: dt*(a1+a2)/dx = " +
                      std::to_string(cfl_number()) + " > 1");
  }
}

Dissipation estimate_dissipation(const HamiltonianModel& model, double lo, double hi,
                                 double p_half, std::size_t x_points, std::size_t p_points,
                                 double t) {
  if (model.dimension() != 2) throw ConfigError("estimate_dissipation needs a 2-D model");
  if (x_points < 2 || p_points < 2) throw ConfigError("dissipation lattice needs >= 2 points");
  Dissipation a;
  Vec x(2), p(2), g(2);
  const double hx = (hi - lo) / static_cast<double>(x_points - 1);
  const double hp = 2.0 * p_half / static_cast<double>(p_points - 1);
  for (std::size_t i = 0; i < x_points; ++i) {
    for (std::size_t j = 0; j < x_points; ++j) {
      x[0] = lo + static_cast<double>(i) * hx;
      x[1] = lo + static_cast<double>(j) * hx;
      for (std::size_t k = 0; k < p_points; ++k) {
        for (std::size_t l = 0; l < p_points; ++l) {
          p[0] = -p_half + static_cast<double>(k) * hp;
          p[1] = -p_half + static_cast<double>(l) * hp;
          try {
            model.grad_p(x, p, t, g);
          } catch (const SingularPointError&) {
            continue;
          }
          a.alpha1 = std::max(a.alpha1, std::fabs(g[0]));
          a.alpha2 = std::max(a.alpha2, std::fabs(g[1]));
        }
      }
    }
  }
  return a;
}

LFConfig fit_time_step(LFConfig cfg, double horizon, double cfl) {
  const double speed = cfg.alpha1 + cfg.alpha2;
  double dt_max = cfg.dt;
  if (speed > 0.0) dt_max = std::min(dt_max, cfl * cfg.dx / speed);
  const double steps = std::ceil(horizon / dt_max - 1e-9);
  cfg.dt = horizon / std::max(1.0, steps);
  return cfg;
}

void lf_step(const HamiltonianModel& model, const GridAxes& axes, ConstSpan phi, double t,
             double dt, const Dissipation& alpha, MutSpan out) {
  const std::size_t n1 = axes.n1;
  const std::size_t n2 = axes.n2;
  const double inv1 = 1.0 / axes.h1();
  const double inv2 = 1.0 / axes.h2();
  double xs[2];
  double ps[2];
  for (std::size_t j = 0; j < n2; ++j) {
    xs[1] = axes.x2(j);
    for (std::size_t i = 0; i < n1; ++i) {
      xs[0] = axes.x1(i);
      const std::size_t c = j * n1 + i;
      const double f = phi[c];
      double m1 = i > 0 ? (f - phi[c - 1]) * inv1 : 0.0;
      double p1 = i + 1 < n1 ? (phi[c + 1] - f) * inv1 : 0.0;
      if (i == 0) m1 = p1;
      if (i + 1 == n1) p1 = m1;
      double m2 = j > 0 ? (f - phi[c - n1]) * inv2 : 0.0;
      double p2 = j + 1 < n2 ? (phi[c + n1] - f) * inv2 : 0.0;
      if (j == 0) m2 = p2;
      if (j + 1 == n2) p2 = m2;
      ps[0] = 0.5 * (m1 + p1);
      ps[1] = 0.5 * (m2 + p2);
      const double h = model.eval(ConstSpan(xs, 2), ConstSpan(ps, 2), t) -
                       0.5 * alpha.alpha1 * (p1 - m1) - 0.5 * alpha.alpha2 * (p2 - m2);
      out[c] = f - dt * h;
    }
  }
}

std::vector<Grid2DField> lf_solve(const ProblemSpec& spec, const LFConfig& cfg, double horizon,
                                  const std::vector<double>& snapshot_times) {
  if (!spec.model || !spec.data) throw ConfigError("lf_solve needs a model and initial data");
  if (spec.dimension() != 2) throw ConfigError("lf_solve only supports d = 2");
  if (!(horizon > 0.0)) throw ConfigError("lf_solve horizon must be positive");
  cfg.validate();
  const GridAxes axes = cfg.axes();
  const HamiltonianModel& model = *spec.model;
  const Dissipation alpha{cfg.alpha1, cfg.alpha2};

  const auto n_steps = static_cast<std::size_t>(std::llround(horizon / cfg.dt));
  std::vector<std::size_t> snap_steps;
  for (double ts : snapshot_times) {
    if (ts < 0.0 || ts > horizon * (1.0 + 1e-12)) {
      throw ConfigError("LF snapshot time outside [0, horizon]");
    }
    snap_steps.push_back(std::min(n_steps, static_cast<std::size_t>(std::llround(ts / cfg.dt))));
  }

  Vec phi(axes.size());
  Vec next(axes.size());
  double x[2];
  for (std::size_t j = 0; j < axes.n2; ++j) {
    for (std::size_t i = 0; i < axes.n1; ++i) {
      x[0] = axes.x1(i);
      x[1] = axes.x2(j);
      phi[j * axes.n1 + i] = spec.data->g(ConstSpan(x, 2));
    }
  }

  std::vector<Grid2DField> out(snapshot_times.size());
  auto capture = [&](std::size_t step) {
    for (std::size_t s = 0; s < snap_steps.size(); ++s) {
      if (snap_steps[s] != step) continue;
      out[s] = Grid2DField(axes, static_cast<double>(step) * cfg.dt, "lf");
      out[s].values = phi;
    }
  };
  capture(0);
  for (std::size_t step = 1; step <= n_steps; ++step) {
    lf_step(model, axes, phi, static_cast<double>(step - 1) * cfg.dt, cfg.dt, alpha, next);
    phi.swap(next);
    capture(step);
  }
  return out;
}

}  // namespace hjchar
