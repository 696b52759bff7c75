#include "hjchar/pointwise_solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "hjchar/errors.hpp"

namespace hjchar {

namespace {

using Clock = std::chrono::steady_clock;

PointSolution solve_linear_direct(const ProblemSpec& spec, ConstSpan x, double t, double ds,
                                  const SolveConfig& cfg) {
  const HamiltonianModel& model = *spec.model;
  const std::size_t d = spec.dimension();
  PointSolution sol;
  sol.trials_used = 1;

  const Vec zero(d, 0.0);
  Objective obj(spec, Vec(x.begin(), x.end()), t, ds, cfg.sigma);
  Trajectory traj;
  sol.value = lax_value(obj, zero, traj);

  // The state path does not depend on v; pick the co-state that starts on dg.
  Vec p0(d);
  spec.data->grad_g(traj.state(0), p0);
  sol.v_star = recover_terminal_costate(model, traj, p0);
  integrate_backward(model, x, sol.v_star, t, ds, traj);
  sol.certificate_ok = check_certificate(traj, *spec.data, cfg.cert_tol);
  sol.converged = std::isfinite(sol.value);
  return sol;
}

// Scale-invariant functionals leave |v| undetermined; match |p| to |grad g| at the
// certificate node so that v* is comparable to grad phi.
bool certify_descent(const ProblemSpec& spec, ConstSpan x, double t, double ds, double tol,
                     DescentResult& r, Trajectory& traj) {
  const HamiltonianModel& model = *spec.model;
  integrate_backward(model, x, r.v_star, t, ds, traj);
  std::size_t node = 0;
  if (spec.mode == SolveMode::MinOverTime) {
    double best = spec.data->g(traj.state(traj.steps));
    node = traj.steps;
    for (std::size_t n = traj.steps; n-- > 0;) {
      const double g = spec.data->g(traj.state(n));
      if (g < best) {
        best = g;
        node = n;
      }
    }
  }
  const bool scale_free = model.traits().homogeneous_degree1 &&
                          (spec.mode == SolveMode::Lax || spec.mode == SolveMode::LaxMax ||
                           spec.mode == SolveMode::MinOverTime);
  if (scale_free) {
    Vec grad(traj.dim);
    spec.data->grad_g(traj.state(node), grad);
    const double np = norm2(traj.costate(node));
    const double ng = norm2(grad);
    if (np > 0.0 && ng > 0.0) {
      const double lambda = ng / np;
      for (double& v : r.v_star) v *= lambda;
      integrate_backward(model, x, r.v_star, t, ds, traj);
    }
  }
  return check_certificate_at(traj, node, *spec.data, tol);
}

}  // namespace

PointSolution solve_point(const ProblemSpec& spec, ConstSpan x, double t, const SolveConfig& cfg) {
  spec.validate();
  if (!(t > 0.0)) throw ConfigError("solve_point: t must be positive");
  if (x.size() != spec.dimension()) throw ConfigError("solve_point: point has wrong dimension");
  if (!(cfg.ds > 0.0)) throw ConfigError("solve_point: ds must be positive");
  if (!(cfg.cert_tol > 0.0)) throw ConfigError("solve_point: certificate tolerance must be positive");
  const double ds = std::min(cfg.ds, t);
  const auto start = Clock::now();

  PointSolution sol;
  if (spec.mode == SolveMode::LinearDirect) {
    sol = solve_linear_direct(spec, x, t, ds, cfg);
  } else {
    cfg.descent.validate(spec.dimension());
    Objective obj(spec, Vec(x.begin(), x.end()), t, ds, cfg.sigma);
    Trajectory scratch;
    Trajectory cert_traj;
    ForwardDifference fd([&](ConstSpan v) { return obj.value(v, scratch); }, cfg.sigma);
    const MultiStartResult ms = multi_start(
        [&](ConstSpan v) { return fd.value(v); },
        [&](ConstSpan v, std::size_t i) { return fd.partial(v, i); }, spec.dimension(),
        cfg.descent, [&](DescentResult& r) {
          return certify_descent(spec, x, t, ds, cfg.cert_tol, r, cert_traj);
        });
    sol.trials_used = ms.trials_used;
    sol.resamples = ms.total_resamples;
    for (const TrialRecord& rec : ms.trials) sol.iterations += rec.result.iterations;
    if (ms.any_result) {
      const bool negated = spec.mode == SolveMode::Hopf || spec.mode == SolveMode::LaxMax;
      sol.value = negated ? -ms.best.value : ms.best.value;
      sol.v_star = ms.best.v_star;
      sol.converged = ms.best.converged;
      sol.certificate_ok = ms.best.certificate_ok;
    } else {
      sol.value = std::nan("");
    }
  }
  sol.x.assign(x.begin(), x.end());
  sol.t = t;
  sol.mode = spec.mode;
  sol.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return sol;
}

std::uint64_t grid_point_seed(std::uint64_t seed, std::size_t time_index, std::size_t node,
                              std::size_t nodes_per_time) {
  return derive_seed(seed, static_cast<std::uint64_t>(time_index * nodes_per_time + node));
}

std::vector<Grid2DField> solve_grid(const ProblemSpec& spec, const GridAxes& axes,
                                    const std::vector<double>& times, const SolveConfig& cfg,
                                    unsigned workers, const GridProgress& progress) {
  spec.validate();
  axes.validate();
  for (double t : times) {
    if (!(t > 0.0)) throw ConfigError("solve_grid: every time must be positive");
  }
  std::vector<Grid2DField> fields;
  fields.reserve(times.size());
  for (double t : times) fields.emplace_back(axes, t, "char");

  const std::size_t per_time = axes.size();
  const std::size_t total = per_time * times.size();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const std::size_t d = spec.dimension();

  auto work = [&]() {
    Vec x(d, 0.0);
    for (;;) {
      const std::size_t item = next.fetch_add(1);
      if (item >= total) return;
      const std::size_t ti = item / per_time;
      const std::size_t node = item % per_time;
      const std::size_t i = node % axes.n1;
      const std::size_t j = node / axes.n1;
      x[0] = axes.x1(i);
      x[1] = axes.x2(j);
      SolveConfig local = cfg;
      local.descent.rng_seed = grid_point_seed(cfg.descent.rng_seed, ti, node, per_time);
      Grid2DField& field = fields[ti];
      try {
        const PointSolution sol = solve_point(spec, x, times[ti], local);
        field.values[node] = sol.value;
        field.converged[node] = sol.converged ? 1 : 0;
        field.certificate_ok[node] = sol.certificate_ok ? 1 : 0;
        field.trials_used[node] = sol.trials_used;
        field.wall_time[node] = sol.wall_time;
      } catch (const std::exception&) {
        field.values[node] = std::nan("");
        field.converged[node] = 0;
        field.certificate_ok[node] = 0;
        field.trials_used[node] = 0;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(finished, total);
      }
    }
  };

  const unsigned n_workers = std::max(1u, workers);
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return fields;
}

}  // namespace hjchar
