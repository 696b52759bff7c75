#include "hjchar/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "hjchar/errors.hpp"

namespace hjchar {

void DescentConfig::validate(std::size_t dim) const {
  if (!(lipschitz > 0.0)) throw ConfigError("Lipschitz guess L must be positive");
  if (!(eps > 0.0)) throw ConfigError("stopping tolerance eps must be positive");
  if (max_iterations < static_cast<long>(dim)) {
    throw ConfigError("iteration budget M must be at least the dimension d");
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (max_backoffs < 0) throw ConfigError("max_backoffs must be >= 0");
  if (max_resamples < 0) throw ConfigError("max_resamples must be >= 0");
  if (!(init_high > init_low)) throw ConfigError("initial sampling box is empty");
}

DescentResult coordinate_descent(const ObjectiveFn& objective, const PartialFn& partial, Vec v,
                                 const DescentConfig& cfg, const StepObserver& observer) {
  const std::size_t d = v.size();
  cfg.validate(d);

  double alpha = 1.0 / cfg.lipschitz;
  long count = 0;
  long k = 0;
  std::size_t j = 0;
  DescentResult result;

  for (;;) {
    ++k;
    ++result.iterations;
    const double g = partial(v, j);
    if (!std::isfinite(g)) {
      throw NonFiniteStateError("coordinate descent: non-finite partial derivative");
    }
    const double before = v[j];
    v[j] = before - alpha * g;
    const double moved = std::fabs(v[j] - before);
    if (!std::isfinite(v[j])) throw NonFiniteStateError("coordinate descent: iterate overflow");
    j = (j + 1 == d) ? 0 : j + 1;
    if (observer) observer(result.iterations, v, alpha);

    if (moved > cfg.eps) count = 0;
    if (moved < cfg.eps) ++count;
    if (count == static_cast<long>(d)) {
      result.converged = true;
      break;
    }
    if (k == cfg.max_iterations) {
      k = 0;
      if (result.backoffs == cfg.max_backoffs) break;
      alpha /= 2.0;
      ++result.backoffs;
    }
  }

  result.value = objective(v);
  if (!std::isfinite(result.value)) {
    throw NonFiniteStateError("coordinate descent: non-finite final value");
  }
  result.v_star = std::move(v);
  return result;
}

bool check_certificate_at(const Trajectory& traj, std::size_t node, const InitialData& data,
                          double tol) {
  Vec grad(traj.dim);
  data.grad_g(traj.state(node), grad);
  const ConstSpan p = traj.costate(node);
  double diff = 0.0;
  for (std::size_t i = 0; i < traj.dim; ++i) diff = std::fmax(diff, std::fabs(p[i] - grad[i]));
  return diff <= tol * (1.0 + norm_inf(grad));
}

bool check_certificate(const Trajectory& traj, const InitialData& data, double tol) {
  return check_certificate_at(traj, 0, data, tol);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrialSampler::TrialSampler(std::uint64_t seed, int trial_index)
    : engine_(derive_seed(seed, static_cast<std::uint64_t>(trial_index))) {}

Vec TrialSampler::sample(std::size_t dim, double lo, double hi) {
  Vec v(dim);
  for (double& x : v) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    x = lo + (hi - lo) * u;
  }
  return v;
}

MultiStartResult multi_start(const ObjectiveFn& objective, const PartialFn& partial,
                             std::size_t dim, const DescentConfig& cfg, const Certifier& certify) {
  cfg.validate(dim);
  MultiStartResult out;
  const DescentResult* best_ok = nullptr;
  const DescentResult* best_any = nullptr;
  out.trials.reserve(static_cast<std::size_t>(cfg.trials));

  for (int trial = 0; trial < cfg.trials; ++trial) {
    TrialSampler sampler(cfg.rng_seed, trial);
    TrialRecord record;
    const auto start = std::chrono::steady_clock::now();
    bool done = false;
    for (int attempt = 0; attempt <= cfg.max_resamples && !done; ++attempt) {
      Vec v0 = sampler.sample(dim, cfg.init_low, cfg.init_high);
      try {
        record.result = coordinate_descent(objective, partial, std::move(v0), cfg);
        record.result.trial_index = trial;
        record.result.certificate_ok = certify ? certify(record.result) : true;
        done = true;
      } catch (const EvaluationError&) {
        if (attempt < cfg.max_resamples) ++record.resamples;
      }
    }
    record.aborted = !done;
    record.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.total_resamples += record.resamples;
    out.trials.push_back(std::move(record));
  }

  for (const TrialRecord& rec : out.trials) {
    if (rec.aborted) continue;
    ++out.trials_used;
    const DescentResult& r = rec.result;
    if (r.certificate_ok && (!best_ok || r.value < best_ok->value)) best_ok = &r;
    if (!best_any || r.value < best_any->value) best_any = &r;
  }
  if (best_ok) {
    out.best = *best_ok;
    out.any_result = true;
  } else if (best_any) {
    out.best = *best_any;
    out.best.certificate_ok = false;
    out.any_result = true;
  } else {
    out.best.value = std::nan("");
  }
  return out;
}

}  // namespace hjchar
