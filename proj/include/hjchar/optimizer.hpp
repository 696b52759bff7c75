#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hjchar/characteristics.hpp"
#include "hjchar/functionals.hpp"
#include "hjchar/initial_data.hpp"
#include "hjchar/vec.hpp"

namespace hjchar {

struct DescentConfig {
  double lipschitz = 1.0;       // initial L; step alpha = 1/L
  long max_iterations = 500;    // M: steps per step-size level
  double eps = 0.5e-7;          // per-coordinate stopping tolerance
  int max_backoffs = 12;        // halvings of alpha before giving up
  std::uint64_t rng_seed = 42;
  int trials = 1;
  double init_low = -2.0;       // initial guesses ~ U[init_low, init_high]^d
  double init_high = 2.0;
  int max_resamples = 10;       // per trial, after evaluation failures

  /// Throws ConfigError unless L > 0, eps > 0, M >= d, trials >= 1.
  void validate(std::size_t dim) const;
};

struct DescentResult {
  Vec v_star;
  double value = 0.0;
  long iterations = 0;
  int backoffs = 0;
  bool converged = false;
  bool certificate_ok = false;
  int trial_index = 0;
};

using PartialFn = std::function<double(ConstSpan v, std::size_t i)>;
using StepObserver = std::function<void(long k, ConstSpan v, double alpha)>;

/// Cyclic coordinate descent with step-size backoff.
///
/// Each step moves only coordinate j by -alpha * partial_j, with j cycling 0..d-1.
/// A move larger than eps resets the stall counter; a move below eps increments it,
/// and the run stops once d consecutive moves were below eps. After every M steps
/// alpha is halved; after max_backoffs halvings the next exhaustion returns with
/// converged = false. Evaluation failures propagate as EvaluationError.
DescentResult coordinate_descent(const ObjectiveFn& objective, const PartialFn& partial, Vec v0,
                                 const DescentConfig& cfg, const StepObserver& observer = {});

/// p_0 in dg(x_0): |p_0 - grad g(x_0)|_inf <= tol * (1 + |grad g(x_0)|_inf).
bool check_certificate(const Trajectory& traj, const InitialData& data, double tol);

/// Same test at an arbitrary node n of the path, for functionals whose optimum
/// is read off an interior node.
bool check_certificate_at(const Trajectory& traj, std::size_t node, const InitialData& data,
                          double tol);

/// Per-trial uniform sampler. Trial i draws from its own stream seeded from
/// (rng_seed, i), so results do not depend on the order trials run in.
class TrialSampler {
 public:
  TrialSampler(std::uint64_t seed, int trial_index);
  Vec sample(std::size_t dim, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// Mixes a seed with an index; used to derive per-trial and per-point seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Decides whether a finished descent is acceptable. May adjust the result (for
/// example rescale v_star of a scale-invariant functional) before deciding.
using Certifier = std::function<bool(DescentResult&)>;

struct TrialRecord {
  DescentResult result;
  int resamples = 0;
  bool aborted = false;  // every start of this trial failed to evaluate
  double wall_time = 0.0;
};

struct MultiStartResult {
  DescentResult best;
  std::vector<TrialRecord> trials;
  int trials_used = 0;   // trials that produced a finished descent
  int total_resamples = 0;
  bool any_result = false;
};

/// Runs cfg.trials independent descents from uniform random starts and returns the
/// lowest value among trials whose certificate passed (lowest trial index on ties).
/// When no trial passes, returns the lowest value overall with certificate_ok = false.
MultiStartResult multi_start(const ObjectiveFn& objective, const PartialFn& partial,
                             std::size_t dim, const DescentConfig& cfg,
                             const Certifier& certify = {});

}  // namespace hjchar
