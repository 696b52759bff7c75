#include "hjchar/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "hjchar/errors.hpp"

namespace hjchar {

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::Lax:
      return "lax";
    case SolveMode::LaxMax:
      return "lax-max";
    case SolveMode::MinOverTime:
      return "min-over-time";
    case SolveMode::Hopf:
      return "hopf";
    case SolveMode::LinearDirect:
      return "linear-direct";
  }
  return "?";
}

SolveMode solve_mode_from_string(const std::string& s) {
  if (s == "lax") return SolveMode::Lax;
  if (s == "lax-max") return SolveMode::LaxMax;
  if (s == "min-over-time" || s == "huygens") return SolveMode::MinOverTime;
  if (s == "hopf") return SolveMode::Hopf;
  if (s == "linear-direct" || s == "linear") return SolveMode::LinearDirect;
  throw ConfigError("unknown solve mode '" + s + "'");
}

void ProblemSpec::validate() const {
  if (!model || !data) throw ConfigError("problem needs both a Hamiltonian and initial data");
  if (model->dimension() != data->dimension()) {
    throw ConfigError("Hamiltonian and initial data dimensions differ");
  }
  switch (mode) {
    case SolveMode::Hopf:
      if (!data->convex() || !data->has_conjugate()) {
        throw ConfigError("hopf mode needs convex initial data with a conjugate g*");
      }
      break;
    case SolveMode::MinOverTime:
      if (!model->traits().time_independent) {
        throw ConfigError("min-over-time mode needs a time-independent Hamiltonian");
      }
      break;
    case SolveMode::LinearDirect:
      if (!model->traits().linear_in_p) {
        throw ConfigError("linear-direct mode needs a Hamiltonian linear in p");
      }
      break;
    case SolveMode::LaxMax:
      if (!model->traits().concave_in_p) {
        throw ConfigError("lax-max mode needs a Hamiltonian concave in p");
      }
      break;
    case SolveMode::Lax:
      break;
  }
}

SolveMode auto_mode(const HamiltonianModel& model, const InitialData& data) {
  if (model.traits().linear_in_p) return SolveMode::LinearDirect;
  if (model.traits().convex_in_p) return SolveMode::Lax;
  if (data.convex() && data.has_conjugate()) return SolveMode::Hopf;
  throw ConfigError("non-convex Hamiltonian with non-convex initial data: no applicable mode");
}

Objective::Objective(ProblemSpec problem, Vec x, double t, double ds, double sigma)
    : problem_(std::move(problem)), x_(std::move(x)), t_(t), ds_(ds), sigma_(sigma) {
  problem_.validate();
  if (x_.size() != problem_.dimension()) throw ConfigError("query point has wrong dimension");
  if (!(t_ > 0.0)) throw ConfigError("query time must be positive");
  if (!(ds_ > 0.0)) throw ConfigError("quadrature step must be positive");
  if (!(sigma_ > 0.0)) throw ConfigError("finite-difference step must be positive");
}

double Objective::value(ConstSpan v, Trajectory& scratch) const {
  switch (problem_.mode) {
    case SolveMode::Lax:
    case SolveMode::LinearDirect:
      return lax_value(*this, v, scratch);
    case SolveMode::LaxMax:
      return -lax_value(*this, v, scratch);
    case SolveMode::Hopf:
      return hopf_value(*this, v, scratch);
    case SolveMode::MinOverTime:
      return min_over_time_value(*this, v, scratch).value;
  }
  return 0.0;
}

double Objective::value(ConstSpan v) const {
  Trajectory scratch;
  return value(v, scratch);
}

namespace {

void sweep(const Objective& obj, ConstSpan v, Trajectory& traj) {
  integrate_backward(*obj.problem().model, obj.query_x(), v, obj.query_t(),
                     std::min(obj.ds(), obj.query_t()), traj);
}

double checked(double value, const char* what) {
  if (!std::isfinite(value)) throw NonFiniteStateError(std::string(what) + " is not finite");
  return value;
}

}  // namespace

double lax_value(const Objective& obj, ConstSpan v, Trajectory& traj) {
  if (obj.mode() != SolveMode::Lax && obj.mode() != SolveMode::LaxMax &&
      obj.mode() != SolveMode::LinearDirect) {
    throw ConfigError("lax_value on a non-Lax objective");
  }
  sweep(obj, v, traj);
  double integral = 0.0;
  for (std::size_t n = 0; n < traj.steps; ++n) {
    integral += traj.interval(n + 1) * (traj.p_dot_dph[n] - traj.hamiltonian[n]);
  }
  return checked(obj.problem().data->g(traj.state(0)) + integral, "Lax functional");
}

double lax_value(const Objective& obj, ConstSpan v) {
  Trajectory traj;
  return lax_value(obj, v, traj);
}

double hopf_value(const Objective& obj, ConstSpan v, Trajectory& traj) {
  if (obj.mode() != SolveMode::Hopf) throw ConfigError("hopf_value on a non-Hopf objective");
  const InitialData& data = *obj.problem().data;
  if (!data.has_conjugate()) {
    throw UnsupportedOperationError("hopf_value: initial data has no conjugate");
  }
  sweep(obj, v, traj);
  double integral = 0.0;
  for (std::size_t n = 1; n <= traj.steps; ++n) {
    integral += traj.interval(n) * (traj.hamiltonian[n] - traj.x_dot_dxh[n]);
  }
  return checked(data.g_conj(traj.costate(0)) + integral - dot(obj.query_x(), v),
                 "Hopf functional");
}

double hopf_value(const Objective& obj, ConstSpan v) {
  Trajectory traj;
  return hopf_value(obj, v, traj);
}

MinOverTimeValue min_over_time_value(const Objective& obj, ConstSpan v, Trajectory& traj) {
  if (obj.mode() != SolveMode::MinOverTime) {
    throw ConfigError("min_over_time_value on a different objective mode");
  }
  sweep(obj, v, traj);
  const InitialData& data = *obj.problem().data;
  MinOverTimeValue best{data.g(traj.state(traj.steps)), traj.steps};
  for (std::size_t n = traj.steps; n-- > 0;) {
    const double g = data.g(traj.state(n));
    if (g < best.value) best = {g, n};
  }
  checked(best.value, "min-over-time functional");
  return best;
}

MinOverTimeValue min_over_time_value(const Objective& obj, ConstSpan v) {
  Trajectory traj;
  return min_over_time_value(obj, v, traj);
}

double partial_derivative(const ObjectiveFn& f, ConstSpan v, std::size_t i, double sigma,
                          std::optional<double> base) {
  if (!(sigma > 0.0)) throw ConfigError("finite-difference step must be positive");
  Vec probe(v.begin(), v.end());
  probe[i] += sigma;
  const double fv = base ? *base : f(v);
  return (f(probe) - fv) / sigma;
}

ForwardDifference::ForwardDifference(ObjectiveFn f, double sigma)
    : f_(std::move(f)), sigma_(sigma) {
  if (!(sigma_ > 0.0)) throw ConfigError("finite-difference step must be positive");
}

double ForwardDifference::value(ConstSpan v) {
  const bool hit = has_cache_ && cached_v_.size() == v.size() &&
                   std::memcmp(cached_v_.data(), v.data(), v.size() * sizeof(double)) == 0;
  if (!hit) {
    cached_value_ = f_(v);
    ++evaluations_;
    cached_v_.assign(v.begin(), v.end());
    has_cache_ = true;
  }
  return cached_value_;
}

double ForwardDifference::partial(ConstSpan v, std::size_t i) {
  const double base = value(v);
  probe_.assign(v.begin(), v.end());
  probe_[i] += sigma_;
  ++evaluations_;
  return (f_(probe_) - base) / sigma_;
}

}  // namespace hjchar
