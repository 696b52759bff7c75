#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "hjchar/characteristics.hpp"
#include "hjchar/hamiltonian.hpp"
#include "hjchar/initial_data.hpp"
#include "hjchar/vec.hpp"

namespace hjchar {

enum class SolveMode { Lax, LaxMax, MinOverTime, Hopf, LinearDirect };

const char* to_string(SolveMode mode);
SolveMode solve_mode_from_string(const std::string& s);

/// A Hamilton-Jacobi initial value problem plus the representation used to solve it.
struct ProblemSpec {
  ModelPtr model;
  DataPtr data;
  SolveMode mode = SolveMode::Lax;

  std::size_t dimension() const { return model ? model->dimension() : 0; }
  /// Throws ConfigError when the mode is not applicable to (model, data).
  void validate() const;
};

/// Lax if H is convex in p, Hopf otherwise; LinearDirect for Hamiltonians linear in p.
SolveMode auto_mode(const HamiltonianModel& model, const InitialData& data);

/// The functional minimized over terminal co-states v for one query point (x, t).
class Objective {
 public:
  Objective(ProblemSpec problem, Vec x, double t, double ds, double sigma);

  const ProblemSpec& problem() const { return problem_; }
  SolveMode mode() const { return problem_.mode; }
  ConstSpan query_x() const { return x_; }
  double query_t() const { return t_; }
  double ds() const { return ds_; }
  double sigma() const { return sigma_; }

  /// Functional value for the objective's mode, reusing `scratch` for the path.
  double value(ConstSpan v, Trajectory& scratch) const;
  double value(ConstSpan v) const;

 private:
  ProblemSpec problem_;
  Vec x_;
  double t_;
  double ds_;
  double sigma_;
};

/// F1(v) = g(x_0) + sum_{n=0}^{N-1} h_{n+1} [<p_n, dH/dp> - H](x_n, p_n, s_n).
/// Lax mode minimizes F1. LaxMax, for H concave in p, maximizes it: -phi solves the
/// problem with convex H~(x, q) = -H(x, -q) and data -g, whose Lax functional at
/// q = -v is -F1(v). Objective::value returns -F1 in that mode.
double lax_value(const Objective& obj, ConstSpan v, Trajectory& scratch);
double lax_value(const Objective& obj, ConstSpan v);

/// G(v) = g*(p_0) + sum_{n=1}^{N} h_n [H - <dH/dx, x>](x_n, p_n, s_n) - <x, v>.
/// The solution is phi = -min_v G.
double hopf_value(const Objective& obj, ConstSpan v, Trajectory& scratch);
double hopf_value(const Objective& obj, ConstSpan v);

struct MinOverTimeValue {
  double value;
  std::size_t node;  // trajectory node attaining the minimum of g
};

/// F2(v) = min over the stored nodes of g(x_n). For a time-independent H the node
/// at backward elapsed time r_i = t - s_n is gamma(x, v, r_i, 0).
MinOverTimeValue min_over_time_value(const Objective& obj, ConstSpan v, Trajectory& scratch);
MinOverTimeValue min_over_time_value(const Objective& obj, ConstSpan v);

using ObjectiveFn = std::function<double(ConstSpan)>;

/// (f(v + sigma e_i) - f(v)) / sigma. When `base` holds f(v) only one evaluation is made.
double partial_derivative(const ObjectiveFn& f, ConstSpan v, std::size_t i, double sigma,
                          std::optional<double> base = std::nullopt);

/// Forward differences with a one-entry cache of the base value f(v), keyed on the
/// exact bits of v. Owned by a single optimizer run.
class ForwardDifference {
 public:
  ForwardDifference(ObjectiveFn f, double sigma);

  double value(ConstSpan v);
  double partial(ConstSpan v, std::size_t i);
  std::size_t evaluations() const { return evaluations_; }

 private:
  ObjectiveFn f_;
  double sigma_;
  Vec cached_v_;
  double cached_value_ = 0.0;
  bool has_cache_ = false;
  std::size_t evaluations_ = 0;
  Vec probe_;
};

}  // namespace hjchar
