#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "hjchar/vec.hpp"

namespace hjchar {

/// |p|_2 at or below this is treated as the non-differentiable point of a
/// degree-1 homogeneous Hamiltonian.
inline constexpr double kSingularNorm = 1e-12;

/// Structural facts about a Hamiltonian that decide which solve modes apply.
struct ModelTraits {
  bool convex_in_p = false;
  bool concave_in_p = false;
  bool smooth_at_p0 = true;
  bool linear_in_p = false;
  bool homogeneous_degree1 = false;
  bool time_independent = true;
};

/// Model-specific parameters of the built-in families.
struct ModelParams {
  int sign = 1;
  std::size_t split_k = 0;
};

/// H(x, p, t) together with its partial gradients in p and x.
///
/// Implementations are immutable once constructed, so one instance may be shared
/// read-only by any number of concurrent point solves.
class HamiltonianModel {
 public:
  HamiltonianModel(std::size_t dim, ModelTraits traits, ModelParams params, std::string name)
      : dim_(dim), traits_(traits), params_(params), name_(std::move(name)) {}
  virtual ~HamiltonianModel() = default;

  virtual double eval(ConstSpan x, ConstSpan p, double t) const = 0;
  virtual void grad_p(ConstSpan x, ConstSpan p, double t, MutSpan out) const = 0;
  virtual void grad_x(ConstSpan x, ConstSpan p, double t, MutSpan out) const = 0;

  /// H together with both gradients. Built-in models override this to share the
  /// speed-function evaluation between the three outputs.
  virtual double eval_with_grads(ConstSpan x, ConstSpan p, double t, MutSpan dp, MutSpan dx) const {
    grad_p(x, p, t, dp);
    grad_x(x, p, t, dx);
    return eval(x, p, t);
  }

  std::size_t dimension() const { return dim_; }
  const ModelTraits& traits() const { return traits_; }
  const ModelParams& params() const { return params_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t dim_;
  ModelTraits traits_;
  ModelParams params_;
  std::string name_;
};

using ModelPtr = std::shared_ptr<const HamiltonianModel>;

enum class ExampleId { Ex1Linear, Ex2Harmonic, Ex3Eikonal, Ex4Evans, Ex5Split };

struct ExampleOptions {
  int sign = 1;            // Ex2, Ex3: selects H+ or H-
  std::size_t split_k = 1; // Ex5: |p_{1..k}| block size
};

/// Built-in Hamiltonians:
///   Ex1  -0.2 c(x) - <grad c(x), p>
///   Ex2  ±(|p|^2 + |x|^2) / 2
///   Ex3  ±c(x) |p|
///   Ex4  -c4(x) p_1 + 2|p_2| - |p| - 1
///   Ex5  c4(x) |p_{1..k}| - c4(-x) |p_{k+1..d}|
/// with c(x) = 1 + 3 exp(-4|x - (1,1,0,...)|^2) and c4 = 2c.
ModelPtr make_example(ExampleId id, std::size_t dim, ExampleOptions opts = {});

using ScalarFn = std::function<double(ConstSpan x, ConstSpan p, double t)>;
using GradientFn = std::function<void(ConstSpan x, ConstSpan p, double t, MutSpan out)>;

/// Wraps caller-supplied callables; used for test problems and state-independent
/// reference Hamiltonians.
ModelPtr make_custom_model(std::size_t dim, ModelTraits traits, ScalarFn eval, GradientFn grad_p,
                           GradientFn grad_x, std::string name = "custom");

/// Speed function c(x) = base * (1 + 3 exp(-4 |x - center|^2)), center = (1,1,0,...).
struct BumpSpeed {
  double base = 1.0;
  double mirror = 1.0;  // -1 evaluates c(-x)

  double value(ConstSpan x) const;
  /// c(x) and its gradient in one pass.
  double value_and_grad(ConstSpan x, MutSpan grad) const;
  /// Hessian-vector product H_c(x) * w.
  void hess_times(ConstSpan x, ConstSpan w, MutSpan out) const;
};

}  // namespace hjchar
