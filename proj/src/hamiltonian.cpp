#include "hjchar/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "hjchar/errors.hpp"

namespace hjchar {

double BumpSpeed::value(ConstSpan x) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = mirror * x[i] - (i < 2 ? 1.0 : 0.0);
    r2 += r * r;
  }
  return base * (1.0 + 3.0 * std::exp(-4.0 * r2));
}

double BumpSpeed::value_and_grad(ConstSpan x, MutSpan grad) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = mirror * x[i] - (i < 2 ? 1.0 : 0.0);
    grad[i] = r;
    r2 += r * r;
  }
  const double e = std::exp(-4.0 * r2);
  const double scale = -24.0 * base * e * mirror;
  for (double& g : grad) g *= scale;
  return base * (1.0 + 3.0 * e);
}

void BumpSpeed::hess_times(ConstSpan x, ConstSpan w, MutSpan out) const {
  double r2 = 0.0;
  double rw = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = mirror * x[i] - (i < 2 ? 1.0 : 0.0);
    r2 += r * r;
    rw += r * w[i];
  }
  const double scale = -24.0 * base * std::exp(-4.0 * r2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = mirror * x[i] - (i < 2 ? 1.0 : 0.0);
    out[i] = scale * (w[i] - 8.0 * r * rw);
  }
}

namespace {

[[noreturn]] void throw_singular(const std::string& model) {
  throw SingularPointError(model + ": co-state at the non-differentiable point p = 0");
}

class LinearModel final : public HamiltonianModel {
 public:
  explicit LinearModel(std::size_t d)
      : HamiltonianModel(d, {.convex_in_p = true, .concave_in_p = true, .smooth_at_p0 = true, .linear_in_p = true},
                         {}, "ex1") {}

  double eval(ConstSpan x, ConstSpan p, double) const override {
    Vec gc(x.size());
    const double c = speed_.value_and_grad(x, gc);
    return -0.2 * c - dot(gc, p);
  }
  void grad_p(ConstSpan x, ConstSpan, double, MutSpan out) const override {
    speed_.value_and_grad(x, out);
    for (double& v : out) v = -v;
  }
  void grad_x(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    Vec gc(x.size());
    speed_.value_and_grad(x, gc);
    speed_.hess_times(x, p, out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -0.2 * gc[i] - out[i];
  }
  double eval_with_grads(ConstSpan x, ConstSpan p, double, MutSpan dp, MutSpan dx) const override {
    const double c = speed_.value_and_grad(x, dp);
    const double gp = dot(dp, p);
    speed_.hess_times(x, p, dx);
    for (std::size_t i = 0; i < dp.size(); ++i) {
      dx[i] = -0.2 * dp[i] - dx[i];
      dp[i] = -dp[i];
    }
    return -0.2 * c - gp;
  }

 private:
  BumpSpeed speed_{};
};

class HarmonicModel final : public HamiltonianModel {
 public:
  HarmonicModel(std::size_t d, int sign)
      : HamiltonianModel(d, {.convex_in_p = sign > 0, .concave_in_p = sign < 0, .smooth_at_p0 = true}, {.sign = sign},
                         sign > 0 ? "ex2+" : "ex2-"),
        s_(sign > 0 ? 1.0 : -1.0) {}

  double eval(ConstSpan x, ConstSpan p, double) const override {
    return s_ * 0.5 * (dot(p, p) + dot(x, x));
  }
  void grad_p(ConstSpan, ConstSpan p, double, MutSpan out) const override {
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = s_ * p[i];
  }
  void grad_x(ConstSpan x, ConstSpan, double, MutSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s_ * x[i];
  }

 private:
  double s_;
};

class EikonalModel final : public HamiltonianModel {
 public:
  EikonalModel(std::size_t d, int sign)
      : HamiltonianModel(d,
                         {.convex_in_p = sign > 0, .concave_in_p = sign < 0, .smooth_at_p0 = false,
                          .homogeneous_degree1 = true},
                         {.sign = sign}, sign > 0 ? "ex3+" : "ex3-"),
        s_(sign > 0 ? 1.0 : -1.0) {}

  double eval(ConstSpan x, ConstSpan p, double) const override {
    return s_ * speed_.value(x) * norm2(p);
  }
  void grad_p(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    const double np = norm2(p);
    if (np <= kSingularNorm) throw_singular(name());
    const double k = s_ * speed_.value(x) / np;
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = k * p[i];
  }
  void grad_x(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    speed_.value_and_grad(x, out);
    const double k = s_ * norm2(p);
    for (double& v : out) v *= k;
  }
  double eval_with_grads(ConstSpan x, ConstSpan p, double, MutSpan dp, MutSpan dx) const override {
    const double np = norm2(p);
    if (np <= kSingularNorm) throw_singular(name());
    const double c = speed_.value_and_grad(x, dx);
    const double k = s_ * c / np;
    for (std::size_t i = 0; i < p.size(); ++i) {
      dp[i] = k * p[i];
      dx[i] *= s_ * np;
    }
    return s_ * c * np;
  }

 private:
  double s_;
  BumpSpeed speed_{};
};

class EvansModel final : public HamiltonianModel {
 public:
  explicit EvansModel(std::size_t d)
      : HamiltonianModel(d, {.convex_in_p = false, .smooth_at_p0 = false}, {}, "ex4") {}

  double eval(ConstSpan x, ConstSpan p, double) const override {
    return -speed_.value(x) * p[0] + 2.0 * std::fabs(p[1]) - norm2(p) - 1.0;
  }
  void grad_p(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    fill_grad_p(speed_.value(x), p, out);
  }
  void grad_x(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    speed_.value_and_grad(x, out);
    for (double& v : out) v *= -p[0];
  }
  double eval_with_grads(ConstSpan x, ConstSpan p, double, MutSpan dp, MutSpan dx) const override {
    const double c = speed_.value_and_grad(x, dx);
    for (double& v : dx) v *= -p[0];
    const double np = fill_grad_p(c, p, dp);
    return -c * p[0] + 2.0 * std::fabs(p[1]) - np - 1.0;
  }

 private:
  double fill_grad_p(double c, ConstSpan p, MutSpan out) const {
    const double np = norm2(p);
    if (np <= kSingularNorm) throw_singular(name());
    // sign(0) = 0 for the |p_2| term
    const double sgn = p[1] > 0.0 ? 1.0 : (p[1] < 0.0 ? -1.0 : 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = -p[i] / np;
    out[0] += -c;
    out[1] += 2.0 * sgn;
    return np;
  }

  BumpSpeed speed_{.base = 2.0};
};

class SplitModel final : public HamiltonianModel {
 public:
  SplitModel(std::size_t d, std::size_t k)
      : HamiltonianModel(d,
                         {.convex_in_p = false, .smooth_at_p0 = false,
                          .homogeneous_degree1 = true},
                         {.split_k = k}, "ex5"),
        k_(k) {}

  double eval(ConstSpan x, ConstSpan p, double) const override {
    const auto [na, nb] = block_norms(p);
    return c1_.value(x) * na - c2_.value(x) * nb;
  }
  void grad_p(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    fill_grad_p(c1_.value(x), c2_.value(x), p, out);
  }
  void grad_x(ConstSpan x, ConstSpan p, double, MutSpan out) const override {
    Vec g2(x.size());
    c1_.value_and_grad(x, out);
    c2_.value_and_grad(x, g2);
    const auto [na, nb] = block_norms(p);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] * na - g2[i] * nb;
  }
  double eval_with_grads(ConstSpan x, ConstSpan p, double, MutSpan dp, MutSpan dx) const override {
    // dp doubles as scratch for grad c2 before it is overwritten
    const double c1 = c1_.value_and_grad(x, dx);
    const double c2 = c2_.value_and_grad(x, dp);
    const auto [na, nb] = block_norms(p);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = dx[i] * na - dp[i] * nb;
    fill_grad_p(c1, c2, p, dp);
    return c1 * na - c2 * nb;
  }

 private:
  std::pair<double, double> block_norms(ConstSpan p) const {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) (i < k_ ? a : b) += p[i] * p[i];
    return {std::sqrt(a), std::sqrt(b)};
  }
  void fill_grad_p(double c1, double c2, ConstSpan p, MutSpan out) const {
    const auto [na, nb] = block_norms(p);
    if (na <= kSingularNorm || nb <= kSingularNorm) throw_singular(name());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = i < k_ ? c1 * p[i] / na : -c2 * p[i] / nb;
  }

  std::size_t k_;
  BumpSpeed c1_{.base = 2.0};
  BumpSpeed c2_{.base = 2.0, .mirror = -1.0};
};

class CustomModel final : public HamiltonianModel {
 public:
  CustomModel(std::size_t d, ModelTraits traits, ScalarFn eval, GradientFn gp, GradientFn gx,
              std::string name)
      : HamiltonianModel(d, traits, {}, std::move(name)),
        eval_(std::move(eval)),
        grad_p_(std::move(gp)),
        grad_x_(std::move(gx)) {}

  double eval(ConstSpan x, ConstSpan p, double t) const override { return eval_(x, p, t); }
  void grad_p(ConstSpan x, ConstSpan p, double t, MutSpan out) const override {
    grad_p_(x, p, t, out);
  }
  void grad_x(ConstSpan x, ConstSpan p, double t, MutSpan out) const override {
    grad_x_(x, p, t, out);
  }

 private:
  ScalarFn eval_;
  GradientFn grad_p_;
  GradientFn grad_x_;
};

}  // namespace

ModelPtr make_example(ExampleId id, std::size_t dim, ExampleOptions opts) {
  if (dim < 2) throw ConfigError("built-in Hamiltonians need dimension >= 2");
  if ((id == ExampleId::Ex2Harmonic || id == ExampleId::Ex3Eikonal) && opts.sign != 1 &&
      opts.sign != -1) {
    throw ConfigError("sign must be +1 or -1");
  }
  switch (id) {
    case ExampleId::Ex1Linear:
      return std::make_shared<LinearModel>(dim);
    case ExampleId::Ex2Harmonic:
      return std::make_shared<HarmonicModel>(dim, opts.sign);
    case ExampleId::Ex3Eikonal:
      return std::make_shared<EikonalModel>(dim, opts.sign);
    case ExampleId::Ex4Evans:
      return std::make_shared<EvansModel>(dim);
    case ExampleId::Ex5Split:
      if (opts.split_k < 1 || opts.split_k >= dim) {
        throw ConfigError("ex5 split index k must satisfy 1 <= k < d, got k=" +
                          std::to_string(opts.split_k) + ", d=" + std::to_string(dim));
      }
      return std::make_shared<SplitModel>(dim, opts.split_k);
  }
  throw ConfigError("unknown example id");
}

ModelPtr make_custom_model(std::size_t dim, ModelTraits traits, ScalarFn eval, GradientFn grad_p,
                           GradientFn grad_x, std::string name) {
  if (!eval || !grad_p || !grad_x) throw ConfigError("custom model needs eval, grad_p and grad_x");
  return std::make_shared<CustomModel>(dim, traits, std::move(eval), std::move(grad_p),
                                       std::move(grad_x), std::move(name));
}

}  // namespace hjchar
