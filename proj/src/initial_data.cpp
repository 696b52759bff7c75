#include "hjchar/initial_data.hpp"

#include <algorithm>
#include <string>

#include "hjchar/errors.hpp"

namespace hjchar {

double InitialData::g_conj(ConstSpan) const {
  throw UnsupportedOperationError(name() + ": convex conjugate not available");
}

void InitialData::grad_g_conj(ConstSpan, MutSpan) const {
  throw UnsupportedOperationError(name() + ": convex conjugate not available");
}

namespace {

class EllipseData final : public InitialData {
 public:
  explicit EllipseData(Vec a) : InitialData(a.size(), true, "ellipse"), a_(std::move(a)) {}

  double g(ConstSpan x) const override {
    double q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) q += a_[i] * x[i] * x[i];
    return 0.5 * (q - 1.0);
  }
  void grad_g(ConstSpan x, MutSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a_[i] * x[i];
  }
  bool has_conjugate() const override { return true; }
  double g_conj(ConstSpan v) const override {
    double q = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) q += v[i] * v[i] / a_[i];
    return 0.5 * q + 0.5;
  }
  void grad_g_conj(ConstSpan v, MutSpan out) const override {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / a_[i];
  }

 private:
  Vec a_;
};

class RosenbrockData final : public InitialData {
 public:
  explicit RosenbrockData(std::size_t d) : InitialData(d, false, "rosenbrock") {}

  double g(ConstSpan x) const override {
    const double a = 1.0 - x[0];
    const double b = 1.0 + x[1] - x[0] * x[0];
    return 0.4e-3 * (-100.0 + a * a + 100.0 * b * b);
  }
  void grad_g(ConstSpan x, MutSpan out) const override {
    const double b = 1.0 + x[1] - x[0] * x[0];
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 0.4e-3 * (-2.0 * (1.0 - x[0]) - 400.0 * b * x[0]);
    out[1] = 0.4e-3 * 200.0 * b;
  }
};

class ConstantData final : public InitialData {
 public:
  ConstantData(std::size_t d, double c) : InitialData(d, true, "constant"), c_(c) {}
  double g(ConstSpan) const override { return c_; }
  void grad_g(ConstSpan, MutSpan out) const override { std::fill(out.begin(), out.end(), 0.0); }

 private:
  double c_;
};

}  // namespace

Vec default_ellipse_diag(std::size_t dim) {
  // A^{-1} = diag(1, 25/4, 1/4, ..., 1/4)
  Vec a(dim, 4.0);
  if (dim > 0) a[0] = 1.0;
  if (dim > 1) a[1] = 4.0 / 25.0;
  return a;
}

DataPtr make_ellipse_data(Vec a_diag) {
  if (a_diag.empty()) throw ConfigError("ellipse data needs dimension >= 1");
  for (double a : a_diag) {
    if (!(a > 0.0)) throw ConfigError("ellipse matrix must be positive definite");
  }
  return std::make_shared<EllipseData>(std::move(a_diag));
}

DataPtr make_initial_data(InitialDataKind kind, std::size_t dim) {
  if (dim < 2) throw ConfigError("initial data needs dimension >= 2");
  switch (kind) {
    case InitialDataKind::EllipseQuadratic:
      return make_ellipse_data(default_ellipse_diag(dim));
    case InitialDataKind::Rosenbrock:
      return std::make_shared<RosenbrockData>(dim);
  }
  throw ConfigError("unknown initial data kind");
}

DataPtr make_constant_data(std::size_t dim, double c) {
  return std::make_shared<ConstantData>(dim, c);
}

}  // namespace hjchar
