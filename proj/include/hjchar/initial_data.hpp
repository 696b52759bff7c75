#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "hjchar/vec.hpp"

namespace hjchar {

/// Initial data g(x) = phi(x, 0), optionally with its Fenchel-Legendre transform.
class InitialData {
 public:
  InitialData(std::size_t dim, bool convex, std::string name)
      : dim_(dim), convex_(convex), name_(std::move(name)) {}
  virtual ~InitialData() = default;

  virtual double g(ConstSpan x) const = 0;
  virtual void grad_g(ConstSpan x, MutSpan out) const = 0;

  virtual bool has_conjugate() const { return false; }
  /// g*(v) = sup_x { <x, v> - g(x) }. Throws UnsupportedOperationError when absent.
  virtual double g_conj(ConstSpan v) const;
  virtual void grad_g_conj(ConstSpan v, MutSpan out) const;

  std::size_t dimension() const { return dim_; }
  bool convex() const { return convex_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t dim_;
  bool convex_;
  std::string name_;
};

using DataPtr = std::shared_ptr<const InitialData>;

enum class InitialDataKind { EllipseQuadratic, Rosenbrock };

/// EllipseQuadratic: g(x) = (<x, A x> - 1)/2 with A^{-1} = diag(1, 25/4, 1/4, ..., 1/4).
/// Rosenbrock: 4e-4 * (-100 + (1 - x1)^2 + 100 (1 + x2 - x1^2)^2), non-convex, no g*.
DataPtr make_initial_data(InitialDataKind kind, std::size_t dim);

/// Quadratic data with an arbitrary positive diagonal A.
DataPtr make_ellipse_data(Vec a_diag);

/// The default ellipse diagonal for dimension d.
Vec default_ellipse_diag(std::size_t dim);

/// g(x) = c everywhere. Not given a conjugate (g* is +inf off the origin).
DataPtr make_constant_data(std::size_t dim, double c);

}  // namespace hjchar
