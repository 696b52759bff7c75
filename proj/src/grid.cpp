#include "hjchar/grid.hpp"

#include <algorithm>
#include <cmath>

#include "hjchar/errors.hpp"

namespace hjchar {

void GridAxes::validate() const {
  if (n1 < 2 || n2 < 2) throw ConfigError("grid resolution must be >= 2 per axis");
  if (!(x1_max > x1_min) || !(x2_max > x2_min)) throw ConfigError("grid range is empty");
}

GridAxes GridAxes::square(double half, std::size_t n) {
  return GridAxes{-half, half, n, -half, half, n};
}

Grid2DField::Grid2DField(GridAxes a, double time, std::string src)
    : axes(a),
      t(time),
      source(std::move(src)),
      values(a.size(), 0.0),
      converged(a.size(), 1),
      certificate_ok(a.size(), 1),
      trials_used(a.size(), 0),
      wall_time(a.size(), 0.0) {}

double Grid2DField::sample(double x1, double x2) const {
  const double u = std::clamp((x1 - axes.x1_min) / axes.h1(), 0.0, static_cast<double>(axes.n1 - 1));
  const double w = std::clamp((x2 - axes.x2_min) / axes.h2(), 0.0, static_cast<double>(axes.n2 - 1));
  const std::size_t i = std::min(static_cast<std::size_t>(u), axes.n1 - 2);
  const std::size_t j = std::min(static_cast<std::size_t>(w), axes.n2 - 2);
  const double fu = u - static_cast<double>(i);
  const double fw = w - static_cast<double>(j);
  const double a = at(i, j) * (1.0 - fu) + at(i + 1, j) * fu;
  const double b = at(i, j + 1) * (1.0 - fu) + at(i + 1, j + 1) * fu;
  return a * (1.0 - fw) + b * fw;
}

}  // namespace hjchar
