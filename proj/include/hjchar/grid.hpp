#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hjchar/vec.hpp"

namespace hjchar {

/// Uniform tensor grid over [x1_min, x1_max] x [x2_min, x2_max].
struct GridAxes {
  double x1_min = -3.0;
  double x1_max = 3.0;
  std::size_t n1 = 121;
  double x2_min = -3.0;
  double x2_max = 3.0;
  std::size_t n2 = 121;

  double h1() const { return (x1_max - x1_min) / static_cast<double>(n1 - 1); }
  double h2() const { return (x2_max - x2_min) / static_cast<double>(n2 - 1); }
  double x1(std::size_t i) const { return x1_min + static_cast<double>(i) * h1(); }
  double x2(std::size_t j) const { return x2_min + static_cast<double>(j) * h2(); }
  std::size_t size() const { return n1 * n2; }
  /// Throws ConfigError unless both resolutions are >= 2 and both ranges non-empty.
  void validate() const;

  /// The square [-half, half]^2 with n points per axis.
  static GridAxes square(double half, std::size_t n);
};

/// Values of phi(., t) on a 2-D cross-section with per-node solve diagnostics.
/// Node (i, j) sits at (x1(i), x2(j)) and is stored at j * n1 + i.
struct Grid2DField {
  GridAxes axes;
  double t = 0.0;
  std::string source = "char";
  Vec values;
  std::vector<std::uint8_t> converged;
  std::vector<std::uint8_t> certificate_ok;
  std::vector<int> trials_used;
  Vec wall_time;

  Grid2DField() = default;
  Grid2DField(GridAxes a, double time, std::string src);

  std::size_t index(std::size_t i, std::size_t j) const { return j * axes.n1 + i; }
  double& at(std::size_t i, std::size_t j) { return values[index(i, j)]; }
  double at(std::size_t i, std::size_t j) const { return values[index(i, j)]; }

  /// Bilinear interpolation; points outside the grid are clamped to it.
  double sample(double x1, double x2) const;
};

}  // namespace hjchar
