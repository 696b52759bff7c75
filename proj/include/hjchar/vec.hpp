#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hjchar {

using Vec = std::vector<double>;
using ConstSpan = std::span<const double>;
using MutSpan = std::span<double>;

inline double dot(ConstSpan a, ConstSpan b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(ConstSpan a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(ConstSpan a) {
  double m = 0.0;
  for (double v : a) m = std::fmax(m, std::fabs(v));
  return m;
}

inline bool all_finite(ConstSpan a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace hjchar
