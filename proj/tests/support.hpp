#pragma once

#include <cmath>
#include <random>

#include "hjchar/hamiltonian.hpp"
#include "hjchar/initial_data.hpp"

namespace testing {

using namespace hjchar;

// H(p) = |p|^2 / 2
inline ModelPtr half_square(std::size_t d) {
  ModelTraits tr;
  tr.convex_in_p = true;
  return make_custom_model(
      d, tr, [](ConstSpan, ConstSpan p, double) { return 0.5 * dot(p, p); },
      [](ConstSpan, ConstSpan p, double, MutSpan out) {
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
      },
      [](ConstSpan, ConstSpan, double, MutSpan out) {
        for (double& o : out) o = 0.0;
      },
      "half-square");
}

// H(p) = c |p|; concave for c < 0
inline ModelPtr eikonal(std::size_t d, double c = 1.0) {
  ModelTraits tr;
  tr.convex_in_p = c > 0;
  tr.concave_in_p = c < 0;
  tr.smooth_at_p0 = false;
  tr.homogeneous_degree1 = true;
  return make_custom_model(
      d, tr, [c](ConstSpan, ConstSpan p, double) { return c * norm2(p); },
      [c](ConstSpan, ConstSpan p, double, MutSpan out) {
        const double n = norm2(p);
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = c * p[i] / n;
      },
      [](ConstSpan, ConstSpan, double, MutSpan out) {
        for (double& o : out) o = 0.0;
      },
      c > 0 ? "eikonal" : "concave-eikonal");
}

inline ModelPtr zero_model(std::size_t d) {
  ModelTraits tr;
  tr.convex_in_p = true;
  tr.linear_in_p = true;
  return make_custom_model(
      d, tr, [](ConstSpan, ConstSpan, double) { return 0.0; },
      [](ConstSpan, ConstSpan, double, MutSpan out) {
        for (double& o : out) o = 0.0;
      },
      [](ConstSpan, ConstSpan, double, MutSpan out) {
        for (double& o : out) o = 0.0;
      },
      "zero");
}

inline Vec uniform(std::mt19937_64& rng, std::size_t d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(d);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace testing
