#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include "hjchar/catalog.hpp"
#include "hjchar/errors.hpp"
#include "hjchar/pointwise_solver.hpp"
#include "support.hpp"

using namespace hjchar;

namespace {

ExampleSetup setup(const char* id, int sign = 1) {
  ExampleChoice c;
  c.id = id;
  c.sign = sign;
  return example_setup(c);
}

bool same_bits(const Vec& a, const Vec& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("Ex1 grid smoke") {
  const ExampleSetup s = setup("ex1");
  const auto fields = solve_grid(s.problem, GridAxes::square(1.0, 2), {0.06, 0.12}, s.solve);
  REQUIRE(fields.size() == 2);
  for (const Grid2DField& f : fields) {
    CHECK(f.values.size() == 4);
    CHECK(f.source == "char");
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::isfinite(f.values[c]));
      CHECK(f.converged[c]);
      CHECK(f.certificate_ok[c]);
      CHECK(f.trials_used[c] == 1);
    }
  }
  CHECK(fields[0].t == 0.06);
  CHECK(fields[1].t == 0.12);
}

TEST_CASE("grid output does not depend on the worker count") {
  const ExampleSetup s = setup("ex2", -1);
  const GridAxes axes = GridAxes::square(2.0, 6);
  const auto one = solve_grid(s.problem, axes, {0.2}, s.solve, 1);
  const auto many = solve_grid(s.problem, axes, {0.2}, s.solve, 8);
  REQUIRE(one.size() == 1);
  CHECK(same_bits(one[0].values, many[0].values));
  CHECK(one[0].certificate_ok == many[0].certificate_ok);
  CHECK(grid_point_seed(42, 0, 3, 36) != grid_point_seed(42, 1, 3, 36));
}

TEST_CASE("short horizons approach the initial data") {
  const ExampleSetup s = setup("ex2");
  const Vec x{0.7, -1.1};
  const PointSolution p = solve_point(s.problem, x, 0.01, s.solve);
  CHECK(std::fabs(p.value - s.problem.data->g(x)) < 0.05);
  CHECK(p.mode == SolveMode::Hopf);
}

TEST_CASE("eikonal closed form through the Lax functional") {
  ProblemSpec p{testing::eikonal(2), make_ellipse_data(Vec{1.0, 1.0}), SolveMode::Lax};
  SolveConfig cfg;
  cfg.descent.lipschitz = 0.02;
  cfg.descent.trials = 3;
  for (const Vec& x : {Vec{2.0, 0.0}, Vec{-1.0, 1.5}, Vec{0.3, -2.2}}) {
    const PointSolution s = solve_point(p, x, 0.5, cfg);
    const double r = norm2(x) - 0.5;
    CHECK(s.value == doctest::Approx(0.5 * (r * r - 1)).epsilon(1e-3));
    CHECK(s.certificate_ok);
  }
}

TEST_CASE("concave eikonal closed form through lax-max") {
  // phi_t - |grad phi| = 0 from the unit-ball data gives max over the t-ball of g.
  ProblemSpec p{testing::eikonal(2, -1.0), make_ellipse_data(Vec{1.0, 1.0}), SolveMode::LaxMax};
  SolveConfig cfg;
  cfg.descent.lipschitz = 0.02;
  cfg.descent.trials = 3;
  for (const Vec& x : {Vec{2.0, 0.0}, Vec{-1.0, 1.5}, Vec{0.1, -0.2}}) {
    const PointSolution s = solve_point(p, x, 0.5, cfg);
    const double r = norm2(x) + 0.5;
    CHECK(s.value == doctest::Approx(0.5 * (r * r - 1)).epsilon(1e-3));
    CHECK(s.mode == SolveMode::LaxMax);
  }
}

TEST_CASE("Lax and Hopf agree on the convex eikonal example") {
  const ExampleSetup lax = setup("ex3");
  ProblemSpec hopf = lax.problem;
  hopf.mode = SolveMode::Hopf;
  SolveConfig hcfg = lax.solve;
  hcfg.descent.lipschitz = 30.0;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const Vec x = testing::uniform(rng, 2, -2.5, 2.5);
    const PointSolution a = solve_point(lax.problem, x, 0.2, lax.solve);
    const PointSolution b = solve_point(hopf, x, 0.2, hcfg);
    CHECK_MESSAGE(std::fabs(a.value - b.value) <= 5e-3, "x = (", x[0], ", ", x[1], ")");
  }
}

TEST_CASE("query validation") {
  const ExampleSetup s = setup("ex2");
  CHECK_THROWS_AS(solve_point(s.problem, Vec{0.0}, 0.1, s.solve), ConfigError);
  CHECK_THROWS_AS(solve_point(s.problem, Vec{0.0, 0.0}, 0.0, s.solve), ConfigError);
  GridAxes bad = GridAxes::square(1.0, 1);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("bilinear sampling") {
  Grid2DField f(GridAxes::square(1.0, 3), 0.0, "test");
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) f.at(i, j) = 2 * f.axes.x1(i) - f.axes.x2(j);
  }
  CHECK(f.sample(0.25, -0.5) == doctest::Approx(1.0));
  CHECK(f.sample(5.0, 0.0) == doctest::Approx(2.0));
}
