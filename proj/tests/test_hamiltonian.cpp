#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hjchar/errors.hpp"
#include "support.hpp"

using namespace hjchar;

namespace {

struct Case {
  ExampleId id;
  int sign;
  std::size_t k;
};

const Case kCases[] = {{ExampleId::Ex1Linear, 1, 1},  {ExampleId::Ex2Harmonic, 1, 1},
                       {ExampleId::Ex2Harmonic, -1, 1}, {ExampleId::Ex3Eikonal, 1, 1},
                       {ExampleId::Ex3Eikonal, -1, 1}, {ExampleId::Ex4Evans, 1, 1},
                       {ExampleId::Ex5Split, 1, 1},     {ExampleId::Ex5Split, 1, 2}};

}  // namespace

TEST_CASE("gradients agree with central differences") {
  std::mt19937_64 rng(7);
  const double h = 1e-5;
  for (const Case& c : kCases) {
    const std::size_t d = 3;
    ModelPtr m = make_example(c.id, d, {c.sign, c.k});
    for (int trial = 0; trial < 100; ++trial) {
      Vec x = testing::uniform(rng, d, -3, 3);
      Vec p = testing::uniform(rng, d, -3, 3);
      const double t = testing::uniform(rng, 1, 0, 0.5)[0];
      // keep away from the kinks of |p_i| and the block norms
      for (double& pi : p) {
        if (std::fabs(pi) < 0.05) pi += 0.1;
      }
      Vec gp(d), gx(d), dp(d), dx(d);
      m->grad_p(x, p, t, gp);
      m->grad_x(x, p, t, gx);
      const double hv = m->eval_with_grads(x, p, t, dp, dx);
      CHECK(hv == doctest::Approx(m->eval(x, p, t)).epsilon(1e-14));
      for (std::size_t i = 0; i < d; ++i) {
        CHECK(dp[i] == doctest::Approx(gp[i]).epsilon(1e-14));
        CHECK(dx[i] == doctest::Approx(gx[i]).epsilon(1e-14));
        Vec a = p, b = p;
        a[i] += h;
        b[i] -= h;
        const double fd_p = (m->eval(x, a, t) - m->eval(x, b, t)) / (2 * h);
        CHECK(std::fabs(gp[i] - fd_p) / (1 + norm_inf(gp)) <= 10 * h);
        a = x;
        b = x;
        a[i] += h;
        b[i] -= h;
        const double fd_x = (m->eval(a, p, t) - m->eval(b, p, t)) / (2 * h);
        CHECK(std::fabs(gx[i] - fd_x) / (1 + norm_inf(gx)) <= 10 * h);
      }
    }
  }
}

TEST_CASE("eikonal and split models are degree-1 homogeneous in p") {
  std::mt19937_64 rng(11);
  for (const Case& c : {kCases[3], kCases[4], kCases[6], kCases[7]}) {
    ModelPtr m = make_example(c.id, 4, {c.sign, c.k});
    CHECK(m->traits().homogeneous_degree1);
    for (int i = 0; i < 50; ++i) {
      Vec x = testing::uniform(rng, 4, -3, 3);
      Vec p = testing::uniform(rng, 4, -3, 3);
      Vec p2 = p;
      for (double& v : p2) v *= 2;
      CHECK(m->eval(x, p2, 0) == doctest::Approx(2 * m->eval(x, p, 0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("non-smooth models reject p = 0 in grad_p") {
  const Vec x{0.1, 0.2};
  const Vec zero{0.0, 0.0};
  Vec out(2);
  for (ExampleId id : {ExampleId::Ex3Eikonal, ExampleId::Ex4Evans, ExampleId::Ex5Split}) {
    ModelPtr m = make_example(id, 2);
    CHECK_FALSE(m->traits().smooth_at_p0);
    CHECK_THROWS_AS(m->grad_p(x, zero, 0, out), SingularPointError);
    CHECK(std::isfinite(m->eval(x, zero, 0)));
  }
}

TEST_CASE("Ex4 uses sign(0) = 0 for the |p2| term") {
  ModelPtr m = make_example(ExampleId::Ex4Evans, 2);
  const Vec x{-2.5, -2.5};
  const Vec p{1.0, 0.0};
  Vec g(2);
  m->grad_p(x, p, 0, g);
  // dH/dp2 = 2 sign(p2) - p2/|p| = 0
  CHECK(g[1] == 0.0);
}

TEST_CASE("Ex1 state path does not depend on p") {
  ModelPtr m = make_example(ExampleId::Ex1Linear, 2);
  CHECK(m->traits().linear_in_p);
  const Vec x{0.3, 0.7};
  Vec a(2), b(2);
  m->grad_p(x, Vec{1, 2}, 0, a);
  m->grad_p(x, Vec{-5, 0.1}, 0, b);
  CHECK(a == b);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(make_example(ExampleId::Ex2Harmonic, 1), ConfigError);
  CHECK_THROWS_AS(make_example(ExampleId::Ex5Split, 3, {1, 0}), ConfigError);
  CHECK_THROWS_AS(make_example(ExampleId::Ex5Split, 3, {1, 3}), ConfigError);
  CHECK_NOTHROW(make_example(ExampleId::Ex5Split, 7, {1, 1}));
}

TEST_CASE("ellipse data values") {
  DataPtr g = make_initial_data(InitialDataKind::EllipseQuadratic, 2);
  CHECK(g->g(Vec{1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(g->g(Vec{0.0, 2.5}) == doctest::Approx(0.0));
  CHECK(g->g_conj(Vec{1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(g->convex());
  CHECK(g->has_conjugate());
}

TEST_CASE("rosenbrock data values") {
  DataPtr g = make_initial_data(InitialDataKind::Rosenbrock, 2);
  CHECK(g->g(Vec{1.0, 0.0}) == doctest::Approx(-0.04));
  CHECK_FALSE(g->convex());
  CHECK_FALSE(g->has_conjugate());
  Vec out(2);
  CHECK_THROWS_AS(g->grad_g_conj(Vec{1.0, 0.0}, out), UnsupportedOperationError);
  std::mt19937_64 rng(3);
  const double h = 1e-6;
  for (int i = 0; i < 20; ++i) {
    Vec x = testing::uniform(rng, 2, -2, 2);
    Vec gr(2);
    g->grad_g(x, gr);
    for (std::size_t k = 0; k < 2; ++k) {
      Vec a = x, b = x;
      a[k] += h;
      b[k] -= h;
      CHECK(gr[k] == doctest::Approx((g->g(a) - g->g(b)) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("Legendre involution on quadratic data") {
  std::mt19937_64 rng(5);
  DataPtr g = make_initial_data(InitialDataKind::EllipseQuadratic, 4);
  for (int i = 0; i < 100; ++i) {
    const Vec x = testing::uniform(rng, 4, -3, 3);
    // The sup in g**(x) = sup_v <x,v> - g*(v) is attained at v = grad g(x).
    Vec v(4), back(4);
    g->grad_g(x, v);
    const double gss = dot(x, v) - g->g_conj(v);
    CHECK(std::fabs(gss - g->g(x)) <= 1e-10);
    g->grad_g_conj(v, back);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::fabs(back[k] - x[k]) <= 1e-12);
  }
}
