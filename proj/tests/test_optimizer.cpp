#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hjchar/errors.hpp"
#include "hjchar/optimizer.hpp"
#include "support.hpp"

using namespace hjchar;

namespace {

double sign(double v) { return (v > 0) - (v < 0); }

const ObjectiveFn kBowl = [](ConstSpan v) {
  return (v[0] - 1) * (v[0] - 1) + (v[1] + 2) * (v[1] + 2);
};
const PartialFn kBowlPartial = [](ConstSpan v, std::size_t i) {
  return i == 0 ? 2 * (v[0] - 1) : 2 * (v[1] + 2);
};

}  // namespace

TEST_CASE("coordinate descent finds the minimum of a quadratic") {
  DescentConfig cfg;
  cfg.lipschitz = 4.0;
  const DescentResult r = coordinate_descent(kBowl, kBowlPartial, Vec{0, 0}, cfg);
  CHECK(r.converged);
  CHECK(r.backoffs == 0);
  CHECK(std::fabs(r.v_star[0] - 1) < 1e-6);
  CHECK(std::fabs(r.v_star[1] + 2) < 1e-6);
  CHECK(r.value < 1e-12);
}

TEST_CASE("a flat objective stops after one sweep") {
  DescentConfig cfg;
  const ObjectiveFn flat = [](ConstSpan) { return 1.0; };
  const PartialFn zero = [](ConstSpan, std::size_t) { return 0.0; };
  const DescentResult r = coordinate_descent(flat, zero, Vec{0.1, 0.2, 0.3}, cfg);
  CHECK(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.v_star == Vec{0.1, 0.2, 0.3});
}

TEST_CASE("descent on the L1 norm is monotone") {
  DescentConfig cfg;
  cfg.lipschitz = 64.0;
  const ObjectiveFn l1 = [](ConstSpan v) { return std::fabs(v[0]) + std::fabs(v[1]); };
  const PartialFn sub = [](ConstSpan v, std::size_t i) { return sign(v[i]); };
  double last = l1(Vec{0.375, -0.25});
  bool monotone = true;
  const DescentResult r = coordinate_descent(l1, sub, Vec{0.375, -0.25}, cfg,
                                             [&](long, ConstSpan v, double) {
                                               const double now = l1(v);
                                               if (now > last) monotone = false;
                                               last = now;
                                             });
  CHECK(monotone);
  CHECK(r.converged);
  CHECK(r.value == 0.0);
}

TEST_CASE("step size halves exactly on each backoff") {
  DescentConfig cfg;
  cfg.lipschitz = 3.0;
  cfg.max_iterations = 10;
  cfg.max_backoffs = 4;
  // a constant slope never stalls, so every level is exhausted
  const ObjectiveFn slope = [](ConstSpan v) { return v[0]; };
  const PartialFn one = [](ConstSpan, std::size_t) { return 1.0; };
  std::vector<double> alphas;
  const DescentResult r = coordinate_descent(slope, one, Vec{0.0}, cfg,
                                             [&](long k, ConstSpan, double a) {
                                               if ((k - 1) % cfg.max_iterations == 0) {
                                                 alphas.push_back(a);
                                               }
                                             });
  CHECK_FALSE(r.converged);
  CHECK(r.backoffs == 4);
  CHECK(r.iterations == 50);
  REQUIRE(alphas.size() == 5);
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    CHECK(alphas[j] == 1.0 / (std::ldexp(1.0, static_cast<int>(j)) * cfg.lipschitz));
  }
}

TEST_CASE("invalid descent settings are rejected") {
  DescentConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(2), ConfigError);
  CHECK_THROWS_AS(multi_start(kBowl, kBowlPartial, 2, cfg), ConfigError);
  cfg.trials = 1;
  cfg.max_iterations = 1;
  CHECK_THROWS_AS(cfg.validate(2), ConfigError);
  cfg.max_iterations = 500;
  cfg.lipschitz = 0.0;
  CHECK_THROWS_AS(cfg.validate(2), ConfigError);
}

TEST_CASE("certificate compares p0 with the gradient of g") {
  DataPtr g = make_ellipse_data(Vec{1.0, 1.0});
  ModelPtr zero = testing::zero_model(2);
  const Vec x{1.5, -0.5};
  const double tol = 1e-3;
  // H = 0 keeps (x, p) fixed, so x_0 = x and p_0 = v
  Trajectory exact = integrate_backward(*zero, x, x, 0.1, 0.05);
  CHECK(check_certificate(exact, *g, tol));
  Vec off = x;
  off[1] += 10 * tol * (1 + 1.5);
  Trajectory perturbed = integrate_backward(*zero, x, off, 0.1, 0.05);
  CHECK_FALSE(check_certificate(perturbed, *g, tol));
  CHECK(check_certificate_at(exact, 1, *g, tol));
}

TEST_CASE("multi-start finds a global minimum of a double well") {
  DescentConfig cfg;
  cfg.lipschitz = 50.0;
  cfg.trials = 20;
  const ObjectiveFn well = [](ConstSpan v) {
    return (v[0] * v[0] - 1) * (v[0] * v[0] - 1) + (v[1] * v[1] - 1) * (v[1] * v[1] - 1);
  };
  const PartialFn dwell = [](ConstSpan v, std::size_t i) { return 4 * v[i] * (v[i] * v[i] - 1); };
  const MultiStartResult r = multi_start(well, dwell, 2, cfg);
  CHECK(r.any_result);
  CHECK(r.trials_used == 20);
  CHECK(r.best.value < 1e-6);
}

TEST_CASE("the best certified trial wins over a lower uncertified one") {
  DescentConfig cfg;
  cfg.lipschitz = 50.0;
  cfg.trials = 6;
  // Two basins; the certifier only accepts the right one, whose minimum is higher.
  const ObjectiveFn f = [](ConstSpan v) { return (v[0] * v[0] - 1) * (v[0] * v[0] - 1) + 0.1 * v[0]; };
  const PartialFn df = [](ConstSpan v, std::size_t) { return 4 * v[0] * (v[0] * v[0] - 1) + 0.1; };
  const MultiStartResult r =
      multi_start(f, df, 1, cfg, [](DescentResult& d) { return d.v_star[0] > 0; });
  bool left = false, right = false;
  for (const TrialRecord& t : r.trials) (t.result.v_star[0] > 0 ? right : left) = true;
  REQUIRE(left);
  REQUIRE(right);
  CHECK(r.best.certificate_ok);
  CHECK(r.best.v_star[0] > 0);

  const MultiStartResult none = multi_start(f, df, 1, cfg, [](DescentResult&) { return false; });
  CHECK(none.any_result);
  CHECK_FALSE(none.best.certificate_ok);
  CHECK(none.best.v_star[0] < 0);
}

TEST_CASE("evaluation failures trigger resampling") {
  DescentConfig cfg;
  cfg.lipschitz = 4.0;
  cfg.trials = 8;
  // starts with v0 < 0 hit a singular point; descent from v0 > 0 stays positive
  const PartialFn guarded = [](ConstSpan v, std::size_t i) {
    if (v[0] < 0) throw SingularPointError("test singularity");
    return kBowlPartial(v, i);
  };
  const MultiStartResult r = multi_start(kBowl, guarded, 2, cfg);
  int counted = 0;
  for (const TrialRecord& t : r.trials) {
    CHECK_FALSE(t.aborted);
    counted += t.resamples;
  }
  CHECK(r.total_resamples == counted);
  CHECK(r.total_resamples > 0);
  CHECK(r.trials_used == 8);
  CHECK(std::fabs(r.best.v_star[0] - 1) < 1e-6);

  const PartialFn broken = [](ConstSpan, std::size_t) -> double {
    throw NonFiniteStateError("always");
  };
  cfg.trials = 2;
  cfg.max_resamples = 3;
  const MultiStartResult dead = multi_start(kBowl, broken, 2, cfg);
  CHECK_FALSE(dead.any_result);
  CHECK(dead.trials_used == 0);
  CHECK(dead.total_resamples == 6);
  CHECK(std::isnan(dead.best.value));
  CHECK(dead.trials[0].aborted);
}

TEST_CASE("results are reproducible from the seed") {
  DescentConfig cfg;
  cfg.lipschitz = 4.0;
  cfg.trials = 3;
  cfg.rng_seed = 1234;
  const MultiStartResult a = multi_start(kBowl, kBowlPartial, 2, cfg);
  const MultiStartResult b = multi_start(kBowl, kBowlPartial, 2, cfg);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].result.v_star == b.trials[i].result.v_star);
  }
  TrialSampler s0(1234, 0), s0b(1234, 0), s1(1234, 1);
  const Vec u = s0.sample(4, -2, 2);
  CHECK(u == s0b.sample(4, -2, 2));
  CHECK(u != s1.sample(4, -2, 2));
  for (double x : u) {
    CHECK(x >= -2);
    CHECK(x < 2);
  }
}
