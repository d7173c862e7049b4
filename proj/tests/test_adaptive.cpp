#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "odebench/adaptive.hpp"
#include "odebench/errors.hpp"

using namespace odebench;

namespace {

const RhsFunction kZero = [](double, double) { return 0.0; };
const RhsFunction kGrowth = [](double, double y) { return y; };
const RhsFunction kSquare = [](double, double y) { return y * y; };

// Reference Dormand-Prince step: generic tableau loop in long double, used
// only to check the unrolled implementation.
struct OracleStep {
  long double y5;
  long double y4;
};

OracleStep oracle_dopri(const std::function<long double(long double, long double)>& f,
                        long double x, long double y, long double h) {
  const long double c[7] = {0.0L, 1.0L / 5, 3.0L / 10, 4.0L / 5, 8.0L / 9, 1.0L, 1.0L};
  const long double a[7][6] = {
      {},
      {1.0L / 5},
      {3.0L / 40, 9.0L / 40},
      {44.0L / 45, -56.0L / 15, 32.0L / 9},
      {19372.0L / 6561, -25360.0L / 2187, 64448.0L / 6561, -212.0L / 729},
      {9017.0L / 3168, -355.0L / 33, 46732.0L / 5247, 49.0L / 176, -5103.0L / 18656},
      {35.0L / 384, 0.0L, 500.0L / 1113, 125.0L / 192, -2187.0L / 6784, 11.0L / 84},
  };
  const long double b5[7] = {35.0L / 384, 0, 500.0L / 1113, 125.0L / 192, -2187.0L / 6784,
                             11.0L / 84, 0};
  const long double b4[7] = {5179.0L / 57600,    0,           7571.0L / 16695, 393.0L / 640,
                             -92097.0L / 339200, 187.0L / 2100, 1.0L / 40};
  long double k[7];
  for (int i = 0; i < 7; ++i) {
    long double acc = 0;
    for (int j = 0; j < i; ++j) acc += a[i][j] * k[j];
    k[i] = f(x + c[i] * h, y + h * acc);
  }
  OracleStep out{y, y};
  for (int i = 0; i < 7; ++i) {
    out.y5 += h * b5[i] * k[i];
    out.y4 += h * b4[i] * k[i];
  }
  return out;
}

AdaptiveConfig unit_config() {
  AdaptiveConfig c;
  c.h_min = 1e-10;
  c.h_initial = 0.01;
  c.h_max = 1.0;
  return c;
}

}  // namespace

TEST_CASE("dopri45_step with zero slope is exact and grows the step") {
  const AdaptiveConfig cfg = unit_config();
  const StepOutcome out = dopri45_step(kZero, 0.0, 4.2, 0.1, cfg);
  CHECK(out.accepted);
  CHECK(out.y5 == 4.2);
  CHECK(out.y4 == 4.2);
  CHECK(out.err_est == 0.0);
  CHECK(out.h_next == doctest::Approx(0.5));
  CHECK(out.rhs_evaluations == 7);
  // Growth is clamped by h_max.
  CHECK(dopri45_step(kZero, 0.0, 1.0, 0.5, cfg).h_next == 1.0);
}

TEST_CASE("dopri45_step on y' = y matches e^h") {
  const StepOutcome out = dopri45_step(kGrowth, 0.0, 1.0, 0.1, unit_config());
  CHECK(out.accepted);
  CHECK(std::abs(out.y5 - 1.1051709180756477) < 1e-9);
  CHECK(out.h_used == 0.1);
}

TEST_CASE("dopri45_step agrees with a generic long-double tableau") {
  const auto f = [](long double x, long double y) { return std::sin(x) * y + x * x; };
  const RhsFunction fd = [](double x, double y) { return std::sin(x) * y + x * x; };
  for (const double h : {0.01, 0.1, 0.7}) {
    const OracleStep ref = oracle_dopri(f, 0.3L, 1.2L, h);
    const StepOutcome out = dopri45_step(fd, 0.3, 1.2, h, unit_config());
    CHECK(out.y5 == doctest::Approx(static_cast<double>(ref.y5)).epsilon(1e-14));
    CHECK(out.y4 == doctest::Approx(static_cast<double>(ref.y4)).epsilon(1e-14));
  }
}

TEST_CASE("dopri45_step rejects a large step on y' = y^2") {
  const AdaptiveConfig cfg = unit_config();
  const OracleStep ref =
      oracle_dopri([](long double, long double y) { return y * y; }, 0.9L, 1.0L, 0.5L);
  const double scaled = static_cast<double>(
      std::fabs(ref.y5 - ref.y4) /
      (cfg.abs_tol + cfg.rel_tol * std::max(1.0L, std::fabs(ref.y5))));

  const StepOutcome out = dopri45_step(kSquare, 0.9, 1.0, 0.5, cfg);
  CHECK_FALSE(out.accepted);
  CHECK(out.err_est > 1.0);
  CHECK(out.err_est == doctest::Approx(scaled).epsilon(1e-9));
  CHECK(out.h_next < 0.5);
  CHECK(out.h_next == doctest::Approx(
                          0.5 * std::max(cfg.shrink_limit, cfg.safety * std::pow(scaled, -0.2)))
                          .epsilon(1e-9));
}

TEST_CASE("dopri45_step treats non-finite stages as a rejection") {
  const RhsFunction pole = [](double x, double) { return 1.0 / (x - 0.05); };
  const AdaptiveConfig cfg = unit_config();
  const StepOutcome out = dopri45_step(pole, 0.0, 1.0, 0.25, cfg);
  CHECK_FALSE(out.accepted);
  CHECK(std::isinf(out.err_est));
  CHECK(out.h_next == doctest::Approx(0.25 * cfg.shrink_limit));
  CHECK(out.rhs_evaluations == 1);  // stage 2 sits on the pole
}

TEST_CASE("h_next stays within [h_min, h_max]") {
  AdaptiveConfig cfg = unit_config();
  cfg.h_min = 0.05;
  const StepOutcome out = dopri45_step(kSquare, 0.9, 1.0, 0.06, cfg);
  CHECK(out.h_next >= cfg.h_min);
  CHECK(out.h_next <= cfg.h_max);
}

TEST_CASE("integrate_adaptive with zero slope") {
  const IvpProblem p{kZero, 0.0, 1.0, 10.0};
  const Trajectory t = integrate_adaptive(p, AdaptiveConfig::for_problem(p));
  CHECK(t.completed());
  CHECK(t.back().x == 10.0);
  CHECK(t.stats.steps_accepted < 6);
  for (const auto& s : t.samples) CHECK(s.y == 1.0);
}

TEST_CASE("integrate_adaptive reaches e on y' = y") {
  const IvpProblem p{kGrowth, 0.0, 1.0, 1.0};
  AdaptiveConfig cfg = AdaptiveConfig::for_problem(p);
  cfg.rel_tol = 1e-8;
  const Trajectory t = integrate_adaptive(p, cfg);
  CHECK(t.completed());
  CHECK(t.back().x == 1.0);
  CHECK(std::abs(t.back().y - 2.718281828459045) < 1e-7);
  CHECK(t.stats.rhs_evaluations ==
        7 * (t.stats.steps_accepted + t.stats.steps_rejected));
}

TEST_CASE("integrate_adaptive stops at the pole of y' = y^2") {
  const IvpProblem p{kSquare, 0.0, 1.0, 2.0};
  const Trajectory t = integrate_adaptive(p, AdaptiveConfig::for_problem(p));
  CHECK((t.status == Termination::StepUnderflow || t.status == Termination::BlowUp));
  REQUIRE(t.failure_x.has_value());
  CHECK(*t.failure_x >= 0.99);
  CHECK(*t.failure_x <= 1.01);
}

TEST_CASE("tolerance scaling: tighter rel_tol never loses accuracy") {
  const IvpProblem p{kGrowth, 0.0, 1.0, 1.0};
  double prev = INFINITY;
  for (double tol = 1e-3; tol >= 1e-11; tol /= 2) {
    AdaptiveConfig cfg = AdaptiveConfig::for_problem(p);
    cfg.rel_tol = tol;
    const double err = std::abs(integrate_adaptive(p, cfg).back().y - std::exp(1.0));
    CHECK(err <= 2.0 * prev);
    prev = err;
  }
}

TEST_CASE("error estimate bounds the true local error on y' = y") {
  const AdaptiveConfig cfg = unit_config();
  double x = 0.0;
  double y = 1.0;
  double h = cfg.h_initial;
  int accepted = 0;
  while (x < 1.0 && accepted < 200) {
    h = std::min(h, 1.0 - x);
    const StepOutcome out = dopri45_step(kGrowth, x, y, h, cfg);
    if (out.accepted) {
      // Local error against the exact flow from (x, y).
      const double local = std::abs(out.y5 - y * std::exp(h));
      CHECK(local <= 10.0 * std::abs(out.y5 - out.y4));
      x += h;
      y = out.y5;
      ++accepted;
    }
    h = out.h_next;
  }
}

TEST_CASE("step-count economy on y' = y") {
  const IvpProblem p{kGrowth, 0.0, 1.0, 1.0};
  const Trajectory t = integrate_adaptive(p, AdaptiveConfig::for_problem(p));
  CHECK(t.stats.steps_accepted < 25);
}

TEST_CASE("rejected steps never advance the trajectory") {
  // Tight tolerance and a large first step force early rejections.
  const IvpProblem p{[](double x, double y) { return std::cos(10 * x) * y; }, 0.0, 1.0, 3.0};
  AdaptiveConfig cfg = AdaptiveConfig::for_problem(p);
  cfg.h_initial = cfg.h_max;
  cfg.rel_tol = 1e-10;
  const Trajectory t = integrate_adaptive(p, cfg);
  CHECK(t.completed());
  CHECK(t.stats.steps_rejected > 0);
  CHECK(t.samples.size() == t.stats.steps_accepted + 1);
  for (std::size_t i = 1; i < t.samples.size(); ++i) {
    CHECK(t.samples[i].x > t.samples[i - 1].x);
  }
}

TEST_CASE("adaptive config validation") {
  const IvpProblem p{kGrowth, 0.0, 1.0, 1.0};
  auto bad = [&](auto mutate) {
    AdaptiveConfig cfg = AdaptiveConfig::for_problem(p);
    mutate(cfg);
    CHECK_THROWS_AS(integrate_adaptive(p, cfg), InvalidConfig);
  };
  bad([](AdaptiveConfig& c) { c.h_min = 0.0; });
  bad([](AdaptiveConfig& c) { c.h_initial = 2.0 * c.h_max; });
  bad([](AdaptiveConfig& c) { c.h_min = 2.0 * c.h_initial; });
  bad([](AdaptiveConfig& c) { c.rel_tol = 0.0; });
  bad([](AdaptiveConfig& c) { c.abs_tol = -1.0; });
  bad([](AdaptiveConfig& c) { c.safety = 1.0; });
  bad([](AdaptiveConfig& c) { c.shrink_limit = 1.0; });
  bad([](AdaptiveConfig& c) { c.growth_limit = 1.0; });
}
