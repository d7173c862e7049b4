#include <cmath>
#include <random>

#include "doctest.h"
#include "odebench/adaptive.hpp"
#include "odebench/errors.hpp"
#include "odebench/fixed_step.hpp"
#include "odebench/models.hpp"

using namespace odebench;

namespace {

// Slope of an oracle by central differences.
double derivative(const std::function<double(double)>& g, double t) {
  const double d = 1e-6;
  return (g(t + d) - g(t - d)) / (2 * d);
}

double fine_rk4(const RhsFunction& f, double y0, double t_end, double h) {
  const IvpProblem p{f, 0.0, y0, t_end};
  return integrate_fixed(p, FixedMethod::Rk4, {h, std::nullopt}).back().y;
}

}  // namespace

TEST_CASE("rhs examples") {
  CHECK(logistic_rhs(LogisticModel{})(0.0, 500.0) == doctest::Approx(25.0));
  CHECK(logistic_rhs(LogisticModel{})(3.0, 1000.0) == 0.0);

  const auto temp = temperature_rhs(TemperatureModel{});
  CHECK(temp(0.0, 30.0) == doctest::Approx(-5.0));
  for (const double t : {0.0, 3.5, 11.0}) {
    CHECK(temp(t, 25.0) == doctest::Approx(temp(t + 24.0, 25.0)).epsilon(1e-12));
  }

  MarketModel m;
  m.p_c = 10.0;
  m.lambda = 1.0;
  CHECK(market_rhs(m)(0.0, 3.0) == doctest::Approx(0.2));
  CHECK(m.equilibrium_price() == 4.0);
  CHECK(market_rhs(m)(5.0, m.equilibrium_price()) == 0.0);
  CHECK(MarketModel{}.pole_time() == 10.0);
}

TEST_CASE("logistic_exact values") {
  const LogisticModel m;
  CHECK(logistic_exact(m, 0.0) == 100.0);
  CHECK(logistic_exact(m, 10.0) == doctest::Approx(231.96931668407394).epsilon(1e-12));
  CHECK(logistic_exact(m, 1000.0) == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("temperature_exact against a fine RK4 integration") {
  const TemperatureModel m;
  CHECK(temperature_exact(m, 0.0) == doctest::Approx(30.0).epsilon(1e-14));
  const double oracle = fine_rk4(temperature_rhs(m), m.T0, 24.0, 1e-3);
  CHECK(std::abs(temperature_exact(m, 24.0) - oracle) / std::abs(oracle) < 1e-8);
  CHECK(temperature_exact(m, 24.0) == doctest::Approx(17.945384891935458).epsilon(1e-12));

  TemperatureModel flat = m;
  flat.B = 0.0;
  for (const double t : {0.0, 1.0, 5.0, 40.0}) {
    CHECK(temperature_exact(flat, t) ==
          doctest::Approx(20.0 + 10.0 * std::exp(-0.5 * t)).epsilon(1e-13));
  }
}

TEST_CASE("oracles satisfy their differential equations") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    LogisticModel lm{0.05 + 0.3 * u(rng), 500.0 + 1000.0 * u(rng), 10.0 + 400.0 * u(rng)};
    TemperatureModel tm{0.1 + u(rng), 10.0 + 30.0 * u(rng), 15.0 + 10.0 * u(rng),
                        10.0 * u(rng), 12.0 + 24.0 * u(rng)};
    const auto lf = logistic_rhs(lm);
    const auto tf = temperature_rhs(tm);
    const auto lx = [&](double t) { return logistic_exact(lm, t); };
    const auto tx = [&](double t) { return temperature_exact(tm, t); };
    for (const double t : {0.5, 7.0, 30.0}) {
      CHECK(std::abs(derivative(lx, t) - lf(t, lx(t))) < 1e-4 * (1.0 + std::abs(lf(t, lx(t)))));
      CHECK(std::abs(derivative(tx, t) - tf(t, tx(t))) < 1e-4 * (1.0 + std::abs(tf(t, tx(t)))));
    }
  }
  const MarketModel mm;
  const auto mf = market_rhs(mm);
  const auto mx = [&](double t) { return market_reference(mm, t); };
  CHECK(mx(0.0) == doctest::Approx(mm.p0).epsilon(1e-14));
  for (const double t : {0.5, 3.0, 8.0}) {
    CHECK(std::abs(derivative(mx, t) - mf(t, mx(t))) < 1e-4 * (1.0 + std::abs(mf(t, mx(t)))));
  }
}

TEST_CASE("logistic solutions rise monotonically and stay below K") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const LogisticModel m{0.05 + 0.5 * u(rng), 200.0 + 2000.0 * u(rng), 1.0 + 150.0 * u(rng)};
    const IvpProblem p{logistic_rhs(m), 0.0, m.P0, 100.0};
    const Trajectory t = integrate_fixed(p, FixedMethod::Rk4, {0.1, std::nullopt});
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      CHECK(t.samples[i].y >= t.samples[i - 1].y);
      CHECK(t.samples[i].y <= m.K * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("temperature settles onto the periodic ambient response") {
  const TemperatureModel m;
  // After the transient decays, T(t + period) = T(t).
  for (const double t : {60.0, 70.0}) {
    CHECK(temperature_exact(m, t + m.period) ==
          doctest::Approx(temperature_exact(m, t)).epsilon(1e-9));
  }
  // The steady oscillation stays within A +/- B.
  for (double t = 40.0; t < 100.0; t += 0.5) {
    CHECK(std::abs(temperature_exact(m, t) - m.A) <= m.B);
  }
}

TEST_CASE("market price diverges at the pole from any off-equilibrium start") {
  for (const double p0 : {0.5, 3.0, 6.0, 9.0}) {
    MarketModel m;
    m.p0 = p0;
    const IvpProblem p{market_rhs(m), 0.0, p0, 20.0};
    for (const auto method : {FixedMethod::Euler, FixedMethod::Rk4}) {
      const Trajectory t = integrate_fixed(p, method, {0.01, std::nullopt});
      CHECK(t.status == Termination::BlowUp);
      REQUIRE(t.failure_x.has_value());
      CHECK(*t.failure_x <= m.pole_time() + 0.5);
    }
    const Trajectory a = integrate_adaptive(p, AdaptiveConfig::for_problem(p));
    CHECK_FALSE(a.completed());
    REQUIRE(a.failure_x.has_value());
    CHECK(*a.failure_x == doctest::Approx(m.pole_time()).epsilon(1e-3));
  }
}

TEST_CASE("model validation names the offending field") {
  LogisticModel l;
  l.K = -5.0;
  try {
    l.validate();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "K");
  }
  TemperatureModel t;
  t.period = 0.0;
  CHECK_THROWS_AS(t.validate(), ValidationError);
  MarketModel m;
  m.lambda = 0.0;
  CHECK_THROWS_AS(m.validate(), ValidationError);
}

TEST_CASE("CaseModel helpers") {
  const CaseModel l = LogisticModel{};
  const CaseModel t = TemperatureModel{};
  const CaseModel m = MarketModel{};
  CHECK(model_name(l) == "logistic");
  CHECK(model_name(t) == "temperature");
  CHECK(model_name(m) == "market");
  CHECK(model_initial_value(l) == 100.0);
  CHECK(model_initial_value(t) == 30.0);
  CHECK(model_initial_value(m) == 3.0);
  CHECK(model_exact(l).has_value());
  CHECK(model_exact(t).has_value());
  CHECK_FALSE(model_exact(m).has_value());
  CHECK((*model_exact(l))(10.0) == logistic_exact(LogisticModel{}, 10.0));
  CHECK(model_reference_curve(m)(2.0) == market_reference(MarketModel{}, 2.0));
}
