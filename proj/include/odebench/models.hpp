#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <variant>

#include "odebench/ivp.hpp"

namespace odebench {

/// dP/dt = r P (1 - P/K).
struct LogisticModel {
  double r = 0.1;
  double K = 1000.0;
  double P0 = 100.0;

  void validate() const;
};

/// dT/dt = k (M(t) - T) with ambient M(t) = A + B sin(2 pi t / period).
struct TemperatureModel {
  double k = 0.5;
  double T0 = 30.0;
  double A = 20.0;
  double B = 5.0;
  double period = 24.0;

  void validate() const;
};

/// dp/dt = adjust (D(p) - S(p)) / (p_c - lambda t), with linear demand
/// D(p) = d0 - d1 p and supply S(p) = s0 + s1 p. The denominator vanishes at
/// t = p_c / lambda. With the default negative p_c and lambda the price
/// diverges as t approaches the pole.
struct MarketModel {
  double adjust = 1.0;
  double d0 = 10.0;
  double d1 = 1.0;
  double s0 = 2.0;
  double s1 = 1.0;
  double p0 = 3.0;
  double p_c = -10.0;
  double lambda = -1.0;

  void validate() const;
  double equilibrium_price() const { return (d0 - s0) / (d1 + s1); }
  double pole_time() const { return p_c / lambda; }
};

RhsFunction logistic_rhs(const LogisticModel& model);
double logistic_exact(const LogisticModel& model, double t);

RhsFunction temperature_rhs(const TemperatureModel& model);
double temperature_exact(const TemperatureModel& model, double t);

RhsFunction market_rhs(const MarketModel& model);

/// Closed-form price path p* + (p0 - p*) (|p_c - lambda t| / p_c)^kappa with
/// kappa = adjust (d1 + s1) / lambda. It solves the market ODE up to the
/// pole; past the pole it is the mirrored continuation, used only to build
/// synthetic reference curves.
double market_reference(const MarketModel& model, double t);

using CaseModel = std::variant<LogisticModel, TemperatureModel, MarketModel>;

std::string_view model_name(const CaseModel& model);
RhsFunction model_rhs(const CaseModel& model);
double model_initial_value(const CaseModel& model);

/// Analytic solution where one exists (logistic, temperature); market has
/// none valid across its pole.
std::optional<std::function<double(double)>> model_exact(const CaseModel& model);

/// Noise-free curve used for synthetic reference fixtures.
std::function<double(double)> model_reference_curve(const CaseModel& model);

}  // namespace odebench
