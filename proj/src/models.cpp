#include "odebench/models.hpp"

#include <cmath>
#include <numbers>

#include "odebench/errors.hpp"

namespace odebench {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(field, "must be a positive finite number");
  }
}

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

}  // namespace

void LogisticModel::validate() const {
  require_positive(r, "r");
  require_positive(K, "K");
  require_positive(P0, "P0");
}

void TemperatureModel::validate() const {
  require_positive(k, "k");
  require_positive(period, "period");
  require_finite(T0, "T0");
  require_finite(A, "A");
  require_finite(B, "B");
}

void MarketModel::validate() const {
  require_positive(adjust, "adjust");
  require_positive(d1, "d1");
  require_positive(s1, "s1");
  require_finite(d0, "d0");
  require_finite(s0, "s0");
  require_finite(p0, "p0");
  require_finite(p_c, "p_c");
  require_finite(lambda, "lambda");
  if (lambda == 0.0) throw ValidationError("lambda", "must be nonzero");
}

RhsFunction logistic_rhs(const LogisticModel& model) {
  return [r = model.r, K = model.K](double, double P) {
    return r * P * (1.0 - P / K);
  };
}

double logistic_exact(const LogisticModel& model, double t) {
  const auto& [r, K, P0] = model;
  return K / (1.0 + ((K - P0) / P0) * std::exp(-r * t));
}

RhsFunction temperature_rhs(const TemperatureModel& model) {
  const double omega = 2.0 * std::numbers::pi / model.period;
  return [k = model.k, A = model.A, B = model.B, omega](double t, double T) {
    const double ambient = A + B * std::sin(omega * t);
    return k * (ambient - T);
  };
}

double temperature_exact(const TemperatureModel& model, double t) {
  const auto& [k, T0, A, B, period] = model;
  const double omega = 2.0 * std::numbers::pi / period;
  const double gain = k * B / (k * k + omega * omega);
  // Transient constant fixed by T(0) = T0.
  const double c1 = T0 - A + gain * omega;
  return A + c1 * std::exp(-k * t) +
         gain * (k * std::sin(omega * t) - omega * std::cos(omega * t));
}

RhsFunction market_rhs(const MarketModel& model) {
  return [m = model](double t, double p) {
    const double demand = m.d0 - m.d1 * p;
    const double supply = m.s0 + m.s1 * p;
    return m.adjust * (demand - supply) / (m.p_c - m.lambda * t);
  };
}

double market_reference(const MarketModel& model, double t) {
  const double p_star = model.equilibrium_price();
  const double kappa = model.adjust * (model.d1 + model.s1) / model.lambda;
  const double s = std::abs(model.p_c - model.lambda * t) / std::abs(model.p_c);
  return p_star + (model.p0 - p_star) * std::pow(s, kappa);
}

std::string_view model_name(const CaseModel& model) {
  struct {
    std::string_view operator()(const LogisticModel&) const { return "logistic"; }
    std::string_view operator()(const TemperatureModel&) const {
      return "temperature";
    }
    std::string_view operator()(const MarketModel&) const { return "market"; }
  } visitor;
  return std::visit(visitor, model);
}

RhsFunction model_rhs(const CaseModel& model) {
  struct {
    RhsFunction operator()(const LogisticModel& m) const { return logistic_rhs(m); }
    RhsFunction operator()(const TemperatureModel& m) const {
      return temperature_rhs(m);
    }
    RhsFunction operator()(const MarketModel& m) const { return market_rhs(m); }
  } visitor;
  return std::visit(visitor, model);
}

double model_initial_value(const CaseModel& model) {
  struct {
    double operator()(const LogisticModel& m) const { return m.P0; }
    double operator()(const TemperatureModel& m) const { return m.T0; }
    double operator()(const MarketModel& m) const { return m.p0; }
  } visitor;
  return std::visit(visitor, model);
}

std::optional<std::function<double(double)>> model_exact(const CaseModel& model) {
  if (const auto* m = std::get_if<LogisticModel>(&model)) {
    return [m = *m](double t) { return logistic_exact(m, t); };
  }
  if (const auto* m = std::get_if<TemperatureModel>(&model)) {
    return [m = *m](double t) { return temperature_exact(m, t); };
  }
  return std::nullopt;
}

std::function<double(double)> model_reference_curve(const CaseModel& model) {
  if (const auto* m = std::get_if<MarketModel>(&model)) {
    return [m = *m](double t) { return market_reference(m, t); };
  }
  return *model_exact(model);
}

}  // namespace odebench
