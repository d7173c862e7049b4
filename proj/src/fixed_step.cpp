#include "odebench/fixed_step.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "odebench/errors.hpp"

namespace odebench {

namespace {

constexpr double kSixth = 1.0 / 6.0;
constexpr double kThird = 1.0 / 3.0;

// Applies the Heun corrector y + h (k1 + f(x + h, guess)) / 2.
double correct(const RhsFunction& rhs, double x, double y, double h, double k1,
               double guess) {
  const double k2 = checked_eval(rhs, x + h, guess);
  return y + h * (0.5 * k1 + 0.5 * k2);
}

StepResult plain(double y_next, int rhs_evaluations) {
  StepResult out;
  out.y_next = y_next;
  out.rhs_evaluations = rhs_evaluations;
  return out;
}

}  // namespace

double checked_eval(const RhsFunction& rhs, double x, double y) {
  const double v = rhs(x, y);
  if (!std::isfinite(v)) throw NonFiniteEvaluation(x, y);
  return v;
}

void ButcherTableau::validate() const {
  const std::size_t n = weights.size();
  if (n == 0) throw InvalidTableau("tableau has no stages");
  if (nodes.size() != n - 1) {
    throw InvalidTableau("expected " + std::to_string(n - 1) + " nodes, got " +
                         std::to_string(nodes.size()));
  }
  if (coupling.size() != n - 1) {
    throw InvalidTableau("expected " + std::to_string(n - 1) +
                         " coupling rows, got " +
                         std::to_string(coupling.size()));
  }
  for (std::size_t r = 0; r < coupling.size(); ++r) {
    if (coupling[r].size() != r + 1) {
      throw InvalidTableau("coupling row " + std::to_string(r) + " must have " +
                           std::to_string(r + 1) + " entries");
    }
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidTableau("weights sum to " + std::to_string(sum) +
                         ", expected 1");
  }
}

ButcherTableau ButcherTableau::euler() { return {{1.0}, {}, {}}; }

ButcherTableau ButcherTableau::heun() {
  return {{0.5, 0.5}, {1.0}, {{1.0}}};
}

ButcherTableau ButcherTableau::midpoint() {
  return {{0.0, 1.0}, {0.5}, {{0.5}}};
}

ButcherTableau ButcherTableau::rk4() {
  return {{kSixth, kThird, kThird, kSixth},
          {0.5, 0.5, 1.0},
          {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}}};
}

StepResult euler_step(const RhsFunction& rhs, double x, double y, double h) {
  const double k1 = checked_eval(rhs, x, y);
  return plain(y + h * k1, 1);
}

StepResult heun_step(const RhsFunction& rhs, double x, double y, double h,
                     const std::optional<CorrectorConfig>& corrector) {
  const double k1 = checked_eval(rhs, x, y);
  const double predictor = y + h * k1;
  StepResult out;
  out.y_next = correct(rhs, x, y, h, k1, predictor);
  out.rhs_evaluations = 2;
  if (!corrector) return out;

  double previous = out.y_next;
  for (int j = 0; j < corrector->max_iters; ++j) {
    const double current = correct(rhs, x, y, h, k1, previous);
    ++out.corrector_iterations;
    ++out.rhs_evaluations;
    out.y_next = current;
    if (current == 0.0) {
      out.zero_denominator = true;
      out.final_epsilon_a.reset();
      break;
    }
    const double eps = std::abs((current - previous) / current) * 100.0;
    out.final_epsilon_a = eps;
    if (eps <= corrector->tol_percent) break;
    previous = current;
  }
  return out;
}

HeunTrace heun_trace(const RhsFunction& rhs, double x, double y, double h,
                     const CorrectorConfig& corrector) {
  HeunTrace trace;
  const double k1 = checked_eval(rhs, x, y);
  trace.iterates.push_back(y + h * k1);
  trace.iterates.push_back(correct(rhs, x, y, h, k1, trace.iterates.back()));
  for (int j = 0; j < corrector.max_iters; ++j) {
    const double previous = trace.iterates.back();
    const double current = correct(rhs, x, y, h, k1, previous);
    trace.iterates.push_back(current);
    if (current == 0.0) {
      trace.zero_denominator = true;
      break;
    }
    const double eps = std::abs((current - previous) / current) * 100.0;
    trace.epsilon_a.push_back(eps);
    if (eps <= corrector.tol_percent) break;
  }
  return trace;
}

StepResult midpoint_step(const RhsFunction& rhs, double x, double y,
                         double h) {
  const double k1 = checked_eval(rhs, x, y);
  const double y_mid = y + h * (0.5 * k1);
  const double k2 = checked_eval(rhs, x + 0.5 * h, y_mid);
  return plain(y + h * k2, 2);
}

StepResult rk4_step(const RhsFunction& rhs, double x, double y, double h) {
  const double k1 = checked_eval(rhs, x, y);
  const double k2 = checked_eval(rhs, x + 0.5 * h, y + h * (0.5 * k1));
  const double k3 = checked_eval(rhs, x + 0.5 * h, y + h * (0.5 * k2));
  const double k4 = checked_eval(rhs, x + h, y + h * k3);
  // (h/6)(k1 + 2k2 + 2k3 + k4), written in increment-function form so the
  // tableau engine reproduces it exactly.
  const double phi = kSixth * k1 + kThird * k2 + kThird * k3 + kSixth * k4;
  return plain(y + h * phi, 4);
}

StepResult general_rk_step(const ButcherTableau& tableau,
                           const RhsFunction& rhs, double x, double y,
                           double h) {
  tableau.validate();
  const std::size_t n = tableau.stages();
  std::vector<double> k(n);
  k[0] = checked_eval(rhs, x, y);
  for (std::size_t i = 1; i < n; ++i) {
    const auto& q = tableau.coupling[i - 1];
    double slope = q[0] * k[0];
    for (std::size_t j = 1; j < i; ++j) slope += q[j] * k[j];
    // A single nonzero coupling term reduces to y + h*k exactly, matching
    // the dedicated steppers.
    k[i] = checked_eval(rhs, x + tableau.nodes[i - 1] * h, y + h * slope);
  }
  double phi = tableau.weights[0] * k[0];
  for (std::size_t j = 1; j < n; ++j) phi += tableau.weights[j] * k[j];
  return plain(y + h * phi, static_cast<int>(n));
}

StepResult fixed_step(FixedMethod method, const RhsFunction& rhs, double x,
                      double y, double h,
                      const std::optional<CorrectorConfig>& corrector) {
  switch (method) {
    case FixedMethod::Euler:
      return euler_step(rhs, x, y, h);
    case FixedMethod::Heun:
      return heun_step(rhs, x, y, h, corrector);
    case FixedMethod::Midpoint:
      return midpoint_step(rhs, x, y, h);
    case FixedMethod::Rk4:
      return rk4_step(rhs, x, y, h);
  }
  throw InvalidConfig("unknown fixed-step method");
}

std::string_view to_string(FixedMethod method) {
  switch (method) {
    case FixedMethod::Euler:
      return "euler";
    case FixedMethod::Heun:
      return "heun";
    case FixedMethod::Midpoint:
      return "midpoint";
    case FixedMethod::Rk4:
      return "rk4";
  }
  return "?";
}

std::optional<FixedMethod> parse_fixed_method(std::string_view name) {
  if (name == "euler") return FixedMethod::Euler;
  if (name == "heun") return FixedMethod::Heun;
  if (name == "midpoint") return FixedMethod::Midpoint;
  if (name == "rk4") return FixedMethod::Rk4;
  return std::nullopt;
}

}  // namespace odebench
