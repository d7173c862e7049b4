#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "odebench/ivp.hpp"

namespace odebench {

/// Explicit Runge-Kutta coefficients in increment-function form:
///
///   k_1 = f(x, y)
///   k_i = f(x + p_{i-1} h, y + h * sum_{j<i} q_{i-1,j} k_j)
///   y_next = y + h * sum_i a_i k_i
///
/// Row r of `coupling` holds the r+1 coefficients feeding stage r+2.
struct ButcherTableau {
  std::vector<double> weights;                 // a_1..a_n
  std::vector<double> nodes;                   // p_1..p_{n-1}
  std::vector<std::vector<double>> coupling;   // q, lower triangular

  std::size_t stages() const { return weights.size(); }

  /// Throws InvalidTableau on shape mismatch or sum(a) != 1.
  void validate() const;

  static ButcherTableau euler();
  static ButcherTableau heun();
  static ButcherTableau midpoint();
  static ButcherTableau rk4();
};

struct StepResult {
  double y_next = 0.0;
  int rhs_evaluations = 0;
  int corrector_iterations = 0;
  /// |eps_a| in percent after the last corrector re-application.
  std::optional<double> final_epsilon_a;
  /// Set when a corrector iterate was exactly zero, leaving eps_a undefined.
  bool zero_denominator = false;
};

StepResult euler_step(const RhsFunction& rhs, double x, double y, double h);

StepResult heun_step(const RhsFunction& rhs, double x, double y, double h,
                     const std::optional<CorrectorConfig>& corrector = {});

StepResult midpoint_step(const RhsFunction& rhs, double x, double y, double h);

StepResult rk4_step(const RhsFunction& rhs, double x, double y, double h);

StepResult general_rk_step(const ButcherTableau& tableau,
                           const RhsFunction& rhs, double x, double y,
                           double h);

/// Every corrector iterate of one Heun step: iterates[0] is the predictor,
/// iterates[1] the single-pass corrector, and epsilon_a[j] the percent
/// change between iterates[j + 1] and iterates[j + 2].
struct HeunTrace {
  std::vector<double> iterates;
  std::vector<double> epsilon_a;
  bool zero_denominator = false;
};

HeunTrace heun_trace(const RhsFunction& rhs, double x, double y, double h,
                     const CorrectorConfig& corrector);

StepResult fixed_step(FixedMethod method, const RhsFunction& rhs, double x,
                      double y, double h,
                      const std::optional<CorrectorConfig>& corrector = {});

std::string_view to_string(FixedMethod method);
std::optional<FixedMethod> parse_fixed_method(std::string_view name);

/// Evaluates rhs, throwing NonFiniteEvaluation on NaN or infinity.
double checked_eval(const RhsFunction& rhs, double x, double y);

}  // namespace odebench
