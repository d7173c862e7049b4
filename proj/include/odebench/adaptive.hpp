#pragma once

#include "odebench/ivp.hpp"

namespace odebench {

/// Step-size control settings for the embedded Dormand-Prince 5(4) pair.
struct AdaptiveConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  double h_initial = 1e-2;
  double h_min = 1e-12;
  double h_max = 1.0;
  double safety = 0.9;
  double growth_limit = 5.0;
  double shrink_limit = 0.2;

  /// Default tolerances with step bounds scaled to the problem interval:
  /// h_max = span, h_initial = span / 100, h_min = span * 1e-10.
  static AdaptiveConfig for_problem(const IvpProblem& problem);

  void validate() const;
};

struct StepOutcome {
  bool accepted = false;
  double y5 = 0.0;
  double y4 = 0.0;
  /// |y5 - y4| / (abs_tol + rel_tol * max(|y|, |y5|)); infinite when a stage
  /// evaluation was non-finite.
  double err_est = 0.0;
  double h_used = 0.0;
  double h_next = 0.0;
  /// The controller wanted a step below h_min (h_next was clamped up).
  bool below_min = false;
  int rhs_evaluations = 0;
};

/// One Dormand-Prince step from (x, y) with step h. Stage 7 is evaluated
/// explicitly rather than reused from the previous step.
StepOutcome dopri45_step(const RhsFunction& rhs, double x, double y, double h,
                         const AdaptiveConfig& config);

/// Integrates with error-controlled steps, advancing with the 5th-order
/// estimate. Stops with StepUnderflow when a rejection would push the step
/// below h_min, and with BlowUp when an accepted value exceeds
/// kBlowUpThreshold.
Trajectory integrate_adaptive(const IvpProblem& problem,
                              const AdaptiveConfig& config);

}  // namespace odebench
