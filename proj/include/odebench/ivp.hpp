#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace odebench {

/// Right-hand side f(x, y) of a scalar ODE dy/dx = f(x, y).
///
/// Must be deterministic and free of observable side effects; integrations
/// may evaluate the same function from several threads.
using RhsFunction = std::function<double(double x, double y)>;

/// Trajectories are cut off once |y| exceeds this bound.
inline constexpr double kBlowUpThreshold = 1e12;

struct IvpProblem {
  RhsFunction rhs;
  double x0 = 0.0;
  double y0 = 0.0;
  double x_end = 1.0;

  /// Throws InvalidConfig unless x0, y0, x_end are finite and x_end > x0.
  void validate() const;
};

struct Sample {
  double x;
  double y;
};

enum class Termination { Completed, BlowUp, StepUnderflow };

const char* to_string(Termination t);

struct TrajectoryStats {
  std::size_t rhs_evaluations = 0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

/// Accepted points of one integration run.
///
/// samples[0] is the initial condition and x strictly increases. On BlowUp or
/// StepUnderflow the list ends at the last finite sample and failure_x holds
/// the x from which the failing step was attempted.
struct Trajectory {
  std::vector<Sample> samples;
  Termination status = Termination::Completed;
  std::optional<double> failure_x;
  TrajectoryStats stats;

  bool completed() const { return status == Termination::Completed; }
  const Sample& back() const { return samples.back(); }
};

/// Heun corrector iteration settings. Absent means a single corrector pass.
struct CorrectorConfig {
  int max_iters = 10;
  double tol_percent = 1e-6;
};

enum class FixedMethod { Euler, Heun, Midpoint, Rk4 };

struct FixedStepConfig {
  double h = 0.1;
  std::optional<CorrectorConfig> corrector;

  void validate(const IvpProblem& problem) const;
};

/// Sample abscissae of a fixed-step run: x0 + i*h, then x_end. A span
/// within 1e-9 relative of a whole number of steps counts as exact.
std::vector<double> fixed_grid(const IvpProblem& problem, double h);

/// Advances `problem` from x0 to x_end with a constant step, shortening the
/// last step so the final sample lands on x_end.
///
/// Grid points are x0 + i*h (not accumulated), so a grid that divides the
/// interval produces exactly (x_end - x0)/h + 1 samples.
Trajectory integrate_fixed(const IvpProblem& problem, FixedMethod method,
                           const FixedStepConfig& config);

/// Leading-term local truncation error f'(x, y) h^2 / 2 of Euler's method,
/// with the total derivative f' = f_x + f f_y taken by central differences.
double estimate_local_truncation_error(const IvpProblem& problem, double x,
                                       double y, double h);

}  // namespace odebench
