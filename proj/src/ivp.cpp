#include "odebench/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "odebench/errors.hpp"
#include "odebench/fixed_step.hpp"

namespace odebench {

void IvpProblem::validate() const {
  if (!rhs) throw InvalidConfig("problem has no right-hand side");
  if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(x_end)) {
    throw InvalidConfig("x0, y0 and x_end must be finite");
  }
  if (!(x_end > x0)) throw InvalidConfig("interval is empty: x_end <= x0");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Completed:
      return "completed";
    case Termination::BlowUp:
      return "blowup";
    case Termination::StepUnderflow:
      return "step_underflow";
  }
  return "?";
}

void FixedStepConfig::validate(const IvpProblem& problem) const {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidConfig("step size h must be positive");
  }
  if (h > problem.x_end - problem.x0) {
    throw InvalidConfig("step size h exceeds the integration interval");
  }
  if (corrector) {
    if (!(corrector->tol_percent > 0.0)) {
      throw InvalidConfig("corrector tol_percent must be positive");
    }
    if (corrector->max_iters < 0) {
      throw InvalidConfig("corrector max_iters must be non-negative");
    }
  }
}

namespace {

// Number of steps needed to cover `span` with step `h`. A ratio within a few
// ulps of an integer counts as exact so 20/0.1 gives 200 steps, not 201.
std::size_t step_count(double span, double h) {
  const double ratio = span / h;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

}  // namespace

std::vector<double> fixed_grid(const IvpProblem& problem, double h) {
  const std::size_t n = step_count(problem.x_end - problem.x0, h);
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(problem.x0 + static_cast<double>(i) * h);
  }
  grid.push_back(problem.x_end);
  return grid;
}

Trajectory integrate_fixed(const IvpProblem& problem, FixedMethod method,
                           const FixedStepConfig& config) {
  problem.validate();
  config.validate(problem);

  std::size_t calls = 0;
  const RhsFunction counted = [&](double x, double y) {
    ++calls;
    return problem.rhs(x, y);
  };

  const std::vector<double> grid = fixed_grid(problem, config.h);
  const std::size_t n = grid.size() - 1;
  Trajectory traj;
  traj.samples.reserve(grid.size());
  traj.samples.push_back({problem.x0, problem.y0});

  double y = problem.y0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    const double x_next = grid[i + 1];
    const double h = (i + 1 == n) ? problem.x_end - x : config.h;

    double y_next = 0.0;
    try {
      y_next = fixed_step(method, counted, x, y, h, config.corrector).y_next;
    } catch (const NonFiniteEvaluation&) {
      y_next = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(y_next) || std::abs(y_next) > kBlowUpThreshold) {
      traj.status = Termination::BlowUp;
      traj.failure_x = x;
      break;
    }
    y = y_next;
    traj.samples.push_back({x_next, y});
    ++traj.stats.steps_accepted;
  }
  traj.stats.rhs_evaluations = calls;
  return traj;
}

double estimate_local_truncation_error(const IvpProblem& problem, double x,
                                       double y, double h) {
  if (!(h > 0.0)) throw InvalidConfig("h must be positive");
  const double dx = std::max(1e-6, 1e-6 * std::abs(x));
  const double dy = std::max(1e-6, 1e-6 * std::abs(y));
  const RhsFunction& f = problem.rhs;

  const double f0 = checked_eval(f, x, y);
  const double fx =
      (checked_eval(f, x + dx, y) - checked_eval(f, x - dx, y)) / (2.0 * dx);
  const double fy =
      (checked_eval(f, x, y + dy) - checked_eval(f, x, y - dy)) / (2.0 * dy);
  const double total_derivative = fx + f0 * fy;
  return total_derivative / 2.0 * h * h;
}

}  // namespace odebench
