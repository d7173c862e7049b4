#include "odebench/adaptive.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "odebench/errors.hpp"
#include "odebench/fixed_step.hpp"

namespace odebench {

namespace {

// Dormand & Prince (1980) coefficients.
constexpr std::array<double, 7> kNodes = {0.0,       1.0 / 5.0, 3.0 / 10.0,
                                          4.0 / 5.0, 8.0 / 9.0, 1.0,
                                          1.0};

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;

constexpr std::array<double, 7> kB5 = {35.0 / 384.0,     0.0,
                                       500.0 / 1113.0,   125.0 / 192.0,
                                       -2187.0 / 6784.0, 11.0 / 84.0,
                                       0.0};
constexpr std::array<double, 7> kB4 = {5179.0 / 57600.0,    0.0,
                                       7571.0 / 16695.0,    393.0 / 640.0,
                                       -92097.0 / 339200.0, 187.0 / 2100.0,
                                       1.0 / 40.0};

double weighted(const std::array<double, 7>& b, const std::array<double, 7>& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += b[i] * k[i];
  return s;
}

}  // namespace

AdaptiveConfig AdaptiveConfig::for_problem(const IvpProblem& problem) {
  const double span = problem.x_end - problem.x0;
  AdaptiveConfig c;
  c.h_max = span;
  c.h_initial = span / 100.0;
  c.h_min = span * 1e-10;
  return c;
}

void AdaptiveConfig::validate() const {
  if (!(h_min > 0.0 && h_min <= h_initial && h_initial <= h_max)) {
    throw InvalidConfig("require 0 < h_min <= h_initial <= h_max");
  }
  if (!(rel_tol > 0.0)) throw InvalidConfig("rel_tol must be positive");
  if (!(abs_tol >= 0.0)) throw InvalidConfig("abs_tol must be non-negative");
  if (!(safety > 0.0 && safety < 1.0)) {
    throw InvalidConfig("safety must lie in (0, 1)");
  }
  if (!(shrink_limit > 0.0 && shrink_limit < 1.0 && growth_limit > 1.0)) {
    throw InvalidConfig("require 0 < shrink_limit < 1 < growth_limit");
  }
}

StepOutcome dopri45_step(const RhsFunction& rhs, double x, double y, double h,
                         const AdaptiveConfig& config) {
  StepOutcome out;
  out.h_used = h;

  std::array<double, 7> k{};
  try {
    k[0] = checked_eval(rhs, x, y);
    ++out.rhs_evaluations;
    k[1] = checked_eval(rhs, x + kNodes[1] * h, y + h * (kA21 * k[0]));
    ++out.rhs_evaluations;
    k[2] = checked_eval(rhs, x + kNodes[2] * h,
                        y + h * (kA31 * k[0] + kA32 * k[1]));
    ++out.rhs_evaluations;
    k[3] = checked_eval(rhs, x + kNodes[3] * h,
                        y + h * (kA41 * k[0] + kA42 * k[1] + kA43 * k[2]));
    ++out.rhs_evaluations;
    k[4] = checked_eval(
        rhs, x + kNodes[4] * h,
        y + h * (kA51 * k[0] + kA52 * k[1] + kA53 * k[2] + kA54 * k[3]));
    ++out.rhs_evaluations;
    k[5] = checked_eval(rhs, x + kNodes[5] * h,
                        y + h * (kA61 * k[0] + kA62 * k[1] + kA63 * k[2] +
                                 kA64 * k[3] + kA65 * k[4]));
    ++out.rhs_evaluations;
    out.y5 = y + h * weighted(kB5, k);
    k[6] = checked_eval(rhs, x + h, out.y5);
    ++out.rhs_evaluations;
    out.y4 = y + h * weighted(kB4, k);

    const double scale =
        config.abs_tol + config.rel_tol * std::max(std::abs(y), std::abs(out.y5));
    out.err_est = std::abs(out.y5 - out.y4) / scale;
  } catch (const NonFiniteEvaluation&) {
    out.err_est = std::numeric_limits<double>::infinity();
  }
  if (!std::isfinite(out.err_est)) {
    out.err_est = std::numeric_limits<double>::infinity();
  }

  out.accepted = out.err_est <= 1.0;
  double factor = 0.0;
  if (out.err_est == 0.0) {
    factor = config.growth_limit;
  } else if (std::isinf(out.err_est)) {
    factor = config.shrink_limit;
  } else {
    factor = std::clamp(config.safety * std::pow(out.err_est, -0.2),
                        config.shrink_limit, config.growth_limit);
  }
  const double raw = h * factor;
  out.below_min = raw < config.h_min;
  out.h_next = std::clamp(raw, config.h_min, config.h_max);
  return out;
}

Trajectory integrate_adaptive(const IvpProblem& problem,
                              const AdaptiveConfig& config) {
  problem.validate();
  config.validate();

  std::size_t calls = 0;
  const RhsFunction counted = [&](double x, double y) {
    ++calls;
    return problem.rhs(x, y);
  };

  Trajectory traj;
  traj.samples.push_back({problem.x0, problem.y0});
  double x = problem.x0;
  double y = problem.y0;
  double h = config.h_initial;

  while (x < problem.x_end) {
    const double remaining = problem.x_end - x;
    const bool landing = h >= remaining;
    const double h_try = landing ? remaining : h;
    const StepOutcome step = dopri45_step(counted, x, y, h_try, config);

    if (!step.accepted) {
      ++traj.stats.steps_rejected;
      if (step.below_min) {
        traj.status = Termination::StepUnderflow;
        traj.failure_x = x;
        break;
      }
      h = step.h_next;
      continue;
    }

    if (std::abs(step.y5) > kBlowUpThreshold) {
      traj.status = Termination::BlowUp;
      traj.failure_x = x;
      break;
    }
    const double x_new = landing ? problem.x_end : x + h_try;
    if (!(x_new > x)) {
      traj.status = Termination::StepUnderflow;
      traj.failure_x = x;
      break;
    }
    x = x_new;
    y = step.y5;
    traj.samples.push_back({x, y});
    ++traj.stats.steps_accepted;
    if (!landing) h = step.h_next;
  }
  traj.stats.rhs_evaluations = calls;
  return traj;
}

}  // namespace odebench
