#include "odebench/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "odebench/errors.hpp"

namespace odebench {

std::string_view to_string(ReferenceKind kind) {
  return kind == ReferenceKind::Experimental ? "experimental" : "empirical";
}

void ReferenceSeries::validate() const {
  if (points.size() < 2) {
    throw InvalidConfig("reference series needs at least two points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].t) || !std::isfinite(points[i].value)) {
      throw InvalidConfig("reference point " + std::to_string(i) +
                          " is not finite");
    }
    if (i > 0 && !(points[i].t > points[i - 1].t)) {
      throw InvalidConfig("reference t must strictly increase (point " +
                          std::to_string(i) + ")");
    }
  }
}

Alignment align_series(const Trajectory& trajectory,
                       const ReferenceSeries& reference) {
  const auto& samples = trajectory.samples;
  if (samples.empty()) throw NoOverlap("trajectory has no samples");

  const double lo = samples.front().x;
  const double hi = samples.back().x;
  Alignment out;
  for (const auto& [t, value] : reference.points) {
    if (t < lo) continue;
    if (t > hi) {
      if (!trajectory.completed()) out.blowup_truncated = true;
      continue;
    }
    const auto upper = std::lower_bound(
        samples.begin(), samples.end(), t,
        [](const Sample& s, double x) { return s.x < x; });
    double estimate = upper->y;
    if (upper->x != t) {
      const auto lower = std::prev(upper);
      const double w = (t - lower->x) / (upper->x - lower->x);
      estimate = lower->y + w * (upper->y - lower->y);
    }
    out.pairs.push_back({t, value, estimate});
  }
  if (out.pairs.empty() && !out.blowup_truncated) {
    throw NoOverlap("reference range does not overlap the trajectory");
  }
  return out;
}

double error_wrt_reference(std::span<const AlignedPair> pairs) {
  if (pairs.empty()) throw InvalidConfig("no pairs to compare");
  double diff = 0.0;
  double ref = 0.0;
  for (const auto& p : pairs) {
    diff += p.reference - p.estimate;
    ref += p.reference;
  }
  if (ref == 0.0) throw ZeroReferenceSum("sum of reference values is zero");
  return diff / ref;
}

double mean_abs_relative_error(std::span<const AlignedPair> pairs) {
  if (pairs.empty()) throw InvalidConfig("no pairs to compare");
  double diff = 0.0;
  double ref = 0.0;
  for (const auto& p : pairs) {
    diff += std::abs(p.reference - p.estimate);
    ref += std::abs(p.reference);
  }
  if (ref == 0.0) throw ZeroReferenceSum("sum of reference values is zero");
  return diff / ref;
}

ErrorReport compare(const Trajectory& trajectory,
                    const ReferenceSeries& reference) {
  const Alignment aligned = align_series(trajectory, reference);
  ErrorReport report;
  report.blowup_truncated = aligned.blowup_truncated;
  report.n_points_compared = aligned.pairs.size();
  if (aligned.pairs.empty()) {
    report.signed_relative = std::numeric_limits<double>::quiet_NaN();
    report.mean_abs_relative = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.signed_relative = error_wrt_reference(aligned.pairs);
  report.mean_abs_relative = mean_abs_relative_error(aligned.pairs);
  return report;
}

std::vector<OrderPoint> estimate_convergence_order(
    const IvpProblem& problem, const std::function<double(double)>& exact,
    FixedMethod method, std::span<const double> h_values,
    const std::optional<CorrectorConfig>& corrector) {
  if (h_values.size() < 2) {
    throw InvalidConfig("need at least two step sizes");
  }
  for (std::size_t i = 1; i < h_values.size(); ++i) {
    if (!(h_values[i] < h_values[i - 1])) {
      throw InvalidConfig("step sizes must be strictly decreasing");
    }
  }

  const double y_exact = exact(problem.x_end);
  std::vector<OrderPoint> out;
  bool any_order = false;
  for (const double h : h_values) {
    const Trajectory traj =
        integrate_fixed(problem, method, FixedStepConfig{h, corrector});
    if (!traj.completed()) {
      throw InvalidConfig("integration failed before x_end at h=" +
                          std::to_string(h));
    }
    OrderPoint point{h, std::abs(traj.back().y - y_exact), std::nullopt};
    if (!out.empty()) {
      const OrderPoint& prev = out.back();
      if (prev.global_error > 0.0 && point.global_error > 0.0) {
        point.observed_order = std::log(prev.global_error / point.global_error) /
                               std::log(prev.h / point.h);
        any_order = true;
      }
    }
    out.push_back(point);
  }
  if (!any_order) {
    throw DegenerateError(
        "global error is zero at every step size; order is undefined");
  }
  return out;
}

}  // namespace odebench
