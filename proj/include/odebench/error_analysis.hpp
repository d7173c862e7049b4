#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "odebench/ivp.hpp"

namespace odebench {

enum class ReferenceKind { Experimental, Empirical };

std::string_view to_string(ReferenceKind kind);

struct ReferencePoint {
  double t;
  double value;
};

struct ReferenceSeries {
  ReferenceKind kind = ReferenceKind::Experimental;
  std::vector<ReferencePoint> points;

  /// Throws InvalidConfig unless t strictly increases, there are at least
  /// two points, and every value is finite.
  void validate() const;
};

struct AlignedPair {
  double t;
  double reference;
  double estimate;
};

struct Alignment {
  std::vector<AlignedPair> pairs;
  /// Reference points past a failed trajectory's last sample were dropped.
  bool blowup_truncated = false;
};

/// Pairs each reference point inside the trajectory's x-range with a
/// linearly interpolated estimate. Throws NoOverlap when nothing pairs up and
/// the trajectory did not fail.
Alignment align_series(const Trajectory& trajectory,
                       const ReferenceSeries& reference);

/// sum(R_i - X_i) / sum(R_i). Signed, so over- and underestimates cancel.
double error_wrt_reference(std::span<const AlignedPair> pairs);

/// sum|R_i - X_i| / sum|R_i|.
double mean_abs_relative_error(std::span<const AlignedPair> pairs);

struct ErrorReport {
  double signed_relative = 0.0;
  double mean_abs_relative = 0.0;
  std::size_t n_points_compared = 0;
  bool blowup_truncated = false;
};

/// Aligns and scores a trajectory. With no comparable points (failure at
/// the first sample) both error fields are NaN.
ErrorReport compare(const Trajectory& trajectory,
                    const ReferenceSeries& reference);

struct OrderPoint {
  double h;
  double global_error;
  /// Observed order against the previous (larger) h; absent for the first
  /// entry and whenever either error is exactly zero.
  std::optional<double> observed_order;
};

/// Runs `method` at each step size and measures |y(x_end) - exact(x_end)|.
/// Throws DegenerateError when no order can be computed because every error
/// underflowed to zero.
std::vector<OrderPoint> estimate_convergence_order(
    const IvpProblem& problem, const std::function<double(double)>& exact,
    FixedMethod method, std::span<const double> h_values,
    const std::optional<CorrectorConfig>& corrector = {});

}  // namespace odebench
