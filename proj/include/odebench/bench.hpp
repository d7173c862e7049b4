#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odebench/error_analysis.hpp"
#include "odebench/scenario.hpp"

namespace odebench::bench {

struct SolverRun {
  Solver solver;
  Trajectory trajectory;
  std::vector<std::pair<ReferenceKind, ErrorReport>> errors;
  double wall_ms = 0.0;
};

struct RunArtifact {
  std::string scenario;
  std::vector<SolverRun> runs;
  std::vector<ReferenceSeries> references;
};

/// Integrates every selected solver (in parallel) and scores each against
/// every loaded reference. `solvers` overrides the scenario's own selection
/// when non-empty.
RunArtifact run_scenario(const Scenario& scenario,
                         std::span<const Solver> solvers = {});

/// Rendered output files keyed by file name.
using Files = std::vector<std::pair<std::string, std::string>>;

/// trajectories.csv, errors.csv, costs.csv, plot.svg and one
/// trajectory_<solver>.csv per solver. wall_ms is left empty unless
/// include_timing is set, which keeps the CSVs byte-reproducible.
Files render_run(const Scenario& scenario, const RunArtifact& artifact,
                 bool include_timing);

/// Models with a closed-form solution for the convergence study.
struct ConvergenceModel {
  std::string name;
  IvpProblem problem;
  std::function<double(double)> exact;
};

/// logistic, temperature (shipped defaults) or exponential (y' = y on [0, 1]).
/// Returns nullopt for names without an oracle, including market.
std::optional<ConvergenceModel> convergence_model(const std::string& name);

/// orders.csv with columns stepper,h,error,observed_order.
std::string convergence_csv(const ConvergenceModel& model,
                            std::span<const FixedMethod> steppers,
                            std::span<const double> h_values);

inline constexpr std::uint64_t kFixtureSeed = 20240917;
inline constexpr double kFixtureNoise = 0.02;

/// Synthetic reference files for the three case studies:
/// <model>_experimental.csv (closed form with seeded uniform relative noise
/// of amplitude kFixtureNoise) and <model>_empirical.csv (noise-free).
Files make_fixtures();

/// Writes every file under dir, creating it if needed. Throws
/// std::runtime_error when the directory or a file cannot be written.
void write_files(const std::filesystem::path& dir, const Files& files);

}  // namespace odebench::bench
