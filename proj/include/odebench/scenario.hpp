#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odebench/adaptive.hpp"
#include "odebench/error_analysis.hpp"
#include "odebench/ivp.hpp"
#include "odebench/models.hpp"

namespace odebench {

enum class Solver { Euler, Heun, Midpoint, Rk4, Rk45 };

inline constexpr Solver kAllSolvers[] = {Solver::Euler, Solver::Heun,
                                         Solver::Midpoint, Solver::Rk4,
                                         Solver::Rk45};

std::string_view to_string(Solver solver);
std::optional<Solver> parse_solver(std::string_view name);
/// Fixed-step method behind a solver; empty for rk45.
std::optional<FixedMethod> fixed_method(Solver solver);

/// Splits "euler,rk4" into solvers. Throws ValidationError naming the first
/// unknown or repeated entry.
std::vector<Solver> parse_solver_list(std::string_view list);

struct ReferenceSpec {
  ReferenceKind kind;
  std::filesystem::path path;
};

/// A validated case-study run: model, interval, step settings, solver
/// selection and reference files. Time starts at t = 0.
struct Scenario {
  std::string name;
  CaseModel model;
  IvpProblem problem;
  FixedStepConfig fixed;
  AdaptiveConfig adaptive;
  std::vector<Solver> solvers;
  std::vector<ReferenceSpec> references;
};

/// Parses a scenario document:
///
///   [problem]   name (string), model (logistic|temperature|market),
///               t_end, h
///   [model]     parameters of the chosen model; omitted ones keep defaults
///   [solvers]   use (array of names), rel_tol, abs_tol,
///               heun_corrector_max_iters, heun_corrector_tol_percent
///   [reference] experimental, empirical (CSV paths, relative to base_dir)
///
/// Throws ParseError for malformed text and ValidationError for unknown keys
/// or out-of-range values.
Scenario parse_scenario(std::string_view text,
                        const std::filesystem::path& base_dir = {});

Scenario load_scenario(const std::filesystem::path& path);

}  // namespace odebench
