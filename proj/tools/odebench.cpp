// odebench: run the case-study scenarios, convergence studies and fixture
// generation from the command line.
//
//   odebench run SCENARIO --out DIR [--solvers euler,heun,...] [--timing]
//   odebench convergence --model NAME --steppers LIST --h LIST --out DIR
//   odebench fixtures --out DIR
//
// Exit codes: 0 success (solver blow-up included), 2 invalid input,
// 3 output directory not writable.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odebench/bench.hpp"
#include "odebench/csv.hpp"
#include "odebench/errors.hpp"
#include "odebench/fixed_step.hpp"
#include "odebench/scenario.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitOutput = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            const std::string& solver_filter, bool timing) {
  odebench::Scenario scenario;
  std::vector<odebench::Solver> solvers;
  odebench::bench::RunArtifact artifact;
  try {
    scenario = odebench::load_scenario(scenario_path);
    if (!solver_filter.empty()) solvers = odebench::parse_solver_list(solver_filter);
    artifact = odebench::bench::run_scenario(scenario, solvers);
  } catch (const std::exception& e) {
    std::cerr << "odebench run: " << scenario_path << ": " << e.what() << "\n";
    return kExitInput;
  }

  const auto files = odebench::bench::render_run(scenario, artifact, timing);
  try {
    odebench::bench::write_files(out_dir, files);
  } catch (const std::exception& e) {
    std::cerr << "odebench run: " << e.what() << "\n";
    return kExitOutput;
  }

  for (const auto& run : artifact.runs) {
    const auto& tr = run.trajectory;
    std::printf("%-9s %-15s rhs_evals=%zu accepted=%zu rejected=%zu\n",
                std::string(odebench::to_string(run.solver)).c_str(),
                odebench::to_string(tr.status), tr.stats.rhs_evaluations,
                tr.stats.steps_accepted, tr.stats.steps_rejected);
  }
  return 0;
}

int cmd_convergence(const std::string& model_name, const std::string& steppers,
                    const std::string& h_list, const std::string& out_dir) {
  std::string csv;
  try {
    const auto model = odebench::bench::convergence_model(model_name);
    if (!model) {
      throw odebench::ValidationError(
          "model", "'" + model_name +
                       "' has no analytic solution (use logistic, temperature "
                       "or exponential)");
    }
    std::vector<odebench::FixedMethod> methods;
    for (const auto& name : split_list(steppers)) {
      const auto m = odebench::parse_fixed_method(name);
      if (!m) {
        throw odebench::ValidationError("steppers",
                                        "unknown fixed-step method '" + name + "'");
      }
      methods.push_back(*m);
    }
    std::vector<double> hs;
    for (const auto& h : split_list(h_list)) hs.push_back(odebench::csv::parse_real(h, 0));
    csv = odebench::bench::convergence_csv(*model, methods, hs);
  } catch (const std::exception& e) {
    std::cerr << "odebench convergence: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    odebench::bench::write_files(out_dir, {{"orders.csv", csv}});
  } catch (const std::exception& e) {
    std::cerr << "odebench convergence: " << e.what() << "\n";
    return kExitOutput;
  }
  std::cout << csv;
  return 0;
}

int cmd_fixtures(const std::string& out_dir) {
  try {
    odebench::bench::write_files(out_dir, odebench::bench::make_fixtures());
  } catch (const std::exception& e) {
    std::cerr << "odebench fixtures: " << e.what() << "\n";
    return kExitOutput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare explicit ODE solvers on case-study scenarios"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string solver_filter;
  bool timing = false;
  auto* run = app.add_subcommand("run", "Integrate a scenario with each solver");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--solvers", solver_filter,
                  "Comma-separated subset of euler,heun,midpoint,rk4,rk45");
  run->add_flag("--timing", timing, "Record wall-clock time in costs.csv");

  std::string model;
  std::string steppers;
  std::string h_list;
  auto* conv = app.add_subcommand("convergence", "Measure observed convergence orders");
  conv->set_help_flag("--help", "Print this help message and exit");
  conv->add_option("--model", model, "logistic, temperature or exponential")->required();
  conv->add_option("--steppers", steppers, "Comma-separated fixed-step methods")->required();
  conv->add_option("--h", h_list, "Comma-separated, strictly decreasing step sizes")
      ->required();
  conv->add_option("--out", out_dir, "Output directory")->required();

  auto* fixtures = app.add_subcommand("fixtures", "Regenerate synthetic reference CSVs");
  fixtures->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*run) return cmd_run(scenario_path, out_dir, solver_filter, timing);
  if (*conv) return cmd_convergence(model, steppers, h_list, out_dir);
  return cmd_fixtures(out_dir);
}
