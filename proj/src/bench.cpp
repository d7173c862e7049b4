#include "odebench/bench.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

#include "odebench/adaptive.hpp"
#include "odebench/csv.hpp"
#include "odebench/fixed_step.hpp"
#include "odebench/svg_plot.hpp"

namespace odebench::bench {

namespace {

using csv::format_real;

const char* solver_color(Solver s) {
  switch (s) {
    case Solver::Euler:
      return "#d62728";
    case Solver::Heun:
      return "#1f77b4";
    case Solver::Midpoint:
      return "#2ca02c";
    case Solver::Rk4:
      return "#9467bd";
    case Solver::Rk45:
      return "#ff7f0e";
  }
  return "black";
}

const char* reference_color(ReferenceKind k) {
  return k == ReferenceKind::Experimental ? "black" : "#7f7f7f";
}

SolverRun run_one(const Scenario& sc, Solver solver) {
  const auto start = std::chrono::steady_clock::now();
  SolverRun run{solver, {}, {}, 0.0};
  if (const auto method = fixed_method(solver)) {
    run.trajectory = integrate_fixed(sc.problem, *method, sc.fixed);
  } else {
    run.trajectory = integrate_adaptive(sc.problem, sc.adaptive);
  }
  run.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return run;
}

// Value of a piecewise-linear trajectory at t, or NaN outside its range.
double interpolate(const std::vector<Sample>& s, double t) {
  if (s.empty() || t < s.front().x || t > s.back().x) return NAN;
  const auto upper = std::lower_bound(
      s.begin(), s.end(), t, [](const Sample& a, double x) { return a.x < x; });
  if (upper->x == t) return upper->y;
  const auto lower = std::prev(upper);
  const double w = (t - lower->x) / (upper->x - lower->x);
  return lower->y + w * (upper->y - lower->y);
}

std::string cell(double v) { return std::isfinite(v) ? format_real(v) : ""; }

// Reference value recorded at exactly this t (to 1e-9 relative), else NaN.
double reference_at(const ReferenceSeries& ref, double t) {
  const auto it = std::lower_bound(
      ref.points.begin(), ref.points.end(), t - 1e-9 * std::max(1.0, std::abs(t)),
      [](const ReferencePoint& p, double x) { return p.t < x; });
  if (it != ref.points.end() &&
      std::abs(it->t - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
    return it->value;
  }
  return NAN;
}

}  // namespace

RunArtifact run_scenario(const Scenario& scenario,
                         std::span<const Solver> solvers) {
  RunArtifact art;
  art.scenario = scenario.name;
  for (const auto& spec : scenario.references) {
    art.references.push_back(csv::read_reference(spec.path, spec.kind));
  }

  const std::vector<Solver> selected =
      solvers.empty() ? scenario.solvers
                      : std::vector<Solver>(solvers.begin(), solvers.end());
  std::vector<std::future<SolverRun>> pending;
  for (const Solver s : selected) {
    pending.push_back(std::async(std::launch::async, run_one, std::cref(scenario), s));
  }
  for (auto& f : pending) {
    SolverRun run = f.get();
    for (const auto& ref : art.references) {
      run.errors.emplace_back(ref.kind, compare(run.trajectory, ref));
    }
    art.runs.push_back(std::move(run));
  }
  return art;
}

Files render_run(const Scenario& sc, const RunArtifact& art, bool include_timing) {
  Files files;

  const std::vector<double> grid = fixed_grid(sc.problem, sc.fixed.h);
  csv::Table traj;
  traj.header.push_back("t");
  for (const auto& run : art.runs) traj.header.emplace_back(to_string(run.solver));
  for (const auto& ref : art.references) traj.header.emplace_back(to_string(ref.kind));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{format_real(grid[i])};
    for (const auto& run : art.runs) {
      const auto& s = run.trajectory.samples;
      // Fixed-step trajectories sit on the grid; adaptive ones are interpolated.
      const bool on_grid = fixed_method(run.solver).has_value();
      row.push_back(on_grid ? (i < s.size() ? cell(s[i].y) : "")
                            : cell(interpolate(s, grid[i])));
    }
    for (const auto& ref : art.references) row.push_back(cell(reference_at(ref, grid[i])));
    traj.rows.push_back(std::move(row));
  }
  files.emplace_back("trajectories.csv", csv::write(traj));

  for (const auto& run : art.runs) {
    csv::Table t;
    t.comments.push_back("solver=" + std::string(to_string(run.solver)) +
                         " status=" + to_string(run.trajectory.status) +
                         (run.trajectory.failure_x
                              ? " failure_t=" + format_real(*run.trajectory.failure_x)
                              : std::string()));
    t.header = {"t", "value"};
    for (const auto& [x, y] : run.trajectory.samples) {
      t.rows.push_back({format_real(x), format_real(y)});
    }
    files.emplace_back("trajectory_" + std::string(to_string(run.solver)) + ".csv",
                       csv::write(t));
  }

  csv::Table errors;
  errors.header = {"solver",           "reference", "signed_relative",
                   "mean_abs_relative", "n_points",  "blowup_truncated"};
  for (const auto& run : art.runs) {
    for (const auto& [kind, report] : run.errors) {
      errors.rows.push_back({std::string(to_string(run.solver)),
                             std::string(to_string(kind)),
                             format_real(report.signed_relative),
                             format_real(report.mean_abs_relative),
                             std::to_string(report.n_points_compared),
                             report.blowup_truncated ? "1" : "0"});
    }
  }
  files.emplace_back("errors.csv", csv::write(errors));

  csv::Table costs;
  costs.header = {"solver", "rhs_evaluations", "steps_accepted", "steps_rejected",
                  "status", "failure_t",       "wall_ms"};
  for (const auto& run : art.runs) {
    const auto& tr = run.trajectory;
    costs.rows.push_back({std::string(to_string(run.solver)),
                          std::to_string(tr.stats.rhs_evaluations),
                          std::to_string(tr.stats.steps_accepted),
                          std::to_string(tr.stats.steps_rejected),
                          to_string(tr.status),
                          tr.failure_x ? format_real(*tr.failure_x) : "",
                          include_timing ? format_real(run.wall_ms) : ""});
  }
  files.emplace_back("costs.csv", csv::write(costs));

  std::vector<svg::Series> series;
  for (const auto& run : art.runs) {
    svg::Series s{std::string(to_string(run.solver)), solver_color(run.solver), {}, {}, false};
    for (const auto& [x, y] : run.trajectory.samples) {
      s.x.push_back(x);
      s.y.push_back(y);
    }
    series.push_back(std::move(s));
  }
  for (const auto& ref : art.references) {
    svg::Series s{std::string(to_string(ref.kind)), reference_color(ref.kind), {}, {}, true};
    for (const auto& [t, v] : ref.points) {
      s.x.push_back(t);
      s.y.push_back(v);
    }
    series.push_back(std::move(s));
  }
  files.emplace_back("plot.svg", svg::render(sc.name + " (" +
                                                 std::string(model_name(sc.model)) + ")",
                                             "t", "value", series));
  return files;
}

std::optional<ConvergenceModel> convergence_model(const std::string& name) {
  if (name == "logistic") {
    const LogisticModel m;
    return ConvergenceModel{name, {logistic_rhs(m), 0.0, m.P0, 100.0},
                            [m](double t) { return logistic_exact(m, t); }};
  }
  if (name == "temperature") {
    const TemperatureModel m;
    return ConvergenceModel{name, {temperature_rhs(m), 0.0, m.T0, 72.0},
                            [m](double t) { return temperature_exact(m, t); }};
  }
  if (name == "exponential") {
    return ConvergenceModel{name, {[](double, double y) { return y; }, 0.0, 1.0, 1.0},
                            [](double t) { return std::exp(t); }};
  }
  return std::nullopt;
}

std::string convergence_csv(const ConvergenceModel& model,
                            std::span<const FixedMethod> steppers,
                            std::span<const double> h_values) {
  csv::Table t;
  t.header = {"stepper", "h", "error", "observed_order"};
  for (const FixedMethod m : steppers) {
    for (const auto& p : estimate_convergence_order(model.problem, model.exact, m, h_values)) {
      t.rows.push_back({std::string(to_string(m)), format_real(p.h),
                        format_real(p.global_error),
                        p.observed_order ? format_real(*p.observed_order) : ""});
    }
  }
  return csv::write(t);
}

Files make_fixtures() {
  struct Case {
    CaseModel model;
    double t_end;
    double dt;
    std::uint64_t seed;
  };
  const Case cases[] = {
      {LogisticModel{}, 100.0, 5.0, kFixtureSeed},
      {TemperatureModel{}, 72.0, 2.0, kFixtureSeed + 1},
      {MarketModel{}, 20.0, 0.5, kFixtureSeed + 2},
  };

  Files files;
  for (const auto& c : cases) {
    const std::string name(model_name(c.model));
    const auto curve = model_reference_curve(c.model);
    std::mt19937_64 rng(c.seed);

    csv::Table experimental;
    experimental.comments = {
        "synthetic experimental series for the default " + name + " model",
        "seed=" + std::to_string(c.seed) +
            " noise=uniform relative amplitude=" + format_real(kFixtureNoise)};
    experimental.header = {"t", "value"};
    csv::Table empirical;
    empirical.comments = {"closed-form reference for the default " + name + " model"};
    empirical.header = {"t", "value"};

    const auto n = static_cast<std::size_t>(std::llround(c.t_end / c.dt));
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) * c.dt;
      const double v = curve(t);
      // Draw for every point so a skipped pole does not shift later noise.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (!std::isfinite(v)) continue;
      const double noisy = v * (1.0 + kFixtureNoise * (2.0 * u - 1.0));
      experimental.rows.push_back({format_real(t), format_real(noisy)});
      empirical.rows.push_back({format_real(t), format_real(v)});
    }
    files.emplace_back(name + "_experimental.csv", csv::write(experimental));
    files.emplace_back(name + "_empirical.csv", csv::write(empirical));
  }
  return files;
}

void write_files(const std::filesystem::path& dir, const Files& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
  for (const auto& [name, contents] : files) csv::write_file(dir / name, contents);
}

}  // namespace odebench::bench
