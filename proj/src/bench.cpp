#include "vecopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"
#include "vecopt/problems.hpp"
#include "vecopt/scalarize.hpp"

#ifndef VECOPT_VERSION
#define VECOPT_VERSION "0.0.0"
#endif

namespace vecopt {

std::string_view library_version() { return VECOPT_VERSION; }

void ExperimentSpec::validate() const {
  if (problems.empty()) throw InputError("experiment: problem list is empty");
  if (methods.empty()) throw InputError("experiment: method list is empty");
  if (starts_per_problem < 1) throw InputError("experiment: starts_per_problem must be >= 1");
  if (workers < 1) throw InputError("experiment: workers must be >= 1");
  base_config.validate();
  for (const auto& [method, config] : overrides) config.validate();
}

SolverConfig ExperimentSpec::config_for(Method method) const {
  auto it = overrides.find(method);
  SolverConfig config = it == overrides.end() ? base_config : it->second;
  config.method = method;
  return config;
}

namespace {

double kkt_identity_gap(const RunResult& run) {
  double gap = 0.0;
  for (const IterationRecord& rec : run.trace) {
    const double sq = rec.steepest.squaredNorm();
    gap = std::max(gap, std::abs(rec.lambda_steepest + sq) / std::max(1.0, sq));
  }
  return gap;
}

}  // namespace

std::vector<ExperimentRun> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<Problem> problems;
  problems.reserve(spec.problems.size());
  for (const std::string& name : spec.problems) problems.push_back(get_problem(name));

  struct Task {
    std::size_t problem;
    int start;
    Method method;
  };
  std::vector<Task> tasks;
  std::vector<std::vector<Vector>> starts(problems.size());
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (int s = 0; s < spec.starts_per_problem; ++s) {
      starts[p].push_back(sample_initial_point(problems[p], spec.base_seed + s));
      for (Method method : spec.methods) tasks.push_back({p, s, method});
    }
  }

  std::vector<ExperimentRun> runs(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      const Problem& problem = problems[task.problem];
      const OrderingSpec ordering = OrderingSpec::canonical(problem.m);
      ExperimentRun& run = runs[i];
      run.problem = spec.problems[task.problem];
      run.method = task.method;
      run.start = task.start;
      run.seed = spec.base_seed + task.start;
      run.result = solve(problem, starts[task.problem][task.start], spec.config_for(task.method),
                         ordering);
      run.kkt_identity_gap = kkt_identity_gap(run.result);
      if (spec.check_invariants) {
        run.violations = solve_traced_invariant_check(run.result, problem, ordering);
      }
      if (!spec.keep_traces) {
        run.result.trace.clear();
        run.result.trace.shrink_to_fit();
      }
    }
  };
  const int n_threads = std::min<int>(spec.workers, static_cast<int>(tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return runs;
}

std::vector<RunSummary> summarize(const std::vector<ExperimentRun>& runs) {
  std::vector<RunSummary> out;
  out.reserve(runs.size());
  for (const ExperimentRun& run : runs) {
    RunSummary s;
    s.problem = run.problem;
    s.method = run.method;
    s.start = run.start;
    s.status = run.result.status;
    s.iterations = run.result.iterations();
    s.obj_evals = run.result.counters.obj_evals;
    s.jac_evals = run.result.counters.jac_evals;
    s.wall_time = run.result.wall_time;
    s.final_theta = run.result.final_theta;
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<double> median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

double measure_of(const RunSummary& run, Measure measure) {
  switch (measure) {
    case Measure::kWallTime: return run.wall_time;
    case Measure::kIterations: return run.iterations;
    case Measure::kJacEvals: return static_cast<double>(run.jac_evals);
    case Measure::kObjEvals: return static_cast<double>(run.obj_evals);
  }
  return 0.0;
}

// (problem, method) keys in first-appearance order.
template <typename Fn>
void for_each_group(const std::vector<RunSummary>& runs, Fn&& fn) {
  std::vector<std::pair<std::string, Method>> keys;
  for (const RunSummary& r : runs) {
    const std::pair<std::string, Method> key{r.problem, r.method};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& key : keys) {
    std::vector<const RunSummary*> group;
    for (const RunSummary& r : runs) {
      if (r.problem == key.first && r.method == key.second) group.push_back(&r);
    }
    fn(key.first, key.second, group);
  }
}

}  // namespace

std::vector<MetricsRow> aggregate_metrics(const std::vector<RunSummary>& runs) {
  if (runs.empty()) throw InputError("aggregate_metrics: no runs");
  std::vector<MetricsRow> rows;
  for_each_group(runs, [&](const std::string& problem, Method method,
                           const std::vector<const RunSummary*>& group) {
    MetricsRow row;
    row.problem = problem;
    row.method = method;
    row.runs = static_cast<int>(group.size());
    std::vector<double> it, fe, je, wt;
    for (const RunSummary* r : group) {
      if (r->status != RunStatus::kConverged) continue;
      ++row.successes;
      it.push_back(r->iterations);
      fe.push_back(static_cast<double>(r->obj_evals));
      je.push_back(static_cast<double>(r->jac_evals));
      wt.push_back(r->wall_time);
    }
    row.success_rate_percent = 100.0 * row.successes / row.runs;
    row.median_iterations = median(it);
    row.median_obj_evals = median(fe);
    row.median_jac_evals = median(je);
    row.median_wall_time = median(wt);
    rows.push_back(std::move(row));
  });
  return rows;
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::kWallTime: return "wall_time";
    case Measure::kIterations: return "iterations";
    case Measure::kJacEvals: return "jac_evals";
    case Measure::kObjEvals: return "obj_evals";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (to_string(m) == name) return m;
  }
  throw LookupError(fmt::format(
      "unknown measure '{}' (expected wall_time, iterations, jac_evals or obj_evals)", name));
}

std::vector<ProfileCurve> performance_profile(const std::vector<RunSummary>& runs,
                                              Measure measure) {
  std::vector<std::string> problems;
  std::vector<Method> methods;
  for (const RunSummary& r : runs) {
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) {
      problems.push_back(r.problem);
    }
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
  }
  const double floor = measure == Measure::kWallTime ? 1e-9 : 1.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // cost[p][s]
  std::vector<std::vector<double>> cost(problems.size(), std::vector<double>(methods.size(), kInf));
  for (std::size_t p = 0; p < problems.size(); ++p) {
    for (std::size_t s = 0; s < methods.size(); ++s) {
      std::vector<double> values;
      for (const RunSummary& r : runs) {
        if (r.problem == problems[p] && r.method == methods[s] &&
            r.status == RunStatus::kConverged) {
          values.push_back(measure_of(r, measure));
        }
      }
      if (auto med = median(values)) cost[p][s] = std::max(*med, floor);
    }
  }

  std::vector<ProfileCurve> curves;
  const double n_problems = static_cast<double>(problems.size());
  for (std::size_t s = 0; s < methods.size(); ++s) {
    std::vector<double> ratios;
    for (std::size_t p = 0; p < problems.size(); ++p) {
      const double best = *std::min_element(cost[p].begin(), cost[p].end());
      if (std::isfinite(cost[p][s])) ratios.push_back(cost[p][s] / best);
    }
    std::sort(ratios.begin(), ratios.end());
    ProfileCurve curve;
    curve.method = methods[s];
    curve.measure = measure;
    std::size_t at_one = 0;
    while (at_one < ratios.size() && ratios[at_one] <= 1.0) ++at_one;
    curve.breakpoints.emplace_back(1.0, static_cast<double>(at_one) / n_problems);
    for (std::size_t i = at_one; i < ratios.size(); ++i) {
      if (i + 1 < ratios.size() && ratios[i + 1] == ratios[i]) continue;
      curve.breakpoints.emplace_back(ratios[i], static_cast<double>(i + 1) / n_problems);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

double profile_value(const ProfileCurve& curve, double omega) {
  double value = 0.0;
  for (const auto& [w, rho] : curve.breakpoints) {
    if (w <= omega) value = rho;
  }
  return value;
}

std::vector<ParetoRow> export_pareto_points(const std::vector<ExperimentRun>& runs,
                                            std::string_view problem) {
  std::vector<ParetoRow> rows;
  for (const ExperimentRun& run : runs) {
    if (run.problem != problem) continue;
    rows.push_back({run.start, run.result.status, run.result.initial_point,
                    run.result.final_point, run.result.initial_objectives,
                    run.result.final_objectives});
  }
  return rows;
}

FileHeader make_header(const ExperimentSpec& spec) {
  FileHeader h;
  h.version = std::string(library_version());
  h.seed = spec.base_seed;
  h.starts = spec.starts_per_problem;
  h.stop_tol = spec.base_config.stop_tol;
  h.ls = spec.base_config.ls;
  return h;
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

void write_header(std::ostream& out, const FileHeader& h) {
  fmt::print(out, "# vecopt {}\n", h.version);
  fmt::print(out, "# seed: {}\n# starts: {}\n# stop_tol: {}\n", h.seed, h.starts, num(h.stop_tol));
  fmt::print(out, "# rho: {}\n# sigma: {}\n# mu: {}\n", num(h.ls.rho), num(h.ls.sigma),
             num(h.ls.mu));
  for (const auto& [key, value] : h.extra) fmt::print(out, "# {}: {}\n", key, value);
}

std::string vec_cells(const Vector& v, Eigen::Index expected) {
  std::string out;
  for (Eigen::Index i = 0; i < expected; ++i) {
    out += ',';
    out += i < v.size() ? num(v[i]) : "NA";
  }
  return out;
}

std::string vec_names(std::string_view prefix, int count) {
  std::string out;
  for (int i = 1; i <= count; ++i) out += fmt::format(",{}{}", prefix, i);
  return out;
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows,
                       const FileHeader& header) {
  write_header(out, header);
  out << "problem,method,runs,successes,success_rate_percent,median_iterations,"
         "median_obj_evals,median_jac_evals\n";
  for (const MetricsRow& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{}\n", r.problem, to_string(r.method), r.runs,
               r.successes, num(r.success_rate_percent), opt(r.median_iterations),
               opt(r.median_obj_evals), opt(r.median_jac_evals));
  }
}

void write_timing_csv(std::ostream& out, const std::vector<MetricsRow>& rows,
                      const FileHeader& header) {
  write_header(out, header);
  out << "# platform_dependent: true\n";
  out << "problem,method,median_wall_time\n";
  for (const MetricsRow& r : rows) {
    fmt::print(out, "{},{},{}\n", r.problem, to_string(r.method), opt(r.median_wall_time));
  }
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileCurve>& curves,
                       const FileHeader& header) {
  write_header(out, header);
  if (!curves.empty()) {
    fmt::print(out, "# measure: {}\n", to_string(curves.front().measure));
    if (curves.front().measure == Measure::kWallTime) out << "# platform_dependent: true\n";
  }
  out << "method,omega,rho\n";
  for (const ProfileCurve& c : curves) {
    for (const auto& [omega, rho] : c.breakpoints) {
      fmt::print(out, "{},{},{}\n", to_string(c.method), num(omega), num(rho));
    }
  }
}

void write_runs_csv(std::ostream& out, const std::vector<RunSummary>& runs,
                    const FileHeader& header) {
  write_header(out, header);
  out << "problem,method,start,status,iterations,obj_evals,jac_evals,final_theta,wall_time\n";
  for (const RunSummary& r : runs) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", r.problem, to_string(r.method), r.start,
               to_string(r.status), r.iterations, r.obj_evals, r.jac_evals, num(r.final_theta),
               num(r.wall_time));
  }
}

std::vector<RunSummary> read_runs_csv(std::istream& in) {
  std::vector<RunSummary> runs;
  std::string line;
  bool seen_columns = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!seen_columns) {
      seen_columns = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) {
      throw InputError(fmt::format("runs.csv line {}: expected 9 fields, got {}", line_no,
                                   cells.size()));
    }
    try {
      RunSummary r;
      r.problem = cells[0];
      r.method = parse_method(cells[1]);
      r.start = std::stoi(cells[2]);
      r.status = parse_status(cells[3]);
      r.iterations = std::stoi(cells[4]);
      r.obj_evals = std::stoll(cells[5]);
      r.jac_evals = std::stoll(cells[6]);
      r.final_theta = std::stod(cells[7]);
      r.wall_time = std::stod(cells[8]);
      runs.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      throw InputError(fmt::format("runs.csv line {}: {}", line_no, e.what()));
    }
  }
  return runs;
}

void write_pareto_csv(std::ostream& out, std::string_view problem, int n, int m,
                      const std::vector<ParetoRow>& rows, const FileHeader& header) {
  write_header(out, header);
  fmt::print(out, "# problem: {}\n", problem);
  fmt::print(out, "start,status{}{}{}{}\n", vec_names("x0_", n), vec_names("x_", n),
             vec_names("f0_", m), vec_names("f_", m));
  for (const ParetoRow& r : rows) {
    fmt::print(out, "{},{}{}{}{}{}\n", r.start, to_string(r.status), vec_cells(r.start_point, n),
               vec_cells(r.final_point, n), vec_cells(r.start_objectives, m),
               vec_cells(r.final_objectives, m));
  }
}

void write_trace_csv(std::ostream& out, const RunResult& run, const FileHeader& header) {
  write_header(out, header);
  fmt::print(out, "# method: {}\n# status: {}\n", to_string(run.config.method),
             to_string(run.status));
  if (!run.message.empty()) fmt::print(out, "# message: {}\n", run.message);
  const int n = static_cast<int>(run.initial_point.size());
  const int m = static_cast<int>(run.initial_objectives.size());
  fmt::print(out,
             "k,theta,beta,step,ls_trials,lambda_dir,lambda_steepest,obj_evals,jac_evals,"
             "subproblem_solves{}{}{}{}\n",
             vec_names("x_", n), vec_names("f_", m), vec_names("steepest_", n),
             vec_names("d_", n));
  for (const IterationRecord& r : run.trace) {
    const Vector d = r.has_direction ? r.direction : Vector();
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{}{}{}{}{}\n", r.k, num(r.theta), num(r.beta),
               num(r.step), r.ls_trials, r.has_direction ? num(r.lambda_dir) : "NA",
               num(r.lambda_steepest), r.counters.obj_evals, r.counters.jac_evals,
               r.counters.subproblem_solves, vec_cells(r.x, n), vec_cells(r.objectives, m),
               vec_cells(r.steepest, n), vec_cells(d, n));
  }
}

std::string run_manifest_json(const ExperimentSpec& spec) {
  nlohmann::ordered_json j;
  j["version"] = std::string(library_version());
  j["problems"] = spec.problems;
  std::vector<std::string> methods;
  for (Method m : spec.methods) methods.emplace_back(to_string(m));
  j["methods"] = methods;
  j["starts_per_problem"] = spec.starts_per_problem;
  j["base_seed"] = spec.base_seed;
  j["seeds"] = fmt::format("base_seed + start_index, start_index in [0, {})",
                           spec.starts_per_problem);
  j["workers"] = spec.workers;
  for (Method m : spec.methods) {
    const SolverConfig c = spec.config_for(m);
    const LineSearchParams ls = c.effective_ls();
    j["solver"][std::string(to_string(m))] = {
        {"linesearch", linesearch_for(m) == LineSearchKind::kGeneralizedWolfe
                           ? "generalized_wolfe"
                           : "strong_wolfe"},
        {"rho", ls.rho},
        {"sigma", ls.sigma},
        {"mu", ls.mu},
        {"alpha_init", ls.alpha_init},
        {"expand_factor", ls.expand_factor},
        {"max_trials", ls.max_trials},
        {"max_iters", c.max_iters},
        {"stop_tol", c.stop_tol},
        {"qp_tol", c.qp_tol},
        {"qp_max_iters", c.qp_max_iters}};
  }
  return j.dump(2);
}

}  // namespace vecopt
