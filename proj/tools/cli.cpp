#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "vecopt/bench.hpp"
#include "vecopt/checks.hpp"
#include "vecopt/problems.hpp"
#include "vecopt/scalarize.hpp"
#include "vecopt/solver.hpp"

namespace vecopt::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared by every command. Unset optionals fall back to the config
// file, then to built-in defaults.
struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::optional<int> starts;
  std::string config_file;
  bool pretty = false;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--seed", f.seed, "Base seed (start s uses seed + s)");
  cmd.add_option("--out-dir", f.out_dir, "Output directory (default $VECOPT_OUT_DIR or ./out)");
  cmd.add_option("--workers", f.workers, "Concurrent runs")->check(CLI::PositiveNumber);
  cmd.add_option("--tol", f.tol, "Stop when theta(x) >= -tol")->check(CLI::PositiveNumber);
  cmd.add_option("--max-iters", f.max_iters, "Iteration cap")->check(CLI::NonNegativeNumber);
  cmd.add_option("--method", f.methods, "TT-PRP, TT-PRP1, PRP+ or SD");
  cmd.add_option("--problem", f.problems, "Registered problem name");
  cmd.add_option("--starts", f.starts, "Random starts per problem")->check(CLI::PositiveNumber);
  cmd.add_option("--config", f.config_file, "JSON file with experiment/solver settings")
      ->check(CLI::ExistingFile);
  cmd.add_flag("--pretty", f.pretty, "Human-readable output instead of JSON");
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config {}: {}", path, e.what()));
  }
}

template <typename T>
T pick(const std::optional<T>& flag, const json& config, const char* key, T fallback) {
  if (flag) return *flag;
  if (config.contains(key)) return config.at(key).get<T>();
  return fallback;
}

SolverConfig solver_config(const CommonFlags& f, const json& config) {
  SolverConfig c;
  const json s = config.value("solver", json::object());
  c.ls.rho = s.value("rho", c.ls.rho);
  c.ls.sigma = s.value("sigma", c.ls.sigma);
  c.ls.mu = s.value("mu", c.ls.mu);
  c.ls.alpha_init = s.value("alpha_init", c.ls.alpha_init);
  c.ls.expand_factor = s.value("expand_factor", c.ls.expand_factor);
  c.ls.max_trials = s.value("max_trials", c.ls.max_trials);
  c.qp_tol = s.value("qp_tol", c.qp_tol);
  c.qp_max_iters = s.value("qp_max_iters", c.qp_max_iters);
  c.max_iters = f.max_iters ? *f.max_iters : s.value("max_iters", c.max_iters);
  c.stop_tol = f.tol ? *f.tol : s.value("stop_tol", c.stop_tol);
  c.validate();
  return c;
}

std::vector<std::string> list_or(const std::vector<std::string>& flag, const json& config,
                                 const char* key, std::vector<std::string> fallback) {
  if (!flag.empty()) return flag;
  if (config.contains(key)) return config.at(key).get<std::vector<std::string>>();
  return fallback;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const std::string& n : names) out.push_back(parse_method(n));
  return out;
}

void check_problems(const std::vector<std::string>& names) {
  for (const std::string& n : names) (void)get_problem(n);  // throws LookupError
}

fs::path out_dir(const CommonFlags& f, const json& config) {
  if (f.out_dir) return *f.out_dir;
  if (config.contains("out_dir")) return config.at("out_dir").get<std::string>();
  if (const char* env = std::getenv("VECOPT_OUT_DIR")) return env;
  return "out";
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  file << content;
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream ss;
  fn(ss);
  return ss.str();
}

std::string file_stem(std::string name) {
  for (char& c : name) {
    if (c == '+') c = 'p';
    if (c == '(' || c == ')' || c == '=' || c == '/') c = '_';
  }
  return name;
}

ExperimentSpec experiment_spec(const CommonFlags& f, const json& config,
                               std::vector<std::string> default_problems,
                               std::vector<std::string> default_methods, int default_starts) {
  ExperimentSpec spec;
  spec.problems = list_or(f.problems, config, "problems", std::move(default_problems));
  check_problems(spec.problems);
  spec.methods = parse_methods(list_or(f.methods, config, "methods", std::move(default_methods)));
  spec.starts_per_problem = pick<int>(f.starts, config, "starts", default_starts);
  spec.base_seed = pick<std::uint64_t>(f.seed, config, "seed", 0);
  spec.workers = pick<int>(f.workers, config, "workers", 1);
  spec.base_config = solver_config(f, config);
  spec.keep_traces = false;
  return spec;
}

int cmd_list(const CommonFlags& f, std::ostream& out) {
  if (!f.pretty) {
    out << problem_manifest_json() << "\n";
    return 0;
  }
  fmt::print(out, "{:<9} {:>5} {:>4} {:>6}  {}\n", "problem", "n", "m", "convex", "box");
  for (const ProblemInfo& p : problem_catalog()) {
    fmt::print(out, "{:<9} {:>5} {:>4} {:>6}  {}{}\n", p.name, p.n, p.m, p.convex ? "Y" : "N",
               p.box, p.slow ? "  (slow)" : "");
  }
  return 0;
}

int cmd_solve(const CommonFlags& f, const std::vector<double>& x0_flag, std::ostream& out) {
  const json config = load_config(f.config_file);
  const auto problems = list_or(f.problems, config, "problems", {});
  const auto methods = list_or(f.methods, config, "methods", {"TT-PRP"});
  if (problems.size() != 1) throw UsageError("solve needs exactly one problem");
  if (methods.size() != 1) throw UsageError("solve takes exactly one method");
  const Problem problem = get_problem(problems.front());
  SolverConfig sc = solver_config(f, config);
  sc.method = parse_method(methods.front());
  const std::uint64_t seed = pick<std::uint64_t>(f.seed, config, "seed", 0);
  Vector x0;
  if (!x0_flag.empty()) {
    if (static_cast<int>(x0_flag.size()) != problem.n) {
      throw UsageError(fmt::format("--x0 needs {} values for {}", problem.n, problem.name));
    }
    x0 = Eigen::Map<const Vector>(x0_flag.data(), problem.n);
  } else {
    x0 = sample_initial_point(problem, seed);
  }

  const RunResult run = solve(problem, x0, sc, OrderingSpec::canonical(problem.m));
  ExperimentSpec spec;
  spec.base_seed = seed;
  spec.starts_per_problem = 1;
  spec.base_config = sc;
  FileHeader header = make_header(spec);
  header.extra.emplace_back("problem", problem.name);
  const fs::path trace_path =
      out_dir(f, config) / fmt::format("trace_{}_{}_seed{}.csv", file_stem(problem.name),
                                       file_stem(std::string(to_string(sc.method))), seed);
  write_file(trace_path, render([&](std::ostream& s) { write_trace_csv(s, run, header); }));

  if (f.pretty) {
    fmt::print(out, "{} / {}: {} after {} iterations (theta = {:.3e})\n", problem.name,
               to_string(sc.method), to_string(run.status), run.iterations(), run.final_theta);
    fmt::print(out, "evaluations: {} objective, {} Jacobian; trace: {}\n",
               run.counters.obj_evals, run.counters.jac_evals, trace_path.string());
    if (!run.message.empty()) fmt::print(out, "note: {}\n", run.message);
  } else {
    json j = {{"problem", problem.name},
              {"method", std::string(to_string(sc.method))},
              {"seed", seed},
              {"status", std::string(to_string(run.status))},
              {"iterations", run.iterations()},
              {"obj_evals", run.counters.obj_evals},
              {"jac_evals", run.counters.jac_evals},
              {"final_theta", run.final_theta},
              {"trace", trace_path.string()}};
    if (!run.message.empty()) j["message"] = run.message;
    out << j.dump() << "\n";
  }
  return run.converged() ? 0 : 1;
}

std::vector<std::string> all_method_names() {
  std::vector<std::string> out;
  for (Method m : kAllMethods) out.emplace_back(to_string(m));
  return out;
}

void write_profiles(const fs::path& dir, const std::vector<RunSummary>& runs,
                    const std::vector<Measure>& measures, const FileHeader& header) {
  for (Measure m : measures) {
    const auto curves = performance_profile(runs, m);
    write_file(dir / fmt::format("profile_{}.csv", to_string(m)),
               render([&](std::ostream& s) { write_profile_csv(s, curves, header); }));
  }
}

int cmd_bench(const CommonFlags& f, bool check_invariants, std::ostream& out) {
  const json config = load_config(f.config_file);
  ExperimentSpec spec = experiment_spec(f, config, minimum_roster(), all_method_names(), 100);
  spec.check_invariants = check_invariants;
  const fs::path dir = out_dir(f, config);
  const auto runs = run_experiment(spec);
  const auto summaries = summarize(runs);
  const auto rows = aggregate_metrics(summaries);
  const FileHeader header = make_header(spec);

  write_file(dir / "manifest.json", run_manifest_json(spec) + "\n");
  write_file(dir / "runs.csv",
             render([&](std::ostream& s) { write_runs_csv(s, summaries, header); }));
  write_file(dir / "metrics.csv",
             render([&](std::ostream& s) { write_metrics_csv(s, rows, header); }));
  write_file(dir / "timing.csv",
             render([&](std::ostream& s) { write_timing_csv(s, rows, header); }));
  if (spec.methods.size() >= 2) {
    write_profiles(dir, summaries, {std::begin(kAllMeasures), std::end(kAllMeasures)}, header);
  }

  std::size_t violations = 0;
  for (const ExperimentRun& r : runs) violations += r.violations.size();
  if (f.pretty) {
    fmt::print(out, "{:<9} {:<8} {:>6} {:>8} {:>8} {:>8}\n", "problem", "method", "%", "mit",
               "mf", "mg");
    for (const MetricsRow& r : rows) {
      auto cell = [](const std::optional<double>& v) {
        return v ? fmt::format("{:.1f}", *v) : std::string("-");
      };
      fmt::print(out, "{:<9} {:<8} {:>6.1f} {:>8} {:>8} {:>8}\n", r.problem, to_string(r.method),
                 r.success_rate_percent, cell(r.median_iterations), cell(r.median_obj_evals),
                 cell(r.median_jac_evals));
    }
    if (check_invariants) fmt::print(out, "invariant violations: {}\n", violations);
    fmt::print(out, "outputs in {}\n", dir.string());
  } else {
    json j = {{"runs", runs.size()}, {"out_dir", dir.string()}};
    if (check_invariants) j["invariant_violations"] = violations;
    out << j.dump() << "\n";
  }
  return check_invariants && violations > 0 ? 1 : 0;
}

int cmd_profile(const CommonFlags& f, const std::string& runs_file,
                const std::vector<std::string>& measure_names, std::ostream& out) {
  const json config = load_config(f.config_file);
  std::vector<Measure> measures;
  for (const std::string& m : measure_names) measures.push_back(parse_measure(m));
  if (measures.empty()) measures.assign(std::begin(kAllMeasures), std::end(kAllMeasures));

  std::vector<RunSummary> summaries;
  FileHeader header;
  if (!runs_file.empty()) {
    std::ifstream in(runs_file);
    if (!in) throw UsageError(fmt::format("cannot read {}", runs_file));
    summaries = read_runs_csv(in);
    ExperimentSpec spec;
    spec.base_seed = pick<std::uint64_t>(f.seed, config, "seed", 0);
    header = make_header(spec);
    header.extra.emplace_back("runs_file", fs::path(runs_file).filename().string());
  } else {
    const ExperimentSpec spec =
        experiment_spec(f, config, minimum_roster(), all_method_names(), 100);
    summaries = summarize(run_experiment(spec));
    header = make_header(spec);
  }
  if (summaries.empty()) throw UsageError("no runs to profile");
  const fs::path dir = out_dir(f, config);
  write_profiles(dir, summaries, measures, header);
  if (f.pretty) {
    for (Measure m : measures) {
      for (const ProfileCurve& c : performance_profile(summaries, m)) {
        fmt::print(out, "{:<10} {:<8} rho(1) = {:.3f}  rho(inf) = {:.3f}\n", to_string(m),
                   to_string(c.method), profile_value(c, 1.0), c.breakpoints.back().second);
      }
    }
  } else {
    out << json{{"out_dir", dir.string()}, {"runs", summaries.size()}}.dump() << "\n";
  }
  return 0;
}

int cmd_pareto(const CommonFlags& f, std::ostream& out) {
  const json config = load_config(f.config_file);
  if (f.problems.size() != 1) throw UsageError("pareto needs exactly one --problem");
  if (f.methods.size() > 1) throw UsageError("pareto takes at most one --method");
  const ExperimentSpec spec = experiment_spec(f, config, {}, {"TT-PRP"}, 400);
  const Problem problem = get_problem(spec.problems.front());
  const auto runs = run_experiment(spec);
  const auto rows = export_pareto_points(runs, spec.problems.front());
  FileHeader header = make_header(spec);
  header.extra.emplace_back("method", std::string(to_string(spec.methods.front())));
  const fs::path path =
      out_dir(f, config) / fmt::format("pareto_{}.csv", file_stem(problem.name));
  write_file(path, render([&](std::ostream& s) {
               write_pareto_csv(s, spec.problems.front(), problem.n, problem.m, rows, header);
             }));
  int converged = 0;
  for (const ParetoRow& r : rows) converged += r.status == RunStatus::kConverged;
  if (f.pretty) {
    fmt::print(out, "{}: {}/{} runs converged; points in {}\n", problem.name, converged,
               rows.size(), path.string());
  } else {
    out << json{{"problem", problem.name}, {"rows", rows.size()}, {"converged", converged},
                {"file", path.string()}}
               .dump()
        << "\n";
  }
  return 0;
}

int cmd_check(const CommonFlags& f, const std::string& filter, bool fast, std::ostream& out) {
  CheckOptions options;
  options.filter = filter;
  options.include_slow = !fast;
  if (f.seed) options.seed = *f.seed;
  const auto results = run_checks(options);
  int failed = 0;
  json j = json::array();
  for (const CheckResult& r : results) {
    failed += !r.passed;
    if (f.pretty) {
      fmt::print(out, "{} {}  {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    } else {
      j.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
  }
  if (f.pretty) {
    fmt::print(out, "{} checks, {} failed\n", results.size(), failed);
  } else {
    out << j.dump() << "\n";
  }
  if (results.empty()) return 2;
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conjugate-gradient solvers for multiobjective optimization"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonFlags flags;
  std::vector<std::string> positional;
  auto* list = app.add_subcommand("list", "Print the problem registry");
  list->add_flag("--pretty", flags.pretty, "Human-readable output instead of JSON");

  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem from one start");
  add_common(*solve_cmd, flags);
  solve_cmd->add_option("problems", positional, "Problem names (same as --problem)");
  std::vector<double> x0;
  solve_cmd->add_option("--x0", x0, "Explicit start point (overrides --seed)")->delimiter(',');

  auto* bench = app.add_subcommand("bench", "Multi-start experiment with metrics and profiles");
  add_common(*bench, flags);
  bench->add_option("problems", positional, "Problem names (same as --problem)");
  bool check_invariants = false;
  bench->add_flag("--check-invariants", check_invariants,
                  "Re-derive descent and Wolfe conditions for every run");

  auto* profile = app.add_subcommand("profile", "Performance profiles");
  add_common(*profile, flags);
  std::string runs_file;
  std::vector<std::string> measures;
  profile->add_option("--runs", runs_file, "runs.csv from a previous bench")
      ->check(CLI::ExistingFile);
  profile->add_option("--measure", measures, "wall_time, iterations, jac_evals, obj_evals");

  auto* pareto = app.add_subcommand("pareto", "Final objective vectors from many starts");
  add_common(*pareto, flags);
  pareto->add_option("problems", positional, "Problem names (same as --problem)");

  auto* check = app.add_subcommand("check", "Fast invariant battery");
  add_common(*check, flags);
  std::string filter;
  bool fast = false;
  check->add_option("--filter", filter, "Run only checks whose name starts with this prefix");
  check->add_flag("--fast", fast, "Skip the n = 1000 problems");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  flags.problems.insert(flags.problems.end(), positional.begin(), positional.end());
  try {
    if (list->parsed()) return cmd_list(flags, out);
    if (solve_cmd->parsed()) return cmd_solve(flags, x0, out);
    if (bench->parsed()) return cmd_bench(flags, check_invariants, out);
    if (profile->parsed()) return cmd_profile(flags, runs_file, measures, out);
    if (pareto->parsed()) return cmd_pareto(flags, out);
    if (check->parsed()) return cmd_check(flags, filter, fast, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const LookupError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const InputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    fmt::print(err, "error: config: {}\n", e.what());
    return 2;
  }
  return 2;
}

}  // namespace vecopt::cli
