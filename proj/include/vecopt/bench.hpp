#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecopt/solver.hpp"

namespace vecopt {

struct ExperimentSpec {
  std::vector<std::string> problems;
  std::vector<Method> methods;
  int starts_per_problem = 100;
  // Start s of every problem uses seed base_seed + s.
  std::uint64_t base_seed = 0;
  int workers = 1;
  SolverConfig base_config;
  // Per-method replacements for base_config (the method field is forced).
  std::map<Method, SolverConfig> overrides;
  // Re-derive the Wolfe/descent invariants of every run in the worker.
  bool check_invariants = false;
  // Dropping traces keeps memory flat on the n = 1000 instances.
  bool keep_traces = true;

  void validate() const;
  SolverConfig config_for(Method method) const;
};

struct ExperimentRun {
  std::string problem;
  Method method = Method::kTtPrp;
  int start = 0;
  std::uint64_t seed = 0;
  RunResult result;
  // Filled when ExperimentSpec::check_invariants is set.
  std::vector<InvariantViolation> violations;
  // max over solved subproblems of |lambda(x, s) + |s|^2| / max(1, |s|^2).
  double kkt_identity_gap = 0.0;
};

// Executes every (problem, start, method) triple; all methods share the
// start point of a given (problem, start). Output order is problem-major,
// then start, then method, independent of worker scheduling.
std::vector<ExperimentRun> run_experiment(const ExperimentSpec& spec);

// Flat per-run record, the unit the aggregators work on. Also the row format
// of runs.csv.
struct RunSummary {
  std::string problem;
  Method method = Method::kTtPrp;
  int start = 0;
  RunStatus status = RunStatus::kIterationCap;
  int iterations = 0;
  std::int64_t obj_evals = 0;
  std::int64_t jac_evals = 0;
  double wall_time = 0.0;
  double final_theta = 0.0;
};

std::vector<RunSummary> summarize(const std::vector<ExperimentRun>& runs);

// Median with the even-count rule (mean of the two middle values).
std::optional<double> median(std::vector<double> values);

struct MetricsRow {
  std::string problem;
  Method method = Method::kTtPrp;
  int runs = 0;
  int successes = 0;
  double success_rate_percent = 0.0;
  // Over successful runs; empty when there are none.
  std::optional<double> median_iterations;
  std::optional<double> median_obj_evals;
  std::optional<double> median_jac_evals;
  std::optional<double> median_wall_time;
};

// One row per (problem, method) in first-appearance order.
std::vector<MetricsRow> aggregate_metrics(const std::vector<RunSummary>& runs);

enum class Measure { kWallTime, kIterations, kJacEvals, kObjEvals };

inline constexpr Measure kAllMeasures[] = {Measure::kWallTime, Measure::kIterations,
                                           Measure::kJacEvals, Measure::kObjEvals};

std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view name);

struct ProfileCurve {
  Method method = Method::kTtPrp;
  Measure measure = Measure::kIterations;
  // (omega, rho(omega)) at every jump, starting at omega = 1. rho is right
  // continuous and constant between breakpoints.
  std::vector<std::pair<double, double>> breakpoints;
};

// Dolan-More profiles. The per-problem cost of a method is the median of the
// measure over its successful starts; a method without successes on a
// problem gets ratio +inf. Costs are floored at one unit (1 for counts, 1e-9 s
// for wall time) so a zero minimum cannot produce 0/0.
std::vector<ProfileCurve> performance_profile(const std::vector<RunSummary>& runs,
                                              Measure measure);

// rho(omega) of a curve.
double profile_value(const ProfileCurve& curve, double omega);

struct ParetoRow {
  int start = 0;
  RunStatus status = RunStatus::kIterationCap;
  Vector start_point;
  Vector final_point;
  Vector start_objectives;
  Vector final_objectives;
};

std::vector<ParetoRow> export_pareto_points(const std::vector<ExperimentRun>& runs,
                                            std::string_view problem);

// Output files. Every CSV begins with '#'-prefixed manifest lines.
struct FileHeader {
  std::string version;
  std::uint64_t seed = 0;
  int starts = 0;
  double stop_tol = 0.0;
  LineSearchParams ls;
  std::vector<std::pair<std::string, std::string>> extra;
};

FileHeader make_header(const ExperimentSpec& spec);
std::string_view library_version();

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows,
                       const FileHeader& header);
// Wall-time medians live in their own file so metrics.csv stays
// reproducible byte for byte.
void write_timing_csv(std::ostream& out, const std::vector<MetricsRow>& rows,
                      const FileHeader& header);
void write_profile_csv(std::ostream& out, const std::vector<ProfileCurve>& curves,
                       const FileHeader& header);
void write_runs_csv(std::ostream& out, const std::vector<RunSummary>& runs,
                    const FileHeader& header);
std::vector<RunSummary> read_runs_csv(std::istream& in);
// Column layout depends on (n, m), so an empty export still has a header.
void write_pareto_csv(std::ostream& out, std::string_view problem, int n, int m,
                      const std::vector<ParetoRow>& rows, const FileHeader& header);
void write_trace_csv(std::ostream& out, const RunResult& run, const FileHeader& header);
std::string run_manifest_json(const ExperimentSpec& spec);

}  // namespace vecopt
