// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//   acceptance          criteria 1-8 (n = 1000 SLC2 instances included in 2-4)
//   acceptance --slow   additionally runs every remaining registry problem
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "vecopt/bench.hpp"
#include "vecopt/directions.hpp"
#include "vecopt/oracle.hpp"
#include "vecopt/problems.hpp"
#include "vecopt/scalarize.hpp"

using namespace vecopt;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    if (ok) return;
    pass = false;
    notes.push_back(std::move(note));
  }
  void info(std::string note) { notes.push_back(std::move(note)); }
};

int failures = 0;

void report(int number, const char* title, const Verdict& v, double seconds) {
  if (!v.pass) ++failures;
  fmt::print("{} {}. {} ({:.1f} s)\n", v.pass ? "PASS" : "FAIL", number, title, seconds);
  for (const std::string& n : v.notes) fmt::print("     {}\n", n);
  std::fflush(stdout);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

Verdict example_regression() {
  Verdict v;
  const Problem ex1 = get_problem("EX1");
  const OrderingSpec o = OrderingSpec::canonical(2);
  const Vector x0 = vec2(1.5, 0.9);
  const Vector x1 = vec2(-0.0835, 0.5833);
  const Vector d0 = vec2(-0.5, -0.1);
  const Matrix j0 = ex1.eval_jacobian(x0);
  const Matrix j1 = ex1.eval_jacobian(x1);
  const SteepestResult s0 = steepest_from_jacobian(j0, o);
  const SteepestResult s1 = steepest_from_jacobian(j1, o);
  v.require((s0.direction - d0).lpNorm<Eigen::Infinity>() <= 1e-10,
            fmt::format("steepest(x0) = ({:.6f}, {:.6f})", s0.direction[0], s0.direction[1]));
  v.require(near(s1.direction[0], 0.0835, 5e-4) && near(s1.direction[1], -0.4173, 5e-4),
            fmt::format("steepest(x1) = ({:.6f}, {:.6f})", s1.direction[0], s1.direction[1]));
  const DirectionState state{d0, s0.lambda, x0, j0};
  const double beta = prp_beta(s1.direction, s1.lambda, state, o);
  v.require(near(beta, 0.6966, 1e-3), fmt::format("beta_1 = {:.6f}", beta));
  const Vector d1 = prp_plus_direction(s1.direction, beta, d0);
  v.require(near(d1[0], -0.2649, 5e-4) && near(d1[1], -0.4870, 5e-4),
            fmt::format("PRP+ direction = ({:.6f}, {:.6f})", d1[0], d1[1]));
  const double lam = lambda(j1, d1, o);
  v.require(near(lam, 0.0840, 5e-4), fmt::format("lambda(x1, PRP+ direction) = {:.6f}", lam));
  return v;
}

std::vector<ExperimentRun> roster_runs;
std::vector<ExperimentRun> extra_runs;

std::vector<ExperimentRun> run_bench(std::vector<std::string> problems, int starts) {
  ExperimentSpec spec;
  spec.problems = std::move(problems);
  spec.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
  spec.starts_per_problem = starts;
  spec.check_invariants = true;
  spec.keep_traces = false;
  return run_experiment(spec);
}

std::vector<const ExperimentRun*> all_runs() {
  std::vector<const ExperimentRun*> out;
  for (const auto& r : roster_runs) out.push_back(&r);
  for (const auto& r : extra_runs) out.push_back(&r);
  return out;
}

Verdict sufficient_descent() {
  Verdict v;
  std::map<std::string, int> count;
  int checked = 0;
  for (const ExperimentRun* r : all_runs()) {
    if (r->method != Method::kTtPrp && r->method != Method::kTtPrp1) continue;
    ++checked;
    for (const InvariantViolation& x : r->violations) {
      if (x.condition == "sufficient_descent") ++count[r->problem];
    }
  }
  for (const auto& [problem, n] : count) {
    v.require(false, fmt::format("{}: {} descent violations", problem, n));
  }
  v.info(fmt::format("{} TT-PRP/TT-PRP1 runs rechecked", checked));

  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> mdist(1, 5);
  std::uniform_int_distribution<int> ndist(1, 10);
  auto random = [&](int r, int c) {
    Matrix M(r, c);
    for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = normal(rng);
    return M;
  };
  int fuzz_bad = 0;
  int fuzz_cases = 0;
  while (fuzz_cases < 10000) {
    const int m = mdist(rng);
    const int n = ndist(rng);
    const OrderingSpec o = OrderingSpec::canonical(m);
    const Matrix j_old = random(m, n);
    const Matrix j_new = random(m, n);
    const Vector d_prev = std::exp(normal(rng)) * random(n, 1);
    const SteepestResult s_old = steepest_from_jacobian(j_old, o);
    const SteepestResult s_new = steepest_from_jacobian(j_new, o);
    if (!(s_old.lambda < -1e-12) || !(s_new.lambda < -1e-12)) continue;
    ++fuzz_cases;
    const DirectionState state{d_prev, s_old.lambda, Vector::Zero(n), j_old};
    const double beta = prp_beta(s_new.direction, s_new.lambda, state, o);
    const Vector d = ttprp_direction(s_new.direction, s_new.lambda, lambda(j_new, d_prev, o), beta,
                                     d_prev);
    if (lambda(j_new, d, o) > s_new.lambda + 1e-9) ++fuzz_bad;
  }
  v.require(fuzz_bad == 0, fmt::format("fuzz: {} of {} cases violate", fuzz_bad, fuzz_cases));
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> dim(1, 3);
  double worst_dir = 0.0;
  double worst_theta = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = dim(rng);
    const int n = dim(rng);
    Matrix J(m, n);
    for (Eigen::Index i = 0; i < J.size(); ++i) J.data()[i] = normal(rng);
    const OrderingSpec o = OrderingSpec::canonical(m);
    const SteepestResult s = steepest_from_jacobian(J, o);
    const OracleMinimum g = grid_steepest(J, o);
    worst_dir = std::max(worst_dir, (s.direction - g.point).lpNorm<Eigen::Infinity>());
    worst_theta = std::max(worst_theta, std::abs(s.theta - g.value));
  }
  v.require(worst_dir <= 1e-3, fmt::format("worst direction error {:.2e}", worst_dir));
  v.require(worst_theta <= 1e-6, fmt::format("worst theta error {:.2e}", worst_theta));
  double worst_gap = 0.0;
  std::string where;
  for (const ExperimentRun* r : all_runs()) {
    if (r->kkt_identity_gap > worst_gap) {
      worst_gap = r->kkt_identity_gap;
      where = fmt::format("{} {} start {}", r->problem, to_string(r->method), r->start);
    }
  }
  v.require(worst_gap <= 1e-7, fmt::format("worst KKT identity gap {:.2e} ({})", worst_gap, where));
  v.info(fmt::format("grid: direction {:.1e}, theta {:.1e}; KKT gap {:.1e}", worst_dir,
                     worst_theta, worst_gap));
  return v;
}

Verdict linesearch_contract() {
  Verdict v;
  std::map<std::string, int> count;
  std::size_t runs = 0;
  for (const ExperimentRun* r : all_runs()) {
    ++runs;
    for (const InvariantViolation& x : r->violations) {
      if (x.condition != "sufficient_descent") {
        ++count[fmt::format("{}/{}/{}", r->problem, to_string(r->method), x.condition)];
      }
    }
  }
  for (const auto& [key, n] : count) v.require(false, fmt::format("{}: {}", key, n));
  v.info(fmt::format("{} runs, every accepted step rechecked", runs));
  return v;
}

Verdict convergence_rates(const std::vector<RunSummary>& summaries) {
  Verdict v;
  const auto metrics = aggregate_metrics(summaries);
  const std::map<std::string, double> table{
      {"FDS-1", 6.0}, {"MOP5", 2.0}, {"MOP7", 7.0}, {"Hil1", 6.5}, {"SLC2-2", 18.5}};
  for (const MetricsRow& row : metrics) {
    const auto it = table.find(row.problem);
    if (it == table.end()) continue;
    if (row.method == Method::kTtPrp || row.method == Method::kTtPrp1) {
      v.require(row.success_rate_percent == 100.0,
                fmt::format("{} {}: success {:.0f}%", row.problem, to_string(row.method),
                            row.success_rate_percent));
    }
    if (row.method == Method::kTtPrp) {
      const double med = row.median_iterations.value_or(std::numeric_limits<double>::infinity());
      const double lo = 0.5 * it->second;
      const double hi = 1.5 * it->second;
      const bool ok = med >= lo && med <= hi;
      v.require(ok, fmt::format("{} TT-PRP median iterations {} (band [{}, {}])", row.problem, med,
                                lo, hi));
      if (ok) v.info(fmt::format("{} TT-PRP median iterations {}", row.problem, med));
    }
  }
  return v;
}

Verdict ordering_claim(const std::vector<RunSummary>& summaries) {
  Verdict v;
  const auto metrics = aggregate_metrics(summaries);
  std::map<std::string, std::map<Method, double>> jac;
  for (const MetricsRow& row : metrics) {
    jac[row.problem][row.method] =
        row.median_jac_evals.value_or(std::numeric_limits<double>::infinity());
  }
  int wins = 0;
  for (auto& [problem, by_method] : jac) {
    const double tt = by_method[Method::kTtPrp];
    const bool win = tt <= by_method[Method::kPrpPlus] && tt <= by_method[Method::kSd];
    wins += win;
    if (!win) {
      v.info(fmt::format("{}: TT-PRP {} vs PRP+ {}, SD {}", problem, tt,
                         by_method[Method::kPrpPlus], by_method[Method::kSd]));
    }
  }
  const double share = static_cast<double>(wins) / static_cast<double>(jac.size());
  v.require(share >= 0.8, fmt::format("TT-PRP best on {}/{} problems", wins, jac.size()));
  v.info(fmt::format("TT-PRP best on {}/{} problems", wins, jac.size()));
  const auto curves = performance_profile(summaries, Measure::kJacEvals);
  double tt = 0.0;
  double prp = 0.0;
  for (const ProfileCurve& c : curves) {
    if (c.method == Method::kTtPrp) tt = profile_value(c, 1.0);
    if (c.method == Method::kPrpPlus) prp = profile_value(c, 1.0);
  }
  v.require(tt >= prp, fmt::format("rho(1): TT-PRP {:.3f}, PRP+ {:.3f}", tt, prp));
  v.info(fmt::format("rho(1): TT-PRP {:.3f}, PRP+ {:.3f}", tt, prp));
  return v;
}

Verdict pareto_sanity() {
  Verdict v;
  const double theta_floor = -5.0 * std::sqrt(std::numeric_limits<double>::epsilon());
  for (const char* name : {"EX1", "Hil1"}) {
    ExperimentSpec spec;
    spec.problems = {name};
    spec.methods = {Method::kTtPrp};
    spec.starts_per_problem = 400;
    spec.keep_traces = false;
    const auto runs = run_experiment(spec);
    const auto rows = export_pareto_points(runs, name);
    std::vector<Vector> front;
    for (const ParetoRow& r : rows) {
      if (r.status == RunStatus::kConverged) front.push_back(r.final_objectives);
    }
    double worst_theta = 0.0;
    for (const ExperimentRun& r : runs) {
      if (r.result.converged()) worst_theta = std::min(worst_theta, r.result.final_theta);
    }
    // b strictly dominates a when every component of b is below a by more than tol
    int nondominated = 0;
    for (std::size_t i = 0; i < front.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < front.size() && !dominated; ++j) {
        dominated = j != i && ((front[j] - front[i]).array() < -1e-6).all();
      }
      nondominated += !dominated;
    }
    const double share = front.empty() ? 0.0 : 100.0 * nondominated / front.size();
    v.require(share >= 95.0, fmt::format("{}: {:.2f}% of {} converged points nondominated", name,
                                         share, front.size()));
    v.require(worst_theta >= theta_floor,
              fmt::format("{}: min final theta {:.3e}", name, worst_theta));
    if (share >= 95.0) {
      v.info(fmt::format("{}: {:.2f}% of {} nondominated", name, share, front.size()));
    }
  }
  return v;
}

std::string bench_files(int workers) {
  ExperimentSpec spec;
  spec.problems = {"EX1", "FDS-1", "Hil1", "MOP5", "MOP7"};
  spec.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
  spec.starts_per_problem = 20;
  spec.base_seed = 5;
  spec.workers = workers;
  spec.keep_traces = false;
  const auto summaries = summarize(run_experiment(spec));
  const FileHeader header = make_header(spec);
  std::ostringstream out;
  write_metrics_csv(out, aggregate_metrics(summaries), header);
  for (Measure m : kAllMeasures) {
    if (m == Measure::kWallTime) continue;
    write_profile_csv(out, performance_profile(summaries, m), header);
  }
  return out.str();
}

Verdict determinism() {
  Verdict v;
  const std::string first = bench_files(1);
  const std::string second = bench_files(2);
  v.require(!first.empty() && first == second, "metrics/profile files differ between runs");
  v.info(fmt::format("{} bytes identical", first.size()));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--slow") == 0) {
      slow = true;
    } else {
      fmt::print(stderr, "usage: acceptance [--slow]\n");
      return 2;
    }
  }

  auto t = std::chrono::steady_clock::now();
  report(1, "worked example regression", example_regression(), since(t));

  t = std::chrono::steady_clock::now();
  roster_runs = run_bench(minimum_roster(), 100);
  std::vector<std::string> extra{"SLC2-1", "SLC2-3"};
  if (slow) {
    for (const ProblemInfo& info : problem_catalog()) {
      const auto roster = minimum_roster();
      if (std::find(roster.begin(), roster.end(), info.name) == roster.end() &&
          std::find(extra.begin(), extra.end(), info.name) == extra.end()) {
        extra.push_back(info.name);
      }
    }
  }
  extra_runs = run_bench(extra, slow ? 100 : 20);
  const double bench_seconds = since(t);
  fmt::print("     benchmark: {} + {} runs in {:.1f} s\n", roster_runs.size(), extra_runs.size(),
             bench_seconds);

  t = std::chrono::steady_clock::now();
  report(2, "sufficient descent", sufficient_descent(), since(t));
  t = std::chrono::steady_clock::now();
  report(3, "steepest-direction oracle equivalence", oracle_equivalence(), since(t));
  t = std::chrono::steady_clock::now();
  report(4, "line-search contract", linesearch_contract(), since(t));
  const auto summaries = summarize(roster_runs);
  t = std::chrono::steady_clock::now();
  report(5, "convergence rates", convergence_rates(summaries), since(t));
  t = std::chrono::steady_clock::now();
  report(6, "ordering claim", ordering_claim(summaries), since(t));
  t = std::chrono::steady_clock::now();
  report(7, "Pareto-front sanity", pareto_sanity(), since(t));
  t = std::chrono::steady_clock::now();
  report(8, "determinism", determinism(), since(t));

  fmt::print("{} of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
