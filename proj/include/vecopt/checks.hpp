#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vecopt/core.hpp"

namespace vecopt {

struct CheckResult {
  std::string name;  // "<group>/<item>", e.g. "jacobian/FDS-1"
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  // Only checks whose name starts with this prefix run ("" runs all).
  std::string filter;
  int jacobian_points = 20;
  int qp_instances = 50;
  int convexity_pairs = 200;
  bool include_slow = true;
  std::uint64_t seed = 20240901;
};

// Fast invariant battery: Jacobian finite-difference checks, convexity spot
// checks for problems flagged convex, the steepest-direction QP against grid-refinement
// and active-set oracles, and the two-objective worked-example regression.
std::vector<CheckResult> run_checks(const std::vector<Problem>& problems,
                                    const CheckOptions& options);

// Same, over the full problem registry.
std::vector<CheckResult> run_checks(const CheckOptions& options);

}  // namespace vecopt
