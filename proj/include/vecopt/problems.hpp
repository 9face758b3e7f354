#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vecopt/core.hpp"

namespace vecopt {

// Optional size overrides for the dimension-parameterised families
// (FDS, MMR5, SLC2 take n; MGH16 takes m).
struct ProblemVariant {
  std::optional<int> n;
  std::optional<int> m;
};

struct ProblemInfo {
  std::string name;
  std::string family;
  int n = 0;
  int m = 0;
  bool convex = false;
  std::string box;  // human-readable, e.g. "[-2,2]^n"
  bool slow = false;  // n = 1000 instances
};

// Every registered instance in roster order (the two-objective worked
// example EX1 first, then the benchmark table).
const std::vector<ProblemInfo>& problem_catalog();

std::vector<std::string> problem_names();

// Looks up an instance ("FDS-2") or a family with a variant ("FDS", n=100).
// Throws LookupError naming the valid problems when `name` is unknown.
Problem get_problem(std::string_view name, const ProblemVariant& variant = {});

// Acceptance roster: EX1, FDS-1/2/3, Hil1, MOP5, MOP7, SLC2-2.
std::vector<std::string> minimum_roster();

// Structured manifest of the catalogue for the CLI `list` command.
std::string problem_manifest_json();

// Family constructors.
Problem make_ex1();
Problem make_ap3();
Problem make_far1();
Problem make_fds(int n);
Problem make_hil1();
Problem make_lov3();
Problem make_lov4();
Problem make_mgh16(int m);
Problem make_mgh26();
Problem make_mmr5(int n, double half_width);
Problem make_mop5();
Problem make_mop7();
Problem make_slc2(int n, double half_width);

}  // namespace vecopt
