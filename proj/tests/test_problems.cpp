#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vecopt/problems.hpp"

namespace vecopt {
namespace {

using testing::vec;

TEST(Registry, ExampleProblem) {
  const Problem p = get_problem("EX1");
  EXPECT_EQ(p.n, 2);
  EXPECT_EQ(p.m, 2);
  const Vector x = vec({0.7, -1.3});
  const Vector f = p.eval_objectives(x);
  EXPECT_DOUBLE_EQ(f[0], (0.49 + std::sin(-1.3)) / 2.0);
  EXPECT_DOUBLE_EQ(f[1], ((0.7 - 1.0) * (0.7 - 1.0) - (-2.3) * (-2.3)) / 2.0);
}

TEST(Registry, FdsFamilyVariant) {
  const Problem p = get_problem("FDS", ProblemVariant{100, std::nullopt});
  EXPECT_EQ(p.n, 100);
  EXPECT_EQ(p.m, 3);
  EXPECT_EQ(p.lo, Vector::Constant(100, -2.0));
  EXPECT_EQ(p.hi, Vector::Constant(100, 2.0));
  const auto& cat = problem_catalog();
  const auto it = std::find_if(cat.begin(), cat.end(), [](const auto& i) { return i.name == "FDS-2"; });
  ASSERT_NE(it, cat.end());
  EXPECT_TRUE(it->convex);
  EXPECT_EQ(it->n, 100);
}

TEST(Registry, Mgh16Variant) {
  const Problem p = get_problem("MGH16", ProblemVariant{std::nullopt, 50});
  EXPECT_EQ(p.n, 4);
  EXPECT_EQ(p.m, 50);
  EXPECT_EQ(p.lo, vec({-25.0, -5.0, -5.0, -1.0}));
  EXPECT_EQ(p.hi, vec({25.0, 5.0, 5.0, 1.0}));
}

TEST(Registry, UnknownNameListsValidNames) {
  try {
    get_problem("UNKNOWN");
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("FDS-1"), std::string::npos);
  }
}

TEST(Registry, CatalogueIsConsistent) {
  std::set<std::string> seen;
  for (const ProblemInfo& info : problem_catalog()) {
    EXPECT_TRUE(seen.insert(info.name).second) << info.name;
    if (info.slow) continue;
    const Problem p = get_problem(info.name);
    EXPECT_NO_THROW(validate_problem(p));
    EXPECT_EQ(p.n, info.n) << info.name;
    EXPECT_EQ(p.m, info.m) << info.name;
    const Vector x = sample_initial_point(p, 0);
    EXPECT_EQ(p.eval_objectives(x).size(), p.m);
    EXPECT_TRUE(p.eval_objectives(x).allFinite()) << info.name;
    EXPECT_TRUE(p.eval_jacobian(x).allFinite()) << info.name;
  }
  EXPECT_EQ(problem_catalog().front().name, "EX1");
}

TEST(Registry, MinimumRoster) {
  const std::vector<std::string> expected{"EX1", "FDS-1", "FDS-2", "FDS-3",
                                          "Hil1", "MOP5", "MOP7", "SLC2-2"};
  EXPECT_EQ(minimum_roster(), expected);
}

TEST(Registry, JacobiansMatchFiniteDifferencesAtRandomPoints) {
  for (const std::string& name : {"EX1", "AP3", "Far1", "FDS-1", "Hil1", "Lov3", "Lov4",
                                  "MGH26", "MOP5", "MOP7"}) {
    const Problem p = get_problem(name);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto bad = check_jacobian(p, sample_initial_point(p, seed));
      EXPECT_TRUE(bad.empty()) << name << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace vecopt
