#include <gtest/gtest.h>

#include "cci/oracle.hpp"
#include "cci/solver.hpp"
#include "test_support.hpp"

namespace cci {
namespace {

TEST(Oracle, CrossingSegments) {
  const auto xs = brute_force_intersections(BezierCurve({{0, 0, 0}, {1, 1, 0}}), BezierCurve({{1, 0, 0}, {0, 1, 0}}));
  ASSERT_EQ(xs.size(), 1u);
  EXPECT_NEAR(xs[0][0], 0.5, 1e-12);
  EXPECT_NEAR(xs[0][1], 0.5, 1e-12);
}

TEST(Oracle, DisjointSegments) {
  EXPECT_TRUE(
      brute_force_intersections(BezierCurve({{0, 0, 0}, {1, 1, 0}}), BezierCurve({{1, 0, 1}, {0, 1, 1}})).empty());
}

TEST(Oracle, FindsPlantedCrossings) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 5, n = 2 + (trial * 3) % 5;
    const auto p = testing::random_transversal_problem(rng, m, n, std::min(n + 1, 1 + trial % 3));
    const auto xs = brute_force_intersections(p.c1, p.c2);
    for (const auto& planted : p.params) {
      const bool hit = std::any_of(xs.begin(), xs.end(), [&](const Vec2& x) { return norm_inf(x - planted) <= 1e-8; });
      EXPECT_TRUE(hit) << "trial " << trial;
    }
  }
}

TEST(Oracle, AgreesWithSolverOnDegreeFive) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testing::random_transversal_problem(rng, 5, 5, 1 + trial % 4);
    const auto xs = brute_force_intersections(p.c1, p.c2);
    const auto r = solve(p.c1, p.c2);
    ASSERT_FALSE(r.truncated);
    ASSERT_EQ(xs.size(), r.intersections.size()) << "trial " << trial;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const auto& s = r.intersections;
      const bool hit = std::any_of(s.begin(), s.end(), [&](const IntersectionRecord& x) {
        return norm_inf(Vec2{x.u, x.v} - xs[k]) <= 1e-6;
      });
      EXPECT_TRUE(hit) << "trial " << trial;
    }
  }
}

}  // namespace
}  // namespace cci
