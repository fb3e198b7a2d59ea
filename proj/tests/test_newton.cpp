#include <gtest/gtest.h>

#include "cci/newton.hpp"
#include "test_support.hpp"

namespace cci {
namespace {

TEST(Newton, AffineSystemSolvedInOneStep) {
  // f = (2u + v - 1, u - 3v + 0.5): zero at (5/14, 2/7).
  const Vec2 b{-1, 0.5}, g{2, 1}, h{1, -3};
  const Net2 net(1, 1, {b, b + h, b + g, b + g + h});
  const auto r = newton_solve(net, {0.9, 0.1});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.iterates[1][0], 5.0 / 14.0, 1e-15);
  EXPECT_NEAR(r.iterates[1][1], 2.0 / 7.0, 1e-15);
  EXPECT_LE(r.iterations, 2);  // the second step only confirms
  EXPECT_NEAR(r.x_star[0], 5.0 / 14.0, 1e-15);
}

TEST(Newton, StartingAtZero) {
  const Vec2 b{-0.5, -0.5}, g{1, 0}, h{0, 1};
  const Net2 net(1, 1, {b, b + h, b + g, b + g + h});
  const auto r = newton_solve(net, {0.5, 0.5});
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_EQ(r.final_step_norm, 0.0);
  EXPECT_EQ(r.x_star, (Vec2{0.5, 0.5}));
}

TEST(Newton, ScalarSequenceByHand) {
  // f = (u^2 - 0.25, v - 0.5); Bernstein coefficients of u^2 are (0, 0, 1).
  Net2 net(2, 1);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 1; ++j) net(i, j) = {(i == 2 ? 1.0 : 0.0) - 0.25, j - 0.5};
  const auto r = newton_solve(net, {1.0, 0.0});
  ASSERT_TRUE(r.converged);
  ASSERT_GE(r.iterates.size(), 4u);
  EXPECT_DOUBLE_EQ(r.iterates[0][0], 1.0);
  EXPECT_NEAR(r.iterates[1][0], 0.625, 1e-15);
  EXPECT_NEAR(r.iterates[2][0], 0.5125, 1e-15);
  EXPECT_NEAR(r.iterates[3][0], 0.5001524390243902, 1e-15);
  EXPECT_NEAR(r.iterates[1][1], 0.5, 1e-15);
  EXPECT_NEAR(r.x_star[0], 0.5, 1e-12);
  EXPECT_NEAR(r.x_star[1], 0.5, 1e-12);
}

TEST(Newton, QuadraticConvergence) {
  Net2 net(2, 1);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 1; ++j) net(i, j) = {(i == 2 ? 1.0 : 0.0) - 0.25, j - 0.5};
  const auto r = newton_solve(net, {1.0, 0.0}, 1e-14);
  ASSERT_TRUE(r.converged);
  std::vector<double> steps;
  for (std::size_t k = 1; k < r.iterates.size(); ++k) steps.push_back(norm_inf(r.iterates[k] - r.iterates[k - 1]));
  ASSERT_GE(steps.size(), 4u);
  // |s_{k+1}| <= C |s_k|^2 with C ~ 1 / (2 u*) = 1.
  for (std::size_t k = steps.size() - 3; k + 1 < steps.size(); ++k)
    if (steps[k] > 1e-15) {
      EXPECT_LE(steps[k + 1], 2.0 * steps[k] * steps[k] + 1e-16);
    }
}

TEST(Newton, SingularJacobianReported) {
  const Net2 net(1, 1, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});  // constant
  const auto r = newton_solve(net, {0.5, 0.5});
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.failure.empty());
}

TEST(Newton, IterationCapReported) {
  // (u^2 + 1, v): no real zero; iterates wander until the cap.
  Net2 net(2, 1);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 1; ++j) net(i, j) = {(i == 2 ? 1.0 : 0.0) + 1.0, double(j)};
  const auto r = newton_solve(net, {0.3, 0.7}, 1e-7, 20);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 20);
}

}  // namespace
}  // namespace cci
