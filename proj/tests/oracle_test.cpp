#include <gtest/gtest.h>

#include <random>

#include "mkp/lp.hpp"
#include "mkp/oracle.hpp"
#include "test_util.hpp"

namespace mkp {
namespace {

TEST(EnumerateOptimum, SmallExample) {
  const Instance inst({6, 5, 4}, {{3, 3, 3}}, {6});
  const auto opt = enumerate_optimum(inst);
  EXPECT_EQ(opt.value, 11);
  EXPECT_EQ(opt.bits, (Bits{1, 1, 0}));
}

TEST(EnumerateOptimum, EverythingFits) {
  const Instance inst({1, 2, 3, 4}, {{1, 1, 1, 1}, {2, 2, 2, 2}}, {4, 8});
  const auto opt = enumerate_optimum(inst);
  EXPECT_EQ(opt.value, 10);
  EXPECT_EQ(opt.bits, (Bits{1, 1, 1, 1}));
}

TEST(EnumerateOptimum, ZeroCapacity) {
  const Instance inst({1, 2, 3}, {{1, 1, 1}, {2, 2, 2}}, {0, 0});
  const auto opt = enumerate_optimum(inst);
  EXPECT_EQ(opt.value, 0);
  EXPECT_EQ(opt.bits, (Bits{0, 0, 0}));
}

TEST(EnumerateOptimum, LexicographicallySmallestTie) {
  // {0} and {1} both give 5; {1} is the smaller vector (0,1,...).
  const Instance inst({5, 5, 1}, {{2, 2, 3}}, {2});
  EXPECT_EQ(enumerate_optimum(inst).bits, (Bits{0, 1, 0}));
}

TEST(EnumerateOptimum, RefusesLargeInstances) {
  std::mt19937_64 rng(1);
  const auto inst = testing::random_instance(rng, 26, 2);
  EXPECT_THROW(enumerate_optimum(inst), ContractError);
}

TEST(LpBoundCheck, RandomInstances) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto inst = testing::random_instance(rng, 1 + rng() % 16, 1 + rng() % 5);
    EXPECT_TRUE(lp_bound_check(inst, solve_lp_relaxation(inst)));
  }
}

TEST(LpBoundCheck, IntegralRelaxation) {
  // Unit weights and integral capacity: the LP optimum is integral.
  const Instance inst({9, 4, 7, 3, 8}, {{1, 1, 1, 1, 1}}, {3});
  const auto lp = solve_lp_relaxation(inst);
  ASSERT_TRUE(lp_bound_check(inst, lp));
  EXPECT_NEAR(lp.primal_objective, static_cast<double>(enumerate_optimum(inst).value), 1e-6);
  EXPECT_NEAR(lp.primal_objective, 24.0, 1e-6);
}

TEST(LpBoundCheck, ZeroCapacity) {
  const Instance inst({3, 4}, {{1, 2}}, {0});
  const auto lp = solve_lp_relaxation(inst);
  EXPECT_TRUE(lp_bound_check(inst, lp));
  EXPECT_NEAR(lp.primal_objective, 0.0, 1e-9);
}

TEST(LpBoundCheck, FailedSolveIsRejected) {
  const Instance inst({3, 4}, {{1, 2}}, {1});
  EXPECT_FALSE(lp_bound_check(inst, LpSolution{}));
}

}  // namespace
}  // namespace mkp
