#include <gtest/gtest.h>

#include <random>

#include "mkp/instance.hpp"
#include "test_util.hpp"

namespace mkp {
namespace {

Instance one_row(std::vector<Value> p, std::vector<Value> w, Value r) {
  return Instance(std::move(p), {std::move(w)}, {r});
}

TEST(Objective, SumsSelectedProfits) {
  const auto inst = one_row({10, 6, 8}, {1, 1, 1}, 3);
  EXPECT_EQ(objective(inst, Bits{1, 0, 1}), 18);
  EXPECT_EQ(objective(inst, Bits{0, 0, 0}), 0);
  const auto full = one_row({6, 5, 4}, {1, 1, 1}, 3);
  EXPECT_EQ(objective(full, Bits{1, 1, 1}), 15);
}

TEST(Objective, RejectsWrongLength) {
  const auto inst = one_row({10, 6, 8}, {1, 1, 1}, 3);
  EXPECT_THROW(objective(inst, Bits{1, 0}), StructuralError);
}

TEST(Objective, IsModular) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto inst = testing::random_instance(rng, 12, 3);
    const auto a = testing::random_bit_vector(rng, 12);
    const auto b = testing::random_bit_vector(rng, 12);
    Bits both(12), either(12);
    for (std::size_t j = 0; j < 12; ++j) {
      both[j] = a[j] & b[j];
      either[j] = a[j] | b[j];
    }
    EXPECT_EQ(objective(inst, a) + objective(inst, b), objective(inst, either) + objective(inst, both));
  }
}

TEST(Feasibility, BoundaryAndOverflow) {
  const auto inst = one_row({1, 1, 1}, {2, 3, 4}, 5);
  EXPECT_TRUE(is_feasible(inst, Solution::from_bits(inst, {1, 1, 0})));
  EXPECT_FALSE(is_feasible(inst, Solution::from_bits(inst, {1, 1, 1})));
  EXPECT_TRUE(is_feasible(inst, Solution::empty(inst)));
}

TEST(Feasibility, EmptySolutionAlwaysFeasible) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto inst = testing::random_instance(rng, 1 + rng() % 30, 1 + rng() % 6);
    EXPECT_TRUE(is_feasible(inst, Solution::empty(inst)));
  }
}

TEST(SetBit, FromEmptyAndBack) {
  const Instance inst({7, 3}, {{2, 5}, {4, 1}}, {10, 10});
  auto sol = Solution::empty(inst);
  const auto original = sol;
  sol.set_bit(1, true, inst);
  EXPECT_EQ(sol.profit(), 3);
  EXPECT_EQ(sol.usage(), (std::vector<Value>{5, 1}));
  sol.set_bit(1, true, inst);  // no-op
  EXPECT_EQ(sol.profit(), 3);
  sol.set_bit(1, false, inst);
  EXPECT_EQ(sol.bits(), original.bits());
  EXPECT_EQ(sol.profit(), original.profit());
  EXPECT_EQ(sol.usage(), original.usage());
}

TEST(SetBit, OutOfRange) {
  const auto inst = one_row({1, 1}, {1, 1}, 1);
  auto sol = Solution::empty(inst);
  EXPECT_THROW(set_bit(sol, 2, true, inst), StructuralError);
}

// Caches against a from-scratch recomputation over 10^4 random sequences.
TEST(SetBit, CachesMatchRecompute) {
  std::mt19937_64 rng(11);
  for (int seq = 0; seq < 10'000; ++seq) {
    const std::size_t n = 1 + rng() % 20;
    const std::size_t m = 1 + rng() % 5;
    const auto inst = testing::random_instance(rng, n, m);
    auto sol = Solution::empty(inst);
    const int steps = seq < 100 ? 100 : 20;
    for (int s = 0; s < steps; ++s) sol.set_bit(rng() % n, rng() & 1u, inst);
    const auto fresh = Solution::from_bits(inst, sol.bits());
    ASSERT_EQ(sol.profit(), fresh.profit());
    ASSERT_EQ(sol.profit(), objective(inst, sol.bits()));
    ASSERT_EQ(sol.usage(), fresh.usage());
  }
}

TEST(Fits, Examples) {
  const Instance wide({1, 1}, {{2, 3}, {1, 1}}, {5, 2});
  auto sol = Solution::empty(wide);
  EXPECT_TRUE(fits(wide, sol, 0));
  sol.set_bit(1, true, wide);  // usage [3, 1]
  EXPECT_TRUE(fits(wide, sol, 0));  // 5 <= 5, 2 <= 2

  const auto tight = one_row({1, 1, 1}, {5, 1, 2}, 5);
  auto full = Solution::from_bits(tight, {1, 0, 0});
  EXPECT_FALSE(fits(tight, full, 1));
  EXPECT_FALSE(fits(tight, full, 2));
}

TEST(Fits, SelectedItemIsContractViolation) {
  const auto inst = one_row({1, 1}, {1, 1}, 2);
  const auto sol = Solution::from_bits(inst, {1, 0});
  EXPECT_THROW(fits(inst, sol, 0), ContractError);
}

TEST(InstanceValidation, RejectsBadData) {
  EXPECT_THROW(Instance({0, 1}, {{1, 1}}, {1}), StructuralError);
  EXPECT_THROW(Instance({1, 1}, {{1, -1}}, {1}), StructuralError);
  EXPECT_THROW(Instance({1, 1}, {{1, 1}}, {-1}), StructuralError);
  EXPECT_THROW(Instance({1, 1}, {{1, 1, 1}}, {1}), StructuralError);
  EXPECT_THROW(Instance({1, 1}, {{1, 1}, {1, 1}}, {1}), StructuralError);
  EXPECT_THROW(Instance({}, {}, {}), StructuralError);
  const Value big = std::numeric_limits<Value>::max() / 2 + 1;
  EXPECT_THROW(Instance({big, big}, {{1, 1}}, {1}), StructuralError);
  EXPECT_THROW(Instance({1, 1}, {{big, big}}, {1}), StructuralError);
}

TEST(InstanceValidation, SolutionFromBitsChecksLength) {
  const auto inst = one_row({1, 1}, {1, 1}, 2);
  EXPECT_THROW(Solution::from_bits(inst, {1}), StructuralError);
  EXPECT_THROW(Solution::from_bits(inst, {1, 2}), StructuralError);
}

TEST(SolutionIdentity, IsBitEquality) {
  const auto inst = one_row({5, 5}, {1, 1}, 2);
  const auto a = Solution::from_bits(inst, {1, 0});
  const auto b = Solution::from_bits(inst, {0, 1});
  EXPECT_EQ(a.profit(), b.profit());
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(a == Solution::from_bits(inst, {1, 0}));
}

}  // namespace
}  // namespace mkp
