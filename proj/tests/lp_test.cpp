#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "mkp/lp.hpp"
#include "test_util.hpp"

namespace mkp {
namespace {

// Independent LP optimum by vertex enumeration: every vertex of
// {Wx <= r, 0 <= x <= 1} has all but k variables at a bound and k tight rows
// determining the rest. Exponential; for n <= 10 only.
double vertex_enumeration_optimum(const Instance& inst) {
  const std::size_t n = inst.num_items();
  const std::size_t m = inst.num_resources();
  double best = 0.0;
  auto feasible = [&](const std::vector<double>& x) {
    for (std::size_t i = 0; i < m; ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += static_cast<double>(inst.weight(i, j)) * x[j];
      if (lhs > static_cast<double>(inst.capacity(i)) + 1e-9) return false;
    }
    for (const double v : x)
      if (v < -1e-9 || v > 1.0 + 1e-9) return false;
    return true;
  };
  auto subsets = [](std::size_t universe, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << universe); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::size_t> s;
      for (std::size_t b = 0; b < universe; ++b)
        if (mask >> b & 1u) s.push_back(b);
      out.push_back(s);
    }
    return out;
  };
  for (std::size_t k = 0; k <= std::min(n, m); ++k) {
    for (const auto& free_items : subsets(n, k)) {
      std::vector<std::size_t> fixed;
      for (std::size_t j = 0; j < n; ++j)
        if (std::find(free_items.begin(), free_items.end(), j) == free_items.end()) fixed.push_back(j);
      for (const auto& rows : subsets(m, k)) {
        for (std::uint32_t assign = 0; assign < (1u << fixed.size()); ++assign) {
          std::vector<double> x(n, 0.0);
          for (std::size_t t = 0; t < fixed.size(); ++t) x[fixed[t]] = (assign >> t) & 1u;
          if (k > 0) {
            Eigen::MatrixXd a(k, k);
            Eigen::VectorXd b(k);
            for (std::size_t r = 0; r < k; ++r) {
              double rhs = static_cast<double>(inst.capacity(rows[r]));
              for (const auto j : fixed) rhs -= static_cast<double>(inst.weight(rows[r], j)) * x[j];
              b(r) = rhs;
              for (std::size_t c = 0; c < k; ++c) a(r, c) = static_cast<double>(inst.weight(rows[r], free_items[c]));
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
            if (!lu.isInvertible()) continue;
            const Eigen::VectorXd sol = lu.solve(b);
            for (std::size_t c = 0; c < k; ++c) x[free_items[c]] = sol(c);
          }
          if (!feasible(x)) continue;
          double obj = 0.0;
          for (std::size_t j = 0; j < n; ++j) obj += static_cast<double>(inst.profit(j)) * x[j];
          best = std::max(best, obj);
        }
      }
    }
  }
  return best;
}

void expect_lp_certificates(const Instance& inst, const LpSolution& lp) {
  ASSERT_EQ(lp.status, LpStatus::optimal);
  const std::size_t n = inst.num_items();
  const std::size_t m = inst.num_resources();
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    EXPECT_GE(lp.duals[i], 0.0);
    dual_obj += lp.duals[i] * static_cast<double>(inst.capacity(i));
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += static_cast<double>(inst.weight(i, j)) * lp.primal_values[j];
    EXPECT_LE(lhs, static_cast<double>(inst.capacity(i)) + 1e-6);
  }
  std::size_t fractional = 0;
  for (std::size_t j = 0; j < n; ++j) {
    EXPECT_GE(lp.primal_values[j], 0.0);
    EXPECT_LE(lp.primal_values[j], 1.0);
    if (lp.primal_values[j] > 1e-7 && lp.primal_values[j] < 1.0 - 1e-7) ++fractional;
    double priced = 0.0;
    for (std::size_t i = 0; i < m; ++i) priced += lp.duals[i] * static_cast<double>(inst.weight(i, j));
    const double mu = std::max(0.0, static_cast<double>(inst.profit(j)) - priced);
    EXPECT_GE(priced + mu, static_cast<double>(inst.profit(j)) - 1e-6);
    dual_obj += mu;
  }
  EXPECT_LE(fractional, m);
  EXPECT_NEAR(lp.primal_objective, dual_obj, 1e-6 * (1.0 + std::abs(lp.primal_objective)));
}

TEST(LpRelaxation, WorkedExample) {
  const Instance inst({10, 6}, {{2, 3}}, {4});
  const auto lp = solve_lp_relaxation(inst);
  ASSERT_EQ(lp.status, LpStatus::optimal);
  EXPECT_NEAR(lp.primal_values[0], 1.0, 1e-9);
  EXPECT_NEAR(lp.primal_values[1], 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(lp.primal_objective, 14.0, 1e-9);
  ASSERT_EQ(lp.duals.size(), 1u);
  EXPECT_NEAR(lp.duals[0], 2.0, 1e-9);
  expect_lp_certificates(inst, lp);
}

TEST(LpRelaxation, NothingBinds) {
  const Instance inst({3, 4, 5}, {{1, 1, 1}, {2, 0, 1}}, {10, 10});
  const auto lp = solve_lp_relaxation(inst);
  ASSERT_EQ(lp.status, LpStatus::optimal);
  for (const double x : lp.primal_values) EXPECT_NEAR(x, 1.0, 1e-12);
  for (const double l : lp.duals) EXPECT_NEAR(l, 0.0, 1e-12);
  EXPECT_NEAR(lp.primal_objective, 12.0, 1e-12);
}

TEST(LpRelaxation, ZeroCapacityGivesZero) {
  const Instance inst({3, 4}, {{1, 2}}, {0});
  const auto lp = solve_lp_relaxation(inst);
  ASSERT_EQ(lp.status, LpStatus::optimal);
  EXPECT_NEAR(lp.primal_objective, 0.0, 1e-12);
}

TEST(LpRelaxation, MatchesVertexEnumeration) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    const auto inst = testing::random_instance(rng, 8, 3);
    const auto lp = solve_lp_relaxation(inst);
    expect_lp_certificates(inst, lp);
    EXPECT_NEAR(lp.primal_objective, vertex_enumeration_optimum(inst), 1e-6) << "trial " << t;
  }
}

TEST(LpRelaxation, CertificatesOnLargerInstances) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    const auto inst = testing::random_instance(rng, 50 + rng() % 100, 1 + rng() % 30, 1000, 1000);
    expect_lp_certificates(inst, solve_lp_relaxation(inst));
  }
}

TEST(LpRelaxation, DegenerateDuplicateColumns) {
  // Identical items and rows provoke degenerate pivots.
  const Instance inst({5, 5, 5, 5, 5, 5}, {{2, 2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1}},
                      {5, 5, 3});
  const auto lp = solve_lp_relaxation(inst);
  expect_lp_certificates(inst, lp);
  EXPECT_NEAR(lp.primal_objective, 12.5, 1e-9);
}

TEST(LpRelaxation, IterationCapReportsFailure) {
  const Instance inst({10, 6}, {{2, 3}}, {4});
  LpOptions opt;
  opt.iteration_factor = 0;
  EXPECT_EQ(solve_lp_relaxation(inst, opt).status, LpStatus::failed);
}

TEST(Efficiencies, DirectFormula) {
  const Instance inst({6, 10}, {{2, 5}}, {4});
  const auto eff = compute_efficiencies(inst, {1.0});
  EXPECT_DOUBLE_EQ(eff.values[0], 3.0);
  EXPECT_DOUBLE_EQ(eff.values[1], 2.0);
  EXPECT_DOUBLE_EQ(eff.scaled[0], 1.0);
  EXPECT_DOUBLE_EQ(eff.scaled[1], 0.0);

  const Instance single({10}, {{2}}, {4});
  EXPECT_DOUBLE_EQ(compute_efficiencies(single, {2.0}).values[0], 2.5);
}

TEST(Efficiencies, ConstantScalesToHalf) {
  const Instance inst({2, 4, 6}, {{1, 2, 3}}, {4});
  const auto eff = compute_efficiencies(inst, {1.0});
  for (const double s : eff.scaled) EXPECT_DOUBLE_EQ(s, 0.5);
}

TEST(Efficiencies, ZeroDenominatorIsDegenerate) {
  const Instance inst({6, 10}, {{2, 5}, {1, 1}}, {4, 4});
  EXPECT_THROW(compute_efficiencies(inst, {0.0, 0.0}), DegenerateWeightsError);
  const Instance unpriced({6, 10}, {{2, 0}, {0, 1}}, {4, 4});
  try {
    compute_efficiencies(unpriced, {1.0, 0.0});
    FAIL() << "expected DegenerateWeightsError";
  } catch (const DegenerateWeightsError& e) {
    EXPECT_EQ(e.item(), 1u);
  }
  EXPECT_THROW(compute_efficiencies(inst, {1.0}), StructuralError);
}

TEST(Efficiencies, FallbackToUniformWeights) {
  // Everything fits: all duals are zero, so the denominators vanish.
  const Instance loose({3, 4}, {{1, 1}, {1, 3}}, {10, 10});
  const auto w = dual_efficiencies(loose);
  EXPECT_EQ(w.source, WeightSource::uniform_fallback);
  EXPECT_DOUBLE_EQ(w.efficiency.values[0], 1.5);
  EXPECT_DOUBLE_EQ(w.efficiency.values[1], 1.0);

  const Instance binding({10, 6}, {{2, 3}}, {4});
  EXPECT_EQ(dual_efficiencies(binding).source, WeightSource::dual);
}

TEST(Efficiencies, WeightlessItemRankedFirst) {
  const Instance inst({3, 1, 4}, {{1, 0, 2}}, {100});
  const auto w = dual_efficiencies(inst);
  EXPECT_EQ(w.source, WeightSource::uniform_fallback);
  EXPECT_EQ(dual_ordering(w.efficiency).perm.front(), 1u);
}

TEST(DualOrdering, Examples) {
  EXPECT_EQ(dual_ordering({{3.0, 2.0}, {1.0, 0.0}}).perm, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(dual_ordering({{1.0, 1.0, 1.0}, {0.5, 0.5, 0.5}}).perm, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(dual_ordering({{0.2, 0.9, 0.5}, {0.0, 1.0, 3.0 / 7.0}}).perm,
            (std::vector<std::size_t>{1, 2, 0}));
}

TEST(DualOrdering, AlwaysSortedPermutation) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coarse(0, 9);
  for (int t = 0; t < 500; ++t) {
    EfficiencyVector eff;
    eff.values.resize(1 + rng() % 40);
    for (auto& v : eff.values) v = coarse(rng) / 3.0;
    eff.scaled = min_max_scale(eff.values);
    const auto ord = dual_ordering(eff);
    ASSERT_TRUE(is_permutation_of_iota(ord.perm));
    for (std::size_t k = 0; k + 1 < ord.size(); ++k) {
      ASSERT_GE(eff.values[ord.perm[k]], eff.values[ord.perm[k + 1]]);
      if (eff.values[ord.perm[k]] == eff.values[ord.perm[k + 1]]) ASSERT_LT(ord.perm[k], ord.perm[k + 1]);
    }
  }
}

}  // namespace
}  // namespace mkp
