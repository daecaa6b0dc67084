#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "mkp/instance.hpp"
#include "mkp/lp.hpp"

namespace mkp {

inline constexpr std::size_t kMaxEnumerationItems = 25;

struct ExactOptimum {
  Value value = 0;
  Bits bits;
};

/**
 * Exact optimum by plain 2^n enumeration. Among optimal selections the
 * lexicographically smallest bit vector (item 0 most significant) is returned.
 * Refuses instances with more than kMaxEnumerationItems items.
 */
inline ExactOptimum enumerate_optimum(const Instance& inst) {
  const std::size_t n = inst.num_items();
  const std::size_t m = inst.num_resources();
  if (n > kMaxEnumerationItems) {
    throw ContractError("enumeration refused: " + std::to_string(n) + " items exceeds limit of " +
                        std::to_string(kMaxEnumerationItems));
  }
  // Item j maps to bit (n - 1 - j), so increasing masks are increasing
  // bit vectors in lexicographic order; keeping the first strict maximum
  // gives the smallest one.
  ExactOptimum best;
  std::uint64_t best_mask = 0;
  std::vector<Value> usage(m);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::fill(usage.begin(), usage.end(), 0);
    Value profit = 0;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (!((mask >> (n - 1 - j)) & 1u)) continue;
      profit += inst.profit(j);
      const auto w = inst.item_weights(j);
      for (std::size_t i = 0; i < m; ++i) {
        usage[i] += w[i];
        if (usage[i] > inst.capacity(i)) ok = false;
      }
    }
    if (ok && profit > best.value) {
      best.value = profit;
      best_mask = mask;
    }
  }
  best.bits.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) best.bits[j] = (best_mask >> (n - 1 - j)) & 1u;
  return best;
}

// The LP relaxation must bound the integer optimum from above.
inline bool lp_bound_check(const Instance& inst, const LpSolution& lp) {
  if (lp.status != LpStatus::optimal) return false;
  return lp.primal_objective >= static_cast<double>(enumerate_optimum(inst).value) - 1e-6;
}

}  // namespace mkp
