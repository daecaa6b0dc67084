#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mkp/error.hpp"

namespace mkp {

// The item order consulted by repair. Position 0 holds the most efficient
// item; eff_scaled is indexed by item, not by position.
struct EfficiencyOrdering {
  std::vector<std::size_t> perm;
  std::vector<double> eff_scaled;

  std::size_t size() const noexcept { return perm.size(); }
  friend bool operator==(const EfficiencyOrdering&, const EfficiencyOrdering&) = default;
};

// Position range [lo, hi) over EfficiencyOrdering::perm.
struct GroupRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const noexcept { return hi - lo; }
  friend bool operator==(const GroupRange&, const GroupRange&) = default;
};

struct EfficiencyGroups {
  int decimals = 1;
  std::vector<GroupRange> groups;

  bool empty() const noexcept { return groups.empty(); }
};

// Integer key of x rounded half away from zero at d decimals (x >= 0), i.e.
// floor(x * 10^d + 0.5). Comparing keys avoids floating equality on the
// rounded values themselves.
inline std::int64_t rounding_key(double x, int decimals) {
  return static_cast<std::int64_t>(std::floor(x * std::pow(10.0, decimals) + 0.5));
}

inline double round_decimals(double x, int decimals) {
  return static_cast<double>(rounding_key(x, decimals)) / std::pow(10.0, decimals);
}

inline bool is_permutation_of_iota(const std::vector<std::size_t>& perm) {
  std::vector<std::uint8_t> seen(perm.size(), 0);
  for (const auto v : perm) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

/**
 * Maximal runs of positions whose rounded scaled efficiencies coincide.
 * Runs of length one are not groups and are left out.
 */
inline EfficiencyGroups get_efficiency_groups(const EfficiencyOrdering& ordering, int decimals) {
  if (decimals < 1) throw ContractError("rounding decimals must be at least 1");
  if (ordering.eff_scaled.size() != ordering.perm.size()) {
    throw StructuralError("ordering and efficiency vector differ in length");
  }
  EfficiencyGroups out;
  out.decimals = decimals;
  const std::size_t n = ordering.size();
  std::size_t lo = 0;
  while (lo < n) {
    const auto key = rounding_key(ordering.eff_scaled[ordering.perm[lo]], decimals);
    std::size_t hi = lo + 1;
    while (hi < n && rounding_key(ordering.eff_scaled[ordering.perm[hi]], decimals) == key) ++hi;
    if (hi - lo >= 2) out.groups.push_back({lo, hi});
    lo = hi;
  }
  return out;
}

// Uniform draw from [0, bound).
template <typename Rng>
std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

// Swaps two distinct, uniformly chosen positions inside one uniformly chosen
// group. Returns false (and leaves the ordering untouched) without groups.
template <typename Rng>
bool rg_swap(EfficiencyOrdering& ordering, const EfficiencyGroups& groups, Rng& rng) {
  if (groups.empty()) return false;
  const GroupRange g = groups.groups[uniform_index(rng, groups.groups.size())];
  const std::size_t a = uniform_index(rng, g.size());
  std::size_t b = uniform_index(rng, g.size() - 1);
  if (b >= a) ++b;
  std::swap(ordering.perm[g.lo + a], ordering.perm[g.lo + b]);
  return true;
}

// Fisher-Yates over the positions of one uniformly chosen group.
template <typename Rng>
bool rg_shuffle(EfficiencyOrdering& ordering, const EfficiencyGroups& groups, Rng& rng) {
  if (groups.empty()) return false;
  const GroupRange g = groups.groups[uniform_index(rng, groups.groups.size())];
  for (std::size_t k = g.size() - 1; k > 0; --k) {
    const std::size_t r = uniform_index(rng, k + 1);
    std::swap(ordering.perm[g.lo + k], ordering.perm[g.lo + r]);
  }
  return true;
}

}  // namespace mkp
