#pragma once

#include <cstddef>
#include <span>

#include "mkp/instance.hpp"
#include "mkp/ordering.hpp"

namespace mkp {

/**
 * Two-phase greedy repair driven by an item ordering.
 *
 * DROP walks the ordering from its worst position towards its best and
 * removes selected items, checking feasibility before every removal so it
 * stops as soon as the solution fits. ADD then walks from the best position
 * and inserts every unselected item that fits, including items DROP just
 * removed. The result is feasible and maximal. The solution is modified in
 * place.
 */
inline void heuristic_repair(Solution& sol, const EfficiencyOrdering& ordering, const Instance& inst) {
  check_dimensions(inst, sol);
  if (ordering.size() != inst.num_items()) {
    throw StructuralError("ordering length does not match instance");
  }
  const auto& perm = ordering.perm;
  for (std::size_t pos = perm.size(); pos-- > 0;) {
    if (is_feasible(inst, sol)) break;
    sol.set_bit(perm[pos], false, inst);
  }
  for (const std::size_t j : perm) {
    if (!sol.selected(j) && fits(inst, sol, j)) sol.set_bit(j, true, inst);
  }
}

inline void repair_population(std::span<Solution> population, const EfficiencyOrdering& ordering,
                              const Instance& inst) {
  for (auto& sol : population) heuristic_repair(sol, ordering, inst);
}

// Feasible and no unselected item fits.
inline bool is_maximal(const Instance& inst, const Solution& sol) {
  for (std::size_t j = 0; j < sol.size(); ++j)
    if (!sol.selected(j) && fits(inst, sol, j)) return false;
  return true;
}

}  // namespace mkp
