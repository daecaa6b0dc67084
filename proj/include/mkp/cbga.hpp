#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mkp/instance.hpp"
#include "mkp/lp.hpp"
#include "mkp/ordering.hpp"
#include "mkp/repair.hpp"

namespace mkp {

using Rng = std::mt19937_64;

enum class Operator { none, rg_swap, rg_shuffle };

inline const char* to_string(Operator op) {
  switch (op) {
    case Operator::rg_swap: return "swap";
    case Operator::rg_shuffle: return "shuffle";
    default: return "none";
  }
}

struct GaConfig {
  std::size_t population_size = 100;
  std::uint64_t max_evaluations = 1'000'000;
  Operator op = Operator::none;
  int decimals = 1;  // ignored when op == none
  std::uint64_t seed = 0;
  std::optional<Value> target;
};

inline void validate(const GaConfig& cfg) {
  if (cfg.population_size < 2) throw ContractError("population size must be at least 2");
  if (cfg.max_evaluations < cfg.population_size) {
    throw ContractError("evaluation budget must be at least the population size");
  }
  if (cfg.op != Operator::none && cfg.decimals < 1) {
    throw ContractError("rounding decimals must be at least 1");
  }
}

// Fixed-size set of pairwise distinct feasible solutions.
class Population {
 public:
  Population() = default;

  std::size_t size() const noexcept { return members_.size(); }
  const Solution& operator[](std::size_t k) const { return members_[k]; }
  const std::vector<Solution>& members() const noexcept { return members_; }

  const Solution& worst() const { return members_[worst_]; }
  const Solution& best() const { return members_[best_]; }

  bool contains(const Solution& s) const {
    return std::any_of(members_.begin(), members_.end(), [&](const Solution& m) {
      return m.profit() == s.profit() && m == s;
    });
  }

  // Used while building the initial population only.
  void add(Solution s) {
    members_.push_back(std::move(s));
    refresh();
  }

  void replace_worst(Solution s) {
    members_[worst_] = std::move(s);
    refresh();
  }

 private:
  void refresh() {
    worst_ = best_ = 0;
    for (std::size_t k = 1; k < members_.size(); ++k) {
      if (members_[k].profit() < members_[worst_].profit()) worst_ = k;
      if (members_[k].profit() > members_[best_].profit()) best_ = k;
    }
  }

  std::vector<Solution> members_;
  std::size_t worst_ = 0;
  std::size_t best_ = 0;
};

enum class StopReason { target_reached, budget_exhausted };

inline const char* to_string(StopReason r) {
  return r == StopReason::target_reached ? "target_reached" : "budget_exhausted";
}

struct RunStats {
  Value best_value = 0;
  Solution best_solution;
  std::uint64_t evaluations = 0;
  std::uint64_t generations = 0;
  std::uint64_t randomizations = 0;
  // Accepted replacements made after the first randomization event.
  std::uint64_t improvements_after_randomization = 0;
  // Initial members admitted despite duplicating an existing member.
  std::uint64_t duplicate_admissions = 0;
  std::size_t num_groups = 0;
  double wall_time = 0.0;
  StopReason stop_reason = StopReason::budget_exhausted;
  WeightSource weight_source = WeightSource::dual;
};

struct GenerationTrace {
  std::uint64_t generation = 0;
  Value best_value = 0;
  std::size_t improvements = 0;
  bool randomized = false;
};

using ProgressCallback = std::function<void(const GenerationTrace&)>;

// Each bit set with probability 1/2, drawn 64 positions per generator call.
inline Bits random_bits(std::size_t n, Rng& rng) {
  Bits bits(n);
  std::uint64_t word = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j % 64 == 0) word = rng();
    bits[j] = static_cast<std::uint8_t>((word >> (j % 64)) & 1u);
  }
  return bits;
}

// Each child bit taken from a where the mask bit is 0, from b otherwise.
inline Bits uniform_crossover(const Bits& a, const Bits& b, Rng& rng) {
  const Bits mask = random_bits(a.size(), rng);
  Bits child(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) child[j] = mask[j] ? b[j] : a[j];
  return child;
}

// Flips two distinct uniformly chosen positions (the only one when n == 1).
inline void flip_two_random_bits(Bits& bits, Rng& rng) {
  const std::size_t n = bits.size();
  if (n == 0) return;
  const std::size_t a = uniform_index(rng, n);
  bits[a] ^= 1u;
  if (n == 1) return;
  std::size_t b = uniform_index(rng, n - 1);
  if (b >= a) ++b;
  bits[b] ^= 1u;
}

// Two draws with replacement; the higher profit wins, ties keep the first.
inline const Solution& binary_tournament(const Population& pop, Rng& rng) {
  const Solution& first = pop[uniform_index(rng, pop.size())];
  const Solution& second = pop[uniform_index(rng, pop.size())];
  return second.profit() > first.profit() ? second : first;
}

// Tournament, tournament, uniform crossover, two-bit mutation. Unrepaired.
inline Solution new_solution(const Population& pop, const Instance& inst, Rng& rng) {
  const Solution& p1 = binary_tournament(pop, rng);
  const Solution& p2 = binary_tournament(pop, rng);
  Bits child = uniform_crossover(p1.bits(), p2.bits(), rng);
  flip_two_random_bits(child, rng);
  return Solution::from_bits(inst, std::move(child));
}

inline bool target_reached(const GaConfig& cfg, Value best) {
  return cfg.target && best >= *cfg.target;
}

/**
 * Up to N attempts to improve the population. An attempt is accepted when the
 * repaired candidate is not already a member and its profit is strictly
 * greater than the worst member's, which it then replaces. Stops early when
 * the budget runs out or the target is met. Returns the number of accepted
 * candidates.
 */
inline std::size_t run_generation(Population& pop, const EfficiencyOrdering& ordering,
                                  const Instance& inst, Rng& rng, RunStats& stats,
                                  const GaConfig& cfg) {
  std::size_t improvements = 0;
  for (std::size_t attempt = 0; attempt < cfg.population_size; ++attempt) {
    if (stats.evaluations >= cfg.max_evaluations) break;
    Solution child = new_solution(pop, inst, rng);
    heuristic_repair(child, ordering, inst);
    ++stats.evaluations;
    if (child.profit() > pop.worst().profit() && !pop.contains(child)) {
      pop.replace_worst(std::move(child));
      ++improvements;
      if (stats.randomizations > 0) ++stats.improvements_after_randomization;
      if (target_reached(cfg, pop.best().profit())) break;
    }
  }
  return improvements;
}

// Random initial members, each repaired. Duplicates are redrawn while fewer
// than 50 N redraws have been spent and budget remains; after that they are
// admitted and counted in stats.duplicate_admissions.
inline Population initial_population(const Instance& inst, const EfficiencyOrdering& ordering,
                                     Rng& rng, RunStats& stats, const GaConfig& cfg) {
  Population pop;
  std::size_t redraws = 0;
  const std::size_t redraw_limit = 50 * cfg.population_size;
  while (pop.size() < cfg.population_size) {
    Solution s = Solution::from_bits(inst, random_bits(inst.num_items(), rng));
    heuristic_repair(s, ordering, inst);
    ++stats.evaluations;
    if (pop.contains(s)) {
      if (redraws < redraw_limit && stats.evaluations < cfg.max_evaluations) {
        ++redraws;
        continue;
      }
      ++stats.duplicate_admissions;
    }
    pop.add(std::move(s));
  }
  return pop;
}

/**
 * One complete run: dual efficiencies and ordering, efficiency groups (when
 * an operator is configured), repaired random population, then generations
 * until the target or the evaluation budget is reached. A generation with no
 * accepted candidate triggers one application of the configured operator.
 *
 * All random draws come from one generator seeded with cfg.seed, consumed in
 * program order, so the result depends only on the instance and cfg.
 */
inline RunStats run(const Instance& inst, const GaConfig& cfg, const ProgressCallback& progress = {}) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  RunStats stats;
  Rng rng(cfg.seed);

  const WeightedEfficiencies weighted = dual_efficiencies(inst);
  stats.weight_source = weighted.source;
  EfficiencyOrdering ordering = dual_ordering(weighted.efficiency);
  EfficiencyGroups groups;
  if (cfg.op != Operator::none) {
    groups = get_efficiency_groups(ordering, cfg.decimals);
    stats.num_groups = groups.groups.size();
  }

  Population pop = initial_population(inst, ordering, rng, stats, cfg);

  while (!target_reached(cfg, pop.best().profit()) && stats.evaluations < cfg.max_evaluations) {
    const std::size_t improvements = run_generation(pop, ordering, inst, rng, stats, cfg);
    ++stats.generations;
    const bool continuing =
        !target_reached(cfg, pop.best().profit()) && stats.evaluations < cfg.max_evaluations;
    bool randomized = false;
    if (improvements == 0 && cfg.op != Operator::none && continuing) {
      randomized = cfg.op == Operator::rg_swap ? rg_swap(ordering, groups, rng)
                                               : rg_shuffle(ordering, groups, rng);
      if (randomized) ++stats.randomizations;
    }
    if (progress) progress({stats.generations, pop.best().profit(), improvements, randomized});
  }

  stats.best_solution = pop.best();
  stats.best_value = stats.best_solution.profit();
  stats.stop_reason = target_reached(cfg, stats.best_value) ? StopReason::target_reached
                                                            : StopReason::budget_exhausted;
  stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

}  // namespace mkp
