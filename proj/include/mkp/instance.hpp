#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mkp/error.hpp"

namespace mkp {

using Value = std::int64_t;
using Bits = std::vector<std::uint8_t>;

/**
 * A multidimensional knapsack instance: n items with profits p_j, m resources
 * with capacities r_i, and a weight w_ij for every (resource, item) pair.
 *
 * All data is integral. The constructor validates signs and dimensions and
 * rejects data whose row or profit sums would overflow 64-bit accumulators,
 * so every cached sum in Solution is exact.
 *
 * Weights are stored item-major so that the inner loops of repair (which
 * touch every resource of one item) stay contiguous.
 */
class Instance {
 public:
  Instance() = default;

  // weights is given row-wise: weights[i][j] is the consumption of resource i
  // by item j.
  Instance(std::vector<Value> profits, const std::vector<std::vector<Value>>& weights,
           std::vector<Value> capacities, std::string name = {},
           std::optional<Value> best_known = std::nullopt)
      : profits_(std::move(profits)),
        capacities_(std::move(capacities)),
        name_(std::move(name)),
        best_known_(best_known) {
    const std::size_t n = profits_.size();
    const std::size_t m = capacities_.size();
    if (n == 0) throw StructuralError("instance has no items");
    if (m == 0) throw StructuralError("instance has no resources");
    if (weights.size() != m) {
      throw StructuralError("weight matrix has " + std::to_string(weights.size()) +
                            " rows, expected " + std::to_string(m));
    }
    Value profit_sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (profits_[j] <= 0) {
        throw StructuralError("profit of item " + std::to_string(j) + " must be positive");
      }
      if (__builtin_add_overflow(profit_sum, profits_[j], &profit_sum)) {
        throw StructuralError("profit sum overflows 64-bit range");
      }
    }
    weights_.resize(n * m);
    for (std::size_t i = 0; i < m; ++i) {
      if (weights[i].size() != n) {
        throw StructuralError("weight row " + std::to_string(i) + " has " +
                              std::to_string(weights[i].size()) + " entries, expected " +
                              std::to_string(n));
      }
      if (capacities_[i] < 0) {
        throw StructuralError("capacity of resource " + std::to_string(i) + " is negative");
      }
      Value row_sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Value w = weights[i][j];
        if (w < 0) {
          throw StructuralError("weight (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is negative");
        }
        Value capped = 0;
        if (__builtin_add_overflow(row_sum, w, &row_sum) ||
            __builtin_add_overflow(row_sum, capacities_[i], &capped)) {
          throw StructuralError("weight row " + std::to_string(i) + " overflows 64-bit range");
        }
        weights_[j * m + i] = w;
      }
    }
  }

  std::size_t num_items() const noexcept { return profits_.size(); }
  std::size_t num_resources() const noexcept { return capacities_.size(); }

  Value profit(std::size_t j) const { return profits_[j]; }
  Value capacity(std::size_t i) const { return capacities_[i]; }
  Value weight(std::size_t i, std::size_t j) const { return weights_[j * num_resources() + i]; }

  // Consumption of item j across all m resources.
  std::span<const Value> item_weights(std::size_t j) const {
    return {weights_.data() + j * num_resources(), num_resources()};
  }

  const std::vector<Value>& profits() const noexcept { return profits_; }
  const std::vector<Value>& capacities() const noexcept { return capacities_; }

  // Row-wise copy of the weight matrix.
  std::vector<std::vector<Value>> weight_rows() const {
    std::vector<std::vector<Value>> rows(num_resources(), std::vector<Value>(num_items()));
    for (std::size_t i = 0; i < num_resources(); ++i)
      for (std::size_t j = 0; j < num_items(); ++j) rows[i][j] = weight(i, j);
    return rows;
  }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::optional<Value>& best_known() const noexcept { return best_known_; }
  void set_best_known(std::optional<Value> v) { best_known_ = v; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Value> profits_;
  std::vector<Value> weights_;  // item-major, n * m
  std::vector<Value> capacities_;
  std::string name_;
  std::optional<Value> best_known_;
};

/**
 * A binary selection together with its cached objective value and per-resource
 * consumption. Caches are kept coherent by set_bit; bits are never written
 * directly from outside.
 */
class Solution {
 public:
  Solution() = default;

  static Solution empty(const Instance& inst) {
    Solution s;
    s.bits_.assign(inst.num_items(), 0);
    s.usage_.assign(inst.num_resources(), 0);
    return s;
  }

  static Solution from_bits(const Instance& inst, Bits bits) {
    if (bits.size() != inst.num_items()) {
      throw StructuralError("bit vector has length " + std::to_string(bits.size()) +
                            ", instance has " + std::to_string(inst.num_items()) + " items");
    }
    Solution s;
    s.usage_.assign(inst.num_resources(), 0);
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] > 1) throw StructuralError("bit " + std::to_string(j) + " is not binary");
      if (!bits[j]) continue;
      s.profit_ += inst.profit(j);
      const auto w = inst.item_weights(j);
      for (std::size_t i = 0; i < w.size(); ++i) s.usage_[i] += w[i];
    }
    s.bits_ = std::move(bits);
    return s;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool selected(std::size_t j) const { return bits_[j] != 0; }
  const Bits& bits() const noexcept { return bits_; }
  Value profit() const noexcept { return profit_; }
  const std::vector<Value>& usage() const noexcept { return usage_; }

  // O(m) update of bit j and both caches; no-op when the bit already holds value.
  void set_bit(std::size_t j, bool value, const Instance& inst) {
    if (j >= bits_.size()) {
      throw StructuralError("item index " + std::to_string(j) + " out of range");
    }
    if (selected(j) == value) return;
    bits_[j] = value ? 1 : 0;
    const auto w = inst.item_weights(j);
    if (value) {
      profit_ += inst.profit(j);
      for (std::size_t i = 0; i < w.size(); ++i) usage_[i] += w[i];
    } else {
      profit_ -= inst.profit(j);
      for (std::size_t i = 0; i < w.size(); ++i) usage_[i] -= w[i];
    }
  }

  // Identity is the selection vector; the caches follow from it.
  friend bool operator==(const Solution& a, const Solution& b) { return a.bits_ == b.bits_; }

 private:
  Bits bits_;
  Value profit_ = 0;
  std::vector<Value> usage_;
};

inline void check_dimensions(const Instance& inst, const Solution& sol) {
  if (sol.size() != inst.num_items() || sol.usage().size() != inst.num_resources()) {
    throw StructuralError("solution dimensions do not match instance");
  }
}

// f(x) = sum_j p_j x_j
inline Value objective(const Instance& inst, std::span<const std::uint8_t> bits) {
  if (bits.size() != inst.num_items()) {
    throw StructuralError("bit vector has length " + std::to_string(bits.size()) +
                          ", instance has " + std::to_string(inst.num_items()) + " items");
  }
  Value total = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) total += inst.profit(j);
  return total;
}

inline bool is_feasible(const Instance& inst, const Solution& sol) {
  check_dimensions(inst, sol);
  const auto& usage = sol.usage();
  for (std::size_t i = 0; i < usage.size(); ++i)
    if (usage[i] > inst.capacity(i)) return false;
  return true;
}

inline void set_bit(Solution& sol, std::size_t j, bool value, const Instance& inst) {
  sol.set_bit(j, value, inst);
}

// Whether unselected item j can be added without exceeding any capacity.
inline bool fits(const Instance& inst, const Solution& sol, std::size_t j) {
  if (j >= sol.size()) throw StructuralError("item index " + std::to_string(j) + " out of range");
  if (sol.selected(j)) {
    throw ContractError("fits() called for item " + std::to_string(j) + " already selected");
  }
  const auto w = inst.item_weights(j);
  const auto& usage = sol.usage();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (usage[i] + w[i] > inst.capacity(i)) return false;
  return true;
}

}  // namespace mkp
