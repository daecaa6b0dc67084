#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mkp/instance.hpp"

namespace mkp {

/**
 * Correlated random instances in the style of the OR-Library MKP sets:
 * w_ij uniform on [weight_min, weight_max], r_i = floor(tightness * sum_j w_ij)
 * and p_j = round(sum_i w_ij / m) + floor(profit_noise * U(0,1)).
 */
struct GeneratorConfig {
  std::size_t items = 100;
  std::size_t resources = 5;
  Value weight_min = 1;
  Value weight_max = 1000;
  double tightness = 0.25;
  double profit_noise = 500.0;
  std::string name = "generated";
};

inline Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Value> weight(cfg.weight_min, cfg.weight_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = cfg.items;
  const std::size_t m = cfg.resources;
  std::vector<std::vector<Value>> w(m, std::vector<Value>(n));
  for (auto& row : w)
    for (auto& x : row) x = weight(rng);
  std::vector<Value> profits(n);
  for (std::size_t j = 0; j < n; ++j) {
    Value column = 0;
    for (std::size_t i = 0; i < m; ++i) column += w[i][j];
    const double base = std::round(static_cast<double>(column) / static_cast<double>(m));
    profits[j] = std::max<Value>(1, static_cast<Value>(base + std::floor(cfg.profit_noise * unit(rng))));
  }
  std::vector<Value> capacities(m);
  for (std::size_t i = 0; i < m; ++i) {
    Value row = 0;
    for (const Value x : w[i]) row += x;
    capacities[i] = static_cast<Value>(std::floor(cfg.tightness * static_cast<double>(row)));
  }
  return Instance(std::move(profits), w, std::move(capacities), cfg.name);
}

}  // namespace mkp
