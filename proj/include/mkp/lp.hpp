#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "mkp/error.hpp"
#include "mkp/instance.hpp"
#include "mkp/ordering.hpp"

namespace mkp {

enum class LpStatus { optimal, failed };

struct LpSolution {
  std::vector<double> primal_values;  // relaxed x_j in [0, 1]
  double primal_objective = 0.0;
  std::vector<double> duals;  // capacity-row duals, non-negative
  LpStatus status = LpStatus::failed;
  std::size_t iterations = 0;
};

struct LpOptions {
  double tolerance = 1e-9;
  // Dantzig pricing until this many iterations (in units of n + m), then Bland.
  std::size_t dantzig_factor = 5;
  std::size_t iteration_factor = 50;
  std::size_t refactor_every = 32;
};

namespace detail {

/**
 * Bounded-variable primal simplex for
 *
 *     max p.x  s.t.  W x + s = r,  0 <= x <= 1,  s >= 0.
 *
 * Dense explicit basis inverse, updated by elementary row operations and
 * refactored periodically. The all-slack basis is feasible because r >= 0,
 * so no phase one is needed.
 */
class BoundedSimplex {
 public:
  BoundedSimplex(const Instance& inst, const LpOptions& opt)
      : inst_(inst), opt_(opt), n_(inst.num_items()), m_(inst.num_resources()) {
    at_upper_.assign(n_ + m_, false);
    basic_row_.assign(n_ + m_, kNonbasic);
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      basic_row_[n_ + i] = static_cast<long>(i);
    }
    binv_ = Eigen::MatrixXd::Identity(static_cast<long>(m_), static_cast<long>(m_));
    xb_.resize(static_cast<long>(m_));
    for (std::size_t i = 0; i < m_; ++i) xb_(static_cast<long>(i)) = static_cast<double>(inst.capacity(i));
  }

  LpSolution solve() {
    LpSolution out;
    const std::size_t total = n_ + m_;
    const std::size_t cap = opt_.iteration_factor * total;
    const std::size_t bland_after = opt_.dantzig_factor * total;
    const double tol = opt_.tolerance;

    std::size_t iter = 0;
    bool optimal = false;
    for (; iter < cap; ++iter) {
      if (iter > 0 && iter % opt_.refactor_every == 0 && !refactor()) return out;
      const Eigen::RowVectorXd y = prices();
      const bool bland = iter >= bland_after;

      // Entering variable.
      std::size_t enter = total;
      double best = 0.0;
      for (std::size_t j = 0; j < total; ++j) {
        if (basic_row_[j] != kNonbasic) continue;
        const double d = reduced_cost(j, y);
        const bool improving = at_upper_[j] ? d < -tol : d > tol;
        if (!improving) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = j;
        }
      }
      if (enter == total) {
        optimal = true;
        break;
      }

      const Eigen::VectorXd alpha = binv_ * column(enter);
      const double dir = at_upper_[enter] ? -1.0 : 1.0;

      // Ratio test: x_B(t) = x_B - dir * t * alpha.
      double step = upper(enter);
      long leave = -1;
      bool leave_to_upper = false;
      double leave_pivot = 0.0;
      for (long k = 0; k < static_cast<long>(m_); ++k) {
        const double a = dir * alpha(k);
        const std::size_t var = basis_[static_cast<std::size_t>(k)];
        double limit;
        bool to_upper;
        if (a > tol) {
          limit = std::max(0.0, xb_(k)) / a;
          to_upper = false;
        } else if (a < -tol && std::isfinite(upper(var))) {
          limit = std::max(0.0, upper(var) - xb_(k)) / -a;
          to_upper = true;
        } else {
          continue;
        }
        bool take = limit < step - tol;
        if (!take && leave >= 0 && std::abs(limit - step) <= tol) {
          // Tie: Bland keeps the lowest variable index, otherwise prefer the
          // larger pivot for stability.
          take = bland ? var < basis_[static_cast<std::size_t>(leave)]
                       : std::abs(a) > std::abs(leave_pivot);
        }
        if (take) {
          step = limit;
          leave = k;
          leave_to_upper = to_upper;
          leave_pivot = a;
        }
      }
      if (!std::isfinite(step)) return out;  // unbounded cannot occur for valid data

      xb_ -= (dir * step) * alpha;
      if (leave < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }

      const double entering_value = (at_upper_[enter] ? upper(enter) : 0.0) + dir * step;
      const std::size_t leaving = basis_[static_cast<std::size_t>(leave)];
      basic_row_[leaving] = kNonbasic;
      at_upper_[leaving] = leave_to_upper;
      basis_[static_cast<std::size_t>(leave)] = enter;
      basic_row_[enter] = leave;
      at_upper_[enter] = false;
      xb_(leave) = entering_value;

      const double pivot = alpha(leave);
      if (std::abs(pivot) < 1e-12) return out;
      binv_.row(leave) /= pivot;
      for (long k = 0; k < static_cast<long>(m_); ++k) {
        if (k == leave || alpha(k) == 0.0) continue;
        binv_.row(k) -= alpha(k) * binv_.row(leave);
      }
    }
    out.iterations = iter;
    if (!optimal || !refactor()) return out;

    const Eigen::RowVectorXd y = prices();
    out.primal_values.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      double v = at_upper_[j] ? 1.0 : 0.0;
      if (basic_row_[j] != kNonbasic) v = xb_(basic_row_[j]);
      if (v < -1e-7 || v > 1.0 + 1e-7) return out;
      out.primal_values[j] = std::clamp(v, 0.0, 1.0);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_row_[n_ + i] != kNonbasic && xb_(basic_row_[n_ + i]) < -1e-7) return out;
    }
    out.primal_objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      out.primal_objective += static_cast<double>(inst_.profit(j)) * out.primal_values[j];
    out.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double lambda = y(static_cast<long>(i));
      if (lambda < -1e-7) return out;
      out.duals[i] = std::max(0.0, lambda);
    }
    out.status = LpStatus::optimal;
    return out;
  }

 private:
  static constexpr long kNonbasic = -1;

  double upper(std::size_t var) const {
    return var < n_ ? 1.0 : std::numeric_limits<double>::infinity();
  }
  double cost(std::size_t var) const {
    return var < n_ ? static_cast<double>(inst_.profit(var)) : 0.0;
  }

  Eigen::VectorXd column(std::size_t var) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<long>(m_));
    if (var < n_) {
      const auto w = inst_.item_weights(var);
      for (std::size_t i = 0; i < m_; ++i) a(static_cast<long>(i)) = static_cast<double>(w[i]);
    } else {
      a(static_cast<long>(var - n_)) = 1.0;
    }
    return a;
  }

  double reduced_cost(std::size_t var, const Eigen::RowVectorXd& y) const {
    if (var >= n_) return -y(static_cast<long>(var - n_));
    const auto w = inst_.item_weights(var);
    double d = cost(var);
    for (std::size_t i = 0; i < m_; ++i) d -= y(static_cast<long>(i)) * static_cast<double>(w[i]);
    return d;
  }

  Eigen::RowVectorXd prices() const {
    Eigen::RowVectorXd cb(static_cast<long>(m_));
    for (std::size_t k = 0; k < m_; ++k) cb(static_cast<long>(k)) = cost(basis_[k]);
    return cb * binv_;
  }

  // Rebuilds the basis inverse and basic values from scratch.
  bool refactor() {
    Eigen::MatrixXd b(static_cast<long>(m_), static_cast<long>(m_));
    for (std::size_t k = 0; k < m_; ++k) b.col(static_cast<long>(k)) = column(basis_[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) return false;
    binv_ = lu.inverse();
    Eigen::VectorXd rhs(static_cast<long>(m_));
    for (std::size_t i = 0; i < m_; ++i) rhs(static_cast<long>(i)) = static_cast<double>(inst_.capacity(i));
    for (std::size_t j = 0; j < n_; ++j)
      if (basic_row_[j] == kNonbasic && at_upper_[j]) rhs -= column(j);
    xb_ = binv_ * rhs;
    return true;
  }

  const Instance& inst_;
  LpOptions opt_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> basis_;
  std::vector<long> basic_row_;
  std::vector<bool> at_upper_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
};

}  // namespace detail

// Optimal basic solution of the LP relaxation with the duals of the capacity
// rows. status == failed on iteration-limit or numerical breakdown.
inline LpSolution solve_lp_relaxation(const Instance& inst, const LpOptions& opt = {}) {
  return detail::BoundedSimplex(inst, opt).solve();
}

struct EfficiencyVector {
  std::vector<double> values;
  std::vector<double> scaled;
};

// Min-max scaling to [0, 1]; a constant vector maps to 0.5 everywhere.
inline std::vector<double> min_max_scale(const std::vector<double>& values) {
  std::vector<double> scaled(values.size(), 0.5);
  if (values.empty()) return scaled;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return scaled;
  for (std::size_t j = 0; j < values.size(); ++j) scaled[j] = (values[j] - *lo) / range;
  return scaled;
}

// e_j = p_j / sum_i lambda_i w_ij
inline EfficiencyVector compute_efficiencies(const Instance& inst, const std::vector<double>& lambda) {
  if (lambda.size() != inst.num_resources()) {
    throw StructuralError("weight vector has length " + std::to_string(lambda.size()) +
                          ", instance has " + std::to_string(inst.num_resources()) + " resources");
  }
  for (const double l : lambda)
    if (!(l >= 0.0)) throw ContractError("resource weights must be non-negative");
  EfficiencyVector eff;
  eff.values.resize(inst.num_items());
  for (std::size_t j = 0; j < inst.num_items(); ++j) {
    const auto w = inst.item_weights(j);
    double denom = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) denom += lambda[i] * static_cast<double>(w[i]);
    if (!(denom > 0.0)) {
      throw DegenerateWeightsError(j, "item " + std::to_string(j) +
                                          " has zero weighted resource consumption");
    }
    eff.values[j] = static_cast<double>(inst.profit(j)) / denom;
  }
  eff.scaled = min_max_scale(eff.values);
  return eff;
}

// Non-increasing efficiency, ties by ascending item index.
inline EfficiencyOrdering dual_ordering(const EfficiencyVector& eff) {
  EfficiencyOrdering out;
  out.perm.resize(eff.values.size());
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  std::stable_sort(out.perm.begin(), out.perm.end(), [&](std::size_t a, std::size_t b) {
    return eff.values[a] > eff.values[b];
  });
  out.eff_scaled = eff.scaled;
  return out;
}

enum class WeightSource { dual, uniform_fallback };

inline const char* to_string(WeightSource s) {
  return s == WeightSource::dual ? "dual" : "uniform_fallback";
}

struct WeightedEfficiencies {
  LpSolution lp;
  std::vector<double> lambda;
  EfficiencyVector efficiency;
  WeightSource source = WeightSource::dual;
};

/**
 * Dual efficiencies with the uniform fallback: when the LP fails, or the
 * duals leave some item with a zero denominator, every lambda_i becomes 1.
 *
 * Under uniform weights an item can still have zero denominator only when it
 * consumes nothing at all. Such items always fit, so they are ranked ahead of
 * every other item with efficiency twice the largest finite one.
 */
inline WeightedEfficiencies dual_efficiencies(const Instance& inst) {
  WeightedEfficiencies out;
  out.lp = solve_lp_relaxation(inst);
  if (out.lp.status == LpStatus::optimal) {
    try {
      out.efficiency = compute_efficiencies(inst, out.lp.duals);
      out.lambda = out.lp.duals;
      out.source = WeightSource::dual;
      return out;
    } catch (const DegenerateWeightsError&) {
    }
  }
  out.source = WeightSource::uniform_fallback;
  out.lambda.assign(inst.num_resources(), 1.0);
  try {
    out.efficiency = compute_efficiencies(inst, out.lambda);
    return out;
  } catch (const DegenerateWeightsError&) {
  }
  auto& values = out.efficiency.values;
  values.assign(inst.num_items(), -1.0);
  double max_finite = 0.0;
  for (std::size_t j = 0; j < inst.num_items(); ++j) {
    Value denom = 0;
    for (const Value w : inst.item_weights(j)) denom += w;
    if (denom > 0) {
      values[j] = static_cast<double>(inst.profit(j)) / static_cast<double>(denom);
      max_finite = std::max(max_finite, values[j]);
    }
  }
  const double free_value = max_finite > 0.0 ? 2.0 * max_finite : 1.0;
  for (auto& v : values)
    if (v < 0.0) v = free_value;
  out.efficiency.scaled = min_max_scale(values);
  return out;
}

}  // namespace mkp
