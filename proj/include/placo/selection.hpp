#pragma once

#include <optional>
#include <span>
#include <vector>

#include "placo/types.hpp"
#include "placo/valuation.hpp"

namespace placo {

struct BudgetSpec {
  explicit BudgetSpec(double budget_);

  double budget;
};

// Greedy selection from estimated labels: pick y*, keep every human whose
// value exceeds 1, fall back to the single highest-valued human when nobody
// qualifies. Charges only the selected humans.
SelectionOutcome placo_greedy(std::span<const HumanProfile> pool,
                              std::span<const Label> h_labels,
                              const ValueParams& params);

// Baseline that already holds everyone's true label: per candidate truth j
// the optimal subset keeps humans with odds ratio above 1 (or the single
// best), and the (j, subset) with the largest product wins. Charges the full
// pool since every label was elicited.
SelectionOutcome pseudo_lb_select(std::span<const HumanProfile> pool,
                                  std::span<const Label> t_labels);

// Budgeted selection: exact 0/1 knapsack over log-values with cost bound. An
// empty optimum falls back to the best affordable human; with no affordable
// human the selection stays empty (model-only prediction).
SelectionOutcome placo_lp_select(std::span<const HumanProfile> pool,
                                 std::span<const Label> h_labels,
                                 const ValueParams& params, BudgetSpec budget);

struct KnapsackResult {
  std::vector<std::size_t> chosen;  // ascending indices
  double objective = 0.0;           // sum of chosen log-values
};

// Exact maximizer of sum(log_values[i] for i in S) subject to
// sum(costs[i]) <= budget, over all subsets including the empty one.
// Branch-and-bound with a fractional relaxation bound.
KnapsackResult max_value_knapsack(std::span<const double> log_values,
                                  std::span<const double> costs, double budget);

// Test oracle: enumerate subsets (nonempty without a budget, all subsets with
// one) and return the log-product maximizer, ties to the lexicographically
// smallest subset. Pool size capped at 20.
std::vector<std::size_t> exhaustive_oracle(std::span<const double> values,
                                           std::span<const double> costs,
                                           std::optional<double> budget);

}  // namespace placo
