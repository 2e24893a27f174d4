#include "placo/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace placo {

namespace {

constexpr double kBoundSlack = 1e-9;  // never prune a subtree that could tie

double clamp_phi(double p) {
  return std::min(1.0 - kPhiClamp, std::max(kPhiClamp, p));
}

double pool_cost(std::span<const HumanProfile> pool) {
  double sum = 0.0;
  for (const auto& h : pool) sum += h.cost;
  return sum;
}

double subset_cost(std::span<const HumanProfile> pool,
                   const std::vector<std::size_t>& subset) {
  double sum = 0.0;
  for (std::size_t i : subset) sum += pool[i].cost;
  return sum;
}

}  // namespace

BudgetSpec::BudgetSpec(double budget_) : budget(budget_) {
  if (!(budget > 0.0)) {
    throw Error(Err::invalid_argument, "budget must be positive");
  }
}

SelectionOutcome placo_greedy(std::span<const HumanProfile> pool,
                              std::span<const Label> h_labels,
                              const ValueParams& params) {
  if (pool.empty()) throw Error(Err::empty_pool, "greedy selection");
  Label y_star = select_y_star(pool, h_labels, params);
  std::vector<double> values = value_table(pool, h_labels, y_star, params);

  SelectionOutcome out;
  out.y_star = y_star;
  std::size_t best = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
    if (values[i] > 1.0) out.selected.push_back(i);
  }
  if (out.selected.empty()) out.selected.push_back(best);
  out.total_cost = subset_cost(pool, out.selected);
  out.values = std::move(values);
  return out;
}

SelectionOutcome pseudo_lb_select(std::span<const HumanProfile> pool,
                                  std::span<const Label> t_labels) {
  if (pool.empty()) throw Error(Err::empty_pool, "pseudo-lb selection");
  if (t_labels.size() != pool.size()) {
    throw Error(Err::missing_true_labels,
                std::to_string(t_labels.size()) + " true labels for a pool of " +
                    std::to_string(pool.size()));
  }
  const std::size_t n = pool.size();
  const std::size_t k = pool.front().phi.k();

  SelectionOutcome out;
  double best_obj = 0.0;
  std::vector<double> log_ratio(n, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double p = clamp_phi(pool[i].phi.at(t_labels[i], static_cast<Label>(j)));
      log_ratio[i] = std::log(p) - std::log1p(-p);
    }
    // product objective with independent factors: keep every ratio above 1,
    // else the single best
    std::vector<std::size_t> subset;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (log_ratio[i] > log_ratio[best_i]) best_i = i;
      if (log_ratio[i] > 0.0) subset.push_back(i);
    }
    if (subset.empty()) subset.push_back(best_i);
    double obj = 0.0;
    for (std::size_t i : subset) obj += log_ratio[i];
    if (j == 0 || obj > best_obj) {
      best_obj = obj;
      out.y_star = static_cast<Label>(j);
      out.selected = std::move(subset);
      out.values.resize(n);
      for (std::size_t i = 0; i < n; ++i) out.values[i] = std::exp(log_ratio[i]);
    }
  }
  out.total_cost = pool_cost(pool);  // every true label was elicited
  return out;
}

SelectionOutcome placo_lp_select(std::span<const HumanProfile> pool,
                                 std::span<const Label> h_labels,
                                 const ValueParams& params, BudgetSpec budget) {
  if (pool.empty()) throw Error(Err::empty_pool, "lp selection");
  Label y_star = select_y_star(pool, h_labels, params);
  std::vector<double> values = value_table(pool, h_labels, y_star, params);
  std::vector<double> log_values(values.size());
  std::vector<double> costs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    log_values[i] = std::log(values[i]);
    costs[i] = pool[i].cost;
  }

  KnapsackResult knap = max_value_knapsack(log_values, costs, budget.budget);

  SelectionOutcome out;
  out.y_star = y_star;
  out.selected = std::move(knap.chosen);
  if (out.selected.empty()) {
    // best affordable human, if any; otherwise the model predicts alone
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].cost > budget.budget) continue;
      if (!pick || values[i] > values[*pick]) pick = i;
    }
    if (pick) out.selected.push_back(*pick);
  }
  out.total_cost = subset_cost(pool, out.selected);
  out.values = std::move(values);
  return out;
}

namespace {

struct KnapsackItem {
  std::size_t index;
  double profit;  // positive log-value
  double cost;
};

class KnapsackSolver {
 public:
  KnapsackSolver(std::vector<KnapsackItem> items, double budget)
      : items_(std::move(items)), budget_(budget) {}

  KnapsackResult run() {
    picked_.assign(items_.size(), false);
    best_set_.clear();
    best_obj_ = 0.0;  // empty set is always feasible
    dfs(0, 0.0, 0.0);
    KnapsackResult out;
    out.objective = best_obj_;
    out.chosen = best_set_;
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
  }

 private:
  // fractional completion of the remaining capacity, an upper bound on any
  // integer completion below this node
  double bound(std::size_t pos, double obj, double cost) const {
    double b = obj;
    double room = budget_ - cost;
    for (std::size_t i = pos; i < items_.size(); ++i) {
      if (items_[i].cost <= room) {
        room -= items_[i].cost;
        b += items_[i].profit;
      } else {
        b += items_[i].profit * (room / items_[i].cost);
        break;
      }
    }
    return b;
  }

  void dfs(std::size_t pos, double obj, double cost) {
    if (obj > best_obj_) {
      best_obj_ = obj;
      best_set_.clear();
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (picked_[i]) best_set_.push_back(items_[i].index);
      }
    }
    if (pos == items_.size()) return;
    if (bound(pos, obj, cost) <= best_obj_ - kBoundSlack) return;
    if (cost + items_[pos].cost <= budget_) {
      picked_[pos] = true;
      dfs(pos + 1, obj + items_[pos].profit, cost + items_[pos].cost);
      picked_[pos] = false;
    }
    dfs(pos + 1, obj, cost);
  }

  std::vector<KnapsackItem> items_;
  double budget_;
  std::vector<bool> picked_;
  std::vector<std::size_t> best_set_;
  double best_obj_ = 0.0;
};

}  // namespace

KnapsackResult max_value_knapsack(std::span<const double> log_values,
                                  std::span<const double> costs,
                                  double budget) {
  if (log_values.size() != costs.size()) {
    throw Error(Err::length_mismatch, "log-values and costs differ in length");
  }
  // only items with positive profit can appear in an optimal solution
  std::vector<KnapsackItem> items;
  for (std::size_t i = 0; i < log_values.size(); ++i) {
    if (log_values[i] > 0.0 && costs[i] <= budget) {
      items.push_back({i, log_values[i], costs[i]});
    }
  }
  std::sort(items.begin(), items.end(),
            [](const KnapsackItem& a, const KnapsackItem& b) {
              double da = a.profit / a.cost;
              double db = b.profit / b.cost;
              if (da != db) return da > db;
              return a.index < b.index;
            });
  return KnapsackSolver(std::move(items), budget).run();
}

std::vector<std::size_t> exhaustive_oracle(std::span<const double> values,
                                           std::span<const double> costs,
                                           std::optional<double> budget) {
  const std::size_t n = values.size();
  if (n > 20) {
    throw Error(Err::pool_too_large,
                std::to_string(n) + " humans; oracle enumerates at most 20");
  }
  if (budget && costs.size() != n) {
    throw Error(Err::length_mismatch, "budgeted oracle needs one cost per value");
  }
  if (n == 0) throw Error(Err::empty_pool, "oracle over an empty pool");

  std::vector<std::size_t> best_set;
  double best_obj = 0.0;
  bool have_best = false;
  const std::uint32_t first = budget ? 0u : 1u;
  for (std::uint32_t mask = first; mask < (1u << n); ++mask) {
    double obj = 0.0;
    double cost = 0.0;
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        obj += std::log(values[i]);
        if (budget) cost += costs[i];
        set.push_back(i);
      }
    }
    if (budget && cost > *budget) continue;
    if (!have_best || obj > best_obj ||
        (obj == best_obj &&
         std::lexicographical_compare(set.begin(), set.end(), best_set.begin(),
                                      best_set.end()))) {
      have_best = true;
      best_obj = obj;
      best_set = std::move(set);
    }
  }
  if (!have_best) return {};  // nothing affordable
  return best_set;
}

}  // namespace placo
