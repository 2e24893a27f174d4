#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "placo/rng.hpp"
#include "placo/selection.hpp"

using namespace placo;

namespace {

ConfusionMatrix random_column_stochastic(std::size_t k, Rng& rng) {
  std::vector<double> e(k * k, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    double total = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      e[s * k + t] = -std::log(rng.next_unit_open());
      total += e[s * k + t];
    }
    for (std::size_t s = 0; s < k; ++s) e[s * k + t] /= total;
  }
  return ConfusionMatrix::ingest(k, std::move(e));
}

ConfusionMatrix diag2(double d0, double d1) {
  return ConfusionMatrix(2, {d0, 1.0 - d1, 1.0 - d0, d1});
}

// two-class profile whose value at (h=0, j=0) is v: diag d solves 3d = s(v)
HumanProfile profile_with_value(int id, double v, double cost) {
  double s = (2.0 * v + 1.0) / (v + 1.0);
  double d = s / 3.0;
  return HumanProfile(id, diag2(d, d), 0.9, cost);
}

std::vector<HumanProfile> random_pool(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<HumanProfile> pool;
  for (std::size_t i = 0; i < n; ++i) {
    pool.emplace_back(static_cast<int>(i), random_column_stochastic(k, rng),
                      rng.next_unit(), rng.next_open(0.1, 3.0));
  }
  return pool;
}

}  // namespace

TEST_CASE("greedy keeps every human whose value exceeds one") {
  std::vector<HumanProfile> pool{profile_with_value(0, 5.0, 1.0),
                                 profile_with_value(1, 2.0, 2.0),
                                 profile_with_value(2, 0.5, 3.0)};
  std::vector<Label> h{0, 0, 0};
  SelectionOutcome out = placo_greedy(pool, h, ValueParams());
  CHECK(out.y_star == 0);
  CHECK(out.values[0] == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(out.values[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(out.values[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(out.selected == std::vector<std::size_t>{0, 1});
  CHECK(out.total_cost == 3.0);
}

TEST_CASE("greedy falls back to the single best human") {
  // second class made worthless so y* stays at 0 with values (0.5, 0.9)
  auto make = [](int id, double v, double cost) {
    double s = (2.0 * v + 1.0) / (v + 1.0);
    double d = s / 3.0;
    return HumanProfile(id, diag2(d, 0.95), 0.9, cost);
  };
  std::vector<HumanProfile> pool{make(0, 0.5, 1.0), make(1, 0.9, 2.5)};
  std::vector<Label> h{0, 0};
  SelectionOutcome out = placo_greedy(pool, h, ValueParams());
  CHECK(out.y_star == 0);
  CHECK(out.values[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(out.values[1] == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(out.selected == std::vector<std::size_t>{1});
  CHECK(out.total_cost == 2.5);
}

TEST_CASE("greedy always selects someone") {
  std::vector<HumanProfile> pool{HumanProfile(0, diag2(0.7, 0.7), 0.3, 1.5)};
  std::vector<Label> h{0};
  SelectionOutcome out = placo_greedy(pool, h, ValueParams());
  CHECK(out.selected == std::vector<std::size_t>{0});
  CHECK(out.total_cost == 1.5);

  std::vector<HumanProfile> none;
  std::vector<Label> no_labels;
  CHECK_THROWS_AS(placo_greedy(none, no_labels, ValueParams()), Error);
}

TEST_CASE("greedy agrees with the exhaustive oracle") {
  Rng rng = derive_rng(41, "greedy-oracle");
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + rng.next_below(10);
    std::size_t k = 2 + rng.next_below(4);
    std::vector<HumanProfile> pool = random_pool(n, k, rng);
    std::vector<Label> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = static_cast<Label>(rng.next_below(k));
    }
    SelectionOutcome out = placo_greedy(pool, h, ValueParams());
    std::vector<std::size_t> oracle =
        exhaustive_oracle(out.values, {}, std::nullopt);
    CHECK(out.selected == oracle);
  }
}

TEST_CASE("pseudo-lb keeps the dominant human at the true label") {
  double d = 1.0 - 1e-9;
  std::vector<HumanProfile> pool{HumanProfile(0, diag2(d, d), 1.0, 1.0)};
  std::vector<Label> t{1};
  SelectionOutcome out = pseudo_lb_select(pool, t);
  CHECK(out.selected == std::vector<std::size_t>{0});
  CHECK(out.y_star == 1);
  CHECK(out.total_cost == 1.0);
}

TEST_CASE("pseudo-lb drops humans whose odds fall below one") {
  // at j = 0 the ratios are (3, 0.5); j = 1 is worse for both
  ConfusionMatrix phi0(2, {0.75, 0.25, 0.25, 0.75});
  ConfusionMatrix phi1(2, {1.0 / 3.0, 0.25, 2.0 / 3.0, 0.75});
  std::vector<HumanProfile> pool{HumanProfile(0, phi0, 0.8, 1.0),
                                 HumanProfile(1, phi1, 0.8, 2.0)};
  std::vector<Label> t{0, 0};
  SelectionOutcome out = pseudo_lb_select(pool, t);
  CHECK(out.y_star == 0);
  CHECK(out.values[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(out.values[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(out.selected == std::vector<std::size_t>{0});
  CHECK(out.total_cost == 3.0);  // full pool is charged
}

TEST_CASE("pseudo-lb picks a singleton when every ratio is below one") {
  ConfusionMatrix low(2, {0.4, 0.55, 0.6, 0.45});
  std::vector<HumanProfile> pool{HumanProfile(0, low, 0.5, 1.0),
                                 HumanProfile(1, low, 0.5, 1.0)};
  std::vector<Label> t{0, 1};
  SelectionOutcome out = pseudo_lb_select(pool, t);
  CHECK(out.selected.size() == 1);
}

TEST_CASE("pseudo-lb requires every true label") {
  std::vector<HumanProfile> pool{HumanProfile(0, diag2(0.7, 0.7), 0.8, 1.0),
                                 HumanProfile(1, diag2(0.6, 0.6), 0.8, 1.0)};
  std::vector<Label> t{0};
  try {
    pseudo_lb_select(pool, t);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::missing_true_labels);
  }
}

TEST_CASE("lp selection respects the budget") {
  std::vector<HumanProfile> pool{profile_with_value(0, 5.0, 3.0),
                                 profile_with_value(1, 4.0, 2.0)};
  std::vector<Label> h{0, 0};
  SelectionOutcome out =
      placo_lp_select(pool, h, ValueParams(), BudgetSpec(2.0));
  CHECK(out.selected == std::vector<std::size_t>{1});
  CHECK(out.total_cost == 2.0);
}

TEST_CASE("a slack budget reduces lp selection to the greedy rule") {
  std::vector<HumanProfile> pool{profile_with_value(0, 5.0, 0.5),
                                 profile_with_value(1, 4.0, 0.5),
                                 profile_with_value(2, 0.7, 0.5)};
  std::vector<Label> h{0, 0, 0};
  SelectionOutcome lp =
      placo_lp_select(pool, h, ValueParams(), BudgetSpec(10.0));
  SelectionOutcome greedy = placo_greedy(pool, h, ValueParams());
  CHECK(lp.selected == greedy.selected);
}

TEST_CASE("an empty lp optimum falls back to the best affordable human") {
  std::vector<HumanProfile> pool{HumanProfile(0, diag2(0.7, 0.7), 0.3, 1.0),
                                 HumanProfile(1, diag2(0.7, 0.7), 0.3, 1.0)};
  std::vector<Label> h{0, 0};
  SelectionOutcome out =
      placo_lp_select(pool, h, ValueParams(), BudgetSpec(2.0));
  CHECK(out.selected == std::vector<std::size_t>{0});
  CHECK(out.total_cost == 1.0);
}

TEST_CASE("lp selection can stay empty when nobody is affordable") {
  std::vector<HumanProfile> pool{HumanProfile(0, diag2(0.7, 0.7), 0.3, 5.0),
                                 HumanProfile(1, diag2(0.7, 0.7), 0.3, 6.0)};
  std::vector<Label> h{0, 0};
  SelectionOutcome out =
      placo_lp_select(pool, h, ValueParams(), BudgetSpec(2.0));
  CHECK(out.selected.empty());
  CHECK(out.total_cost == 0.0);
}

TEST_CASE("oracle enumeration on fixed value tables") {
  std::vector<double> v1{5.0, 2.0, 0.5};
  CHECK(exhaustive_oracle(v1, {}, std::nullopt) ==
        std::vector<std::size_t>{0, 1});

  std::vector<double> v2{0.5, 0.9};
  CHECK(exhaustive_oracle(v2, {}, std::nullopt) == std::vector<std::size_t>{1});

  std::vector<double> v3{5.0, 4.0};
  std::vector<double> c3{3.0, 2.0};
  CHECK(exhaustive_oracle(v3, c3, 2.0) == std::vector<std::size_t>{1});
}

TEST_CASE("oracle rejects oversized pools") {
  std::vector<double> v(21, 2.0);
  try {
    exhaustive_oracle(v, {}, std::nullopt);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::pool_too_large);
  }
}

TEST_CASE("knapsack matches the oracle objective") {
  Rng rng = derive_rng(42, "knapsack-oracle");
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng.next_below(12);
    std::vector<double> values(n), log_values(n), costs(n);
    for (std::size_t i = 0; i < n; ++i) {
      double roll = rng.next_unit();
      if (roll < 0.1) {
        values[i] = 1e-9;
      } else if (roll < 0.2) {
        values[i] = 1e9;
      } else {
        values[i] = std::exp(rng.next_open(-3.0, 3.0));
      }
      log_values[i] = std::log(values[i]);
      costs[i] = rng.next_open(0.1, 3.0);
    }
    double total = 0.0;
    for (double c : costs) total += c;
    double budget = rng.next_open(0.15, 0.7) * total;

    KnapsackResult knap = max_value_knapsack(log_values, costs, budget);
    std::vector<std::size_t> oracle = exhaustive_oracle(values, costs, budget);
    double oracle_obj = 0.0;
    for (std::size_t i : oracle) oracle_obj += log_values[i];
    CHECK(std::abs(knap.objective - oracle_obj) < 1e-9);

    double spent = 0.0;
    for (std::size_t i : knap.chosen) spent += costs[i];
    CHECK(spent <= budget);
  }
}

TEST_CASE("greedy never costs more than pseudo-lb") {
  Rng rng = derive_rng(43, "cost-dominance");
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.next_below(8);
    std::size_t k = 2 + rng.next_below(4);
    std::vector<HumanProfile> pool = random_pool(n, k, rng);
    std::vector<Label> h(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = static_cast<Label>(rng.next_below(k));
      t[i] = static_cast<Label>(rng.next_below(k));
    }
    SelectionOutcome greedy = placo_greedy(pool, h, ValueParams());
    SelectionOutcome pseudo = pseudo_lb_select(pool, t);
    CHECK(greedy.total_cost <= pseudo.total_cost);
    CHECK(!greedy.selected.empty());
    CHECK(!pseudo.selected.empty());
  }
}
