#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "placo/confusion.hpp"
#include "placo/dataset.hpp"
#include "placo/fusion.hpp"
#include "placo/selection.hpp"
#include "placo/types.hpp"
#include "placo/valuation.hpp"

namespace placo {

enum class Strategy { PseudoLb, PlacoGreedy, PlacoLp };
enum class Estimator { Posterior, MaxMax, Random, TopK };

const char* strategy_name(Strategy s);
const char* estimator_name(Estimator e);
std::optional<Strategy> strategy_from_name(const std::string& name);

inline constexpr Estimator kEstimators[] = {Estimator::Posterior,
                                            Estimator::MaxMax,
                                            Estimator::Random, Estimator::TopK};

struct ExperimentConfig {
  std::string dataset_path;
  std::size_t k = 0;  // 0 adopts the file's class count
  std::string preset = "h10";
  std::vector<double> accuracies;  // overrides preset when nonempty
  double prior_beta = 1.0;
  double prior_gamma = 2.0;
  double v_max = 1e9;
  double epsilon = 1e-9;
  std::size_t top_k = 3;
  std::vector<std::size_t> train_sizes = {100, 250, 500, 1000, 2500, 5000};
  double budget_fraction = 0.05;  // budget = fraction * |pool| * k
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<Strategy> strategies = {Strategy::PseudoLb, Strategy::PlacoGreedy,
                                      Strategy::PlacoLp};
  std::string out_dir = "placo-out";
};

struct MetricRow {
  std::string name;  // estimator or strategy ("model" for the bare model)
  std::size_t train_size;
  std::uint64_t seed;
  std::string metric;
  double value;
};

struct AuditRow {
  std::size_t train_size;
  std::uint64_t seed;
  std::string instance_id;
  Strategy strategy;
  Label y_star;
  std::vector<std::size_t> selected;
  double cost;
  Label fused;
  bool correct;
};

struct RunMetrics {
  std::vector<MetricRow> estimation_rows;  // estimation_match.csv
  std::vector<MetricRow> curve_rows;       // learning_curve.csv
  std::vector<MetricRow> tradeoff_rows;    // tradeoff.csv
  std::vector<AuditRow> audit_rows;        // audit_log.csv
};

struct StrategyOutcome {
  SelectionOutcome selection;
  CombinedPrediction prediction;
};

// Select, elicit, fuse for one instance. `elicit` maps a human index to that
// human's true label and is the only channel through which true labels reach
// a strategy; the budget applies to the lp strategy only.
StrategyOutcome run_instance_strategy(
    std::span<const HumanProfile> pool, std::span<const Label> est_labels,
    const ProbVector& m, Strategy strategy, const ValueParams& params,
    double budget, const std::function<Label(std::size_t)>& elicit);

// Confusion matrices, accuracies and costs estimated on the training split.
std::vector<HumanProfile> train_pool(
    std::span<const InstanceRecord> records,
    const std::vector<std::vector<Label>>& labels,
    std::span<const std::size_t> train_idx, const DirichletPrior& prior,
    std::span<const double> costs, std::size_t k);

// Full protocol: per seed and training size, synthesize the pool, train it,
// run every estimator and strategy on the test split, then emit
// estimation_match.csv, learning_curve.csv, tradeoff.csv and audit_log.csv
// under out_dir. Nothing is written if any cell fails.
RunMetrics run_experiment(const ExperimentConfig& config);

// %.17g, shared by every emitter so values round-trip exactly.
std::string format_metric(double v);

}  // namespace placo
