// Command-line harness: synthetic population generation, confusion-matrix
// estimation, per-instance subset selection, fused prediction, and the full
// benchmark protocol.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "placo/dataset.hpp"
#include "placo/estimation.hpp"
#include "placo/experiment.hpp"
#include "placo/rng.hpp"
#include "placo/synthpop.hpp"
#include "placo/types.hpp"

namespace {

using nlohmann::json;

struct CellOptions {
  std::string dataset_path;
  std::size_t k = 0;
  std::string preset = "h10";
  std::vector<double> accuracies;
  double beta = 1.0;
  double gamma = 2.0;
  double v_max = 1e9;
  double epsilon = 1e-9;
  std::size_t top_k = 3;
  double budget_fraction = 0.05;
  std::size_t train_size = 500;
  std::uint64_t seed = 1;
  std::vector<std::string> strategies = {"placo-greedy"};
  std::string out_path;
};

void add_pool_flags(CLI::App* cmd, CellOptions& opt) {
  cmd->add_option("--dataset", opt.dataset_path, "dataset file")->required();
  cmd->add_option("--k", opt.k, "expected class count (0 = from file)");
  cmd->add_option("--preset", opt.preset, "pool preset: h5, h7, h10, h15");
  cmd->add_option("--accuracies", opt.accuracies,
                  "explicit per-human accuracies (overrides --preset)");
  cmd->add_option("--beta", opt.beta, "off-diagonal Dirichlet prior mass");
  cmd->add_option("--gamma", opt.gamma, "diagonal Dirichlet prior mass");
  cmd->add_option("--train-size", opt.train_size,
                  "instances used to train confusion matrices");
  cmd->add_option("--seed", opt.seed, "population seed");
}

void add_value_flags(CLI::App* cmd, CellOptions& opt) {
  cmd->add_option("--v-max", opt.v_max, "value assigned when the bound diverges");
  cmd->add_option("--epsilon", opt.epsilon, "value assigned when the bound vanishes");
  cmd->add_option("--top-k", opt.top_k, "k for the top-k estimator");
  cmd->add_option("--budget-fraction", opt.budget_fraction,
                  "budget = fraction * |pool| * k");
  cmd->add_option("--strategy", opt.strategies,
                  "pseudo-lb, placo-greedy and/or placo-lp");
}

std::vector<placo::Strategy> parse_strategies(
    const std::vector<std::string>& names) {
  std::vector<placo::Strategy> out;
  for (const std::string& name : names) {
    auto s = placo::strategy_from_name(name);
    if (!s) {
      throw placo::Error(placo::Err::invalid_argument,
                         "unknown strategy '" + name + "'");
    }
    out.push_back(*s);
  }
  return out;
}

// Shared cell setup: load, synthesize, split, train.
struct Cell {
  placo::Dataset ds;
  std::vector<double> accuracies;
  std::vector<std::vector<placo::Label>> labels;
  std::vector<double> costs;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  std::vector<placo::HumanProfile> pool;
  double budget = 0.0;
};

Cell build_cell(const CellOptions& opt) {
  Cell cell;
  cell.ds = placo::load_dataset(opt.dataset_path, opt.k);
  cell.accuracies = opt.accuracies.empty() ? placo::preset_by_name(opt.preset)
                                           : opt.accuracies;
  cell.labels = placo::synth_pool_labels(cell.ds.records, cell.accuracies,
                                         opt.seed);
  placo::Rng cost_rng = placo::derive_rng(opt.seed, "costs");
  cell.costs = placo::sample_costs(cell.accuracies.size(), cell.ds.k, cost_rng);
  auto parts = placo::split(cell.ds.records.size(), opt.train_size, opt.seed);
  cell.train_idx = std::move(parts.first);
  cell.test_idx = std::move(parts.second);
  placo::DirichletPrior prior(opt.beta, opt.gamma);
  cell.pool = placo::train_pool(cell.ds.records, cell.labels, cell.train_idx,
                                prior, cell.costs, cell.ds.k);
  cell.budget = opt.budget_fraction *
                static_cast<double>(cell.accuracies.size()) *
                static_cast<double>(cell.ds.k);
  return cell;
}

int cmd_gen(const std::string& out_path, std::size_t n, std::size_t k,
            double model_accuracy, std::uint64_t seed) {
  placo::SynthDatasetConfig cfg;
  cfg.n_instances = n;
  cfg.k = k;
  cfg.model_top1 = model_accuracy;
  cfg.seed = seed;
  auto records = placo::make_synthetic_dataset(cfg);
  placo::write_dataset(out_path, records, k);
  std::cout << "wrote " << records.size() << " instances to " << out_path
            << "\n";
  return 0;
}

int cmd_estimate(const CellOptions& opt) {
  Cell cell = build_cell(opt);
  json doc;
  doc["k"] = cell.ds.k;
  doc["train_size"] = opt.train_size;
  doc["seed"] = opt.seed;
  doc["prior"] = {{"beta", opt.beta}, {"gamma", opt.gamma}};
  json humans = json::array();
  for (const placo::HumanProfile& h : cell.pool) {
    json matrix = json::array();
    for (std::size_t s = 0; s < cell.ds.k; ++s) {
      json row = json::array();
      for (std::size_t t = 0; t < cell.ds.k; ++t) {
        row.push_back(h.phi.at(static_cast<placo::Label>(s),
                               static_cast<placo::Label>(t)));
      }
      matrix.push_back(row);
    }
    humans.push_back(json{{"id", h.id},
                          {"accuracy", h.accuracy},
                          {"cost", h.cost},
                          {"diag_min", h.diag_min},
                          {"diag_max", h.diag_max},
                          {"confusion", matrix}});
  }
  doc["humans"] = std::move(humans);
  std::ofstream out(opt.out_path);
  if (!out) {
    throw placo::Error(placo::Err::parse_error,
                       "cannot write '" + opt.out_path + "'");
  }
  out << doc.dump(2) << '\n';
  std::cout << "wrote " << cell.pool.size() << " confusion matrices to "
            << opt.out_path << "\n";
  return 0;
}

int run_cell_csv(const CellOptions& opt, bool predictions) {
  Cell cell = build_cell(opt);
  std::vector<placo::Strategy> strategies = parse_strategies(opt.strategies);
  placo::ValueParams params(opt.v_max, opt.epsilon);

  std::ofstream out(opt.out_path);
  if (!out) {
    throw placo::Error(placo::Err::parse_error,
                       "cannot write '" + opt.out_path + "'");
  }
  if (predictions) {
    out << "instance_id,strategy,fused_label,fused_prob,correct\n";
  } else {
    out << "instance_id,strategy,y_star,selected,cost,fused_label,correct\n";
  }
  for (std::size_t idx : cell.test_idx) {
    const placo::InstanceRecord& rec = cell.ds.records[idx];
    const placo::EstimatedLabels est =
        placo::estimate_pool_labels(cell.pool, rec.model_probs);
    for (placo::Strategy strat : strategies) {
      placo::StrategyOutcome so = placo::run_instance_strategy(
          cell.pool, est.labels, rec.model_probs, strat, params, cell.budget,
          [&](std::size_t i) { return cell.labels[idx][i]; });
      std::string correct = "";
      if (rec.ground_truth) {
        correct = (so.prediction.label == *rec.ground_truth) ? "1" : "0";
      }
      if (predictions) {
        out << rec.id << ',' << placo::strategy_name(strat) << ','
            << so.prediction.label << ','
            << placo::format_metric(
                   so.prediction.posterior[static_cast<std::size_t>(
                       so.prediction.label)])
            << ',' << correct << '\n';
      } else {
        out << rec.id << ',' << placo::strategy_name(strat) << ','
            << so.selection.y_star << ',';
        for (std::size_t i = 0; i < so.selection.selected.size(); ++i) {
          if (i > 0) out << ';';
          out << so.selection.selected[i];
        }
        out << ',' << placo::format_metric(so.selection.total_cost) << ','
            << so.prediction.label << ',' << correct << '\n';
      }
    }
  }
  std::cout << "wrote " << cell.test_idx.size() << " test instances to "
            << opt.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cost-effective human-AI team selection and fusion"};
  app.require_subcommand(1);
  app.set_config("--config");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  std::string gen_out = "dataset.txt";
  std::size_t gen_n = 1000;
  std::size_t gen_k = 10;
  double gen_acc = 0.55;
  std::uint64_t gen_seed = 1;
  gen->add_option("--out", gen_out, "output dataset path")->required();
  gen->add_option("--n", gen_n, "number of instances");
  gen->add_option("--k", gen_k, "class count");
  gen->add_option("--model-accuracy", gen_acc, "target model top-1 accuracy");
  gen->add_option("--seed", gen_seed, "generator seed");

  // estimate
  CellOptions est_opt;
  auto* est = app.add_subcommand("estimate",
                                 "train confusion matrices, write JSON");
  add_pool_flags(est, est_opt);
  est->add_option("--out", est_opt.out_path, "output JSON path")->required();

  // select
  CellOptions sel_opt;
  auto* sel = app.add_subcommand("select",
                                 "per-instance subset selection audit");
  add_pool_flags(sel, sel_opt);
  add_value_flags(sel, sel_opt);
  sel->add_option("--out", sel_opt.out_path, "output CSV path")->required();

  // combine
  CellOptions com_opt;
  auto* com = app.add_subcommand("combine", "fused predictions");
  add_pool_flags(com, com_opt);
  add_value_flags(com, com_opt);
  com->add_option("--out", com_opt.out_path, "output CSV path")->required();

  // bench
  placo::ExperimentConfig bench_cfg;
  std::vector<std::string> bench_strategies = {"pseudo-lb", "placo-greedy",
                                               "placo-lp"};
  auto* bench = app.add_subcommand("bench", "full benchmark protocol");
  bench->add_option("--dataset", bench_cfg.dataset_path, "dataset file")
      ->required();
  bench->add_option("--k", bench_cfg.k, "expected class count (0 = from file)");
  bench->add_option("--preset", bench_cfg.preset, "pool preset");
  bench->add_option("--accuracies", bench_cfg.accuracies,
                    "explicit per-human accuracies");
  bench->add_option("--beta", bench_cfg.prior_beta, "off-diagonal prior mass");
  bench->add_option("--gamma", bench_cfg.prior_gamma, "diagonal prior mass");
  bench->add_option("--v-max", bench_cfg.v_max, "diverging-bound value");
  bench->add_option("--epsilon", bench_cfg.epsilon, "vanishing-bound value");
  bench->add_option("--top-k", bench_cfg.top_k, "k for the top-k estimator");
  bench->add_option("--train-sizes", bench_cfg.train_sizes,
                    "learning-curve training sizes");
  bench->add_option("--budget-fraction", bench_cfg.budget_fraction,
                    "budget = fraction * |pool| * k");
  bench->add_option("--seeds", bench_cfg.seeds, "seeds to average over");
  bench->add_option("--strategy", bench_strategies, "strategies to run");
  bench->add_option("--out-dir", bench_cfg.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are validation errors
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_out, gen_n, gen_k, gen_acc, gen_seed);
    }
    if (est->parsed()) {
      return cmd_estimate(est_opt);
    }
    if (sel->parsed()) {
      return run_cell_csv(sel_opt, /*predictions=*/false);
    }
    if (com->parsed()) {
      return run_cell_csv(com_opt, /*predictions=*/true);
    }
    if (bench->parsed()) {
      bench_cfg.strategies = parse_strategies(bench_strategies);
      placo::RunMetrics metrics = placo::run_experiment(bench_cfg);
      std::cout << "wrote estimation_match.csv, learning_curve.csv, "
                   "tradeoff.csv, audit_log.csv ("
                << metrics.audit_rows.size() << " audit rows) to "
                << bench_cfg.out_dir << "\n";
      return 0;
    }
  } catch (const placo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
