#include "placo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include "placo/estimation.hpp"
#include "placo/rng.hpp"
#include "placo/synthpop.hpp"

namespace placo {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::PseudoLb: return "pseudo-lb";
    case Strategy::PlacoGreedy: return "placo-greedy";
    case Strategy::PlacoLp: return "placo-lp";
  }
  return "unknown";
}

const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::Posterior: return "posterior";
    case Estimator::MaxMax: return "max-max";
    case Estimator::Random: return "random";
    case Estimator::TopK: return "top-k";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "pseudo-lb") return Strategy::PseudoLb;
  if (name == "placo-greedy") return Strategy::PlacoGreedy;
  if (name == "placo-lp") return Strategy::PlacoLp;
  return std::nullopt;
}

std::string format_metric(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

StrategyOutcome run_instance_strategy(
    std::span<const HumanProfile> pool, std::span<const Label> est_labels,
    const ProbVector& m, Strategy strategy, const ValueParams& params,
    double budget, const std::function<Label(std::size_t)>& elicit) {
  SelectionOutcome selection;
  std::vector<Label> elicited(pool.size(), -1);
  switch (strategy) {
    case Strategy::PseudoLb: {
      for (std::size_t i = 0; i < pool.size(); ++i) elicited[i] = elicit(i);
      selection = pseudo_lb_select(pool, elicited);
      break;
    }
    case Strategy::PlacoGreedy: {
      selection = placo_greedy(pool, est_labels, params);
      for (std::size_t i : selection.selected) elicited[i] = elicit(i);
      break;
    }
    case Strategy::PlacoLp: {
      selection = placo_lp_select(pool, est_labels, params, BudgetSpec(budget));
      for (std::size_t i : selection.selected) elicited[i] = elicit(i);
      break;
    }
  }
  std::vector<Elicited> fused;
  fused.reserve(selection.selected.size());
  for (std::size_t i : selection.selected) {
    fused.push_back({&pool[i].phi, elicited[i]});
  }
  CombinedPrediction prediction = combine(m, fused);
  return {std::move(selection), std::move(prediction)};
}

std::vector<HumanProfile> train_pool(
    std::span<const InstanceRecord> records,
    const std::vector<std::vector<Label>>& labels,
    std::span<const std::size_t> train_idx, const DirichletPrior& prior,
    std::span<const double> costs, std::size_t k) {
  std::vector<HumanProfile> pool;
  pool.reserve(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    CountMatrix counts(k);
    std::vector<std::pair<Label, Label>> pairs;
    pairs.reserve(train_idx.size());
    for (std::size_t idx : train_idx) {
      Label t = labels[idx][i];
      Label y = *records[idx].ground_truth;
      counts.add(t, y);
      pairs.emplace_back(t, y);
    }
    pool.push_back(make_profile(static_cast<int>(i), counts, prior, pairs,
                                costs[i]));
  }
  return pool;
}

namespace {

struct CellAccum {
  long double sum = 0.0L;
  std::size_t n = 0;

  void add(double v) {
    sum += static_cast<long double>(v);
    ++n;
  }
  double mean() const {
    return n == 0 ? 0.0 : static_cast<double>(sum / static_cast<long double>(n));
  }
};

void write_metric_csv(const std::filesystem::path& path,
                      const char* name_header,
                      const std::vector<MetricRow>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Err::parse_error, "cannot write '" + path.string() + "'");
  }
  out << name_header << ",train_size,seed,metric,value\n";
  for (const MetricRow& r : rows) {
    out << r.name << ',' << r.train_size << ',' << r.seed << ',' << r.metric
        << ',' << format_metric(r.value) << '\n';
  }
  // mean and std across seeds, groups in first-appearance order
  std::vector<std::tuple<std::string, std::size_t, std::string>> order;
  std::map<std::tuple<std::string, std::size_t, std::string>,
           std::vector<double>>
      groups;
  for (const MetricRow& r : rows) {
    auto key = std::make_tuple(r.name, r.train_size, r.metric);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.value);
  }
  for (const auto& key : order) {
    const std::vector<double>& vals = groups[key];
    long double sum = 0.0L;
    for (double v : vals) sum += v;
    double mean = static_cast<double>(sum / static_cast<long double>(vals.size()));
    double sd = 0.0;
    if (vals.size() > 1) {
      long double ss = 0.0L;
      for (double v : vals) {
        long double d = static_cast<long double>(v) - static_cast<long double>(mean);
        ss += d * d;
      }
      sd = static_cast<double>(
          std::sqrt(static_cast<double>(ss / static_cast<long double>(vals.size() - 1))));
    }
    out << std::get<0>(key) << ',' << std::get<1>(key) << ",mean,"
        << std::get<2>(key) << ',' << format_metric(mean) << '\n';
    out << std::get<0>(key) << ',' << std::get<1>(key) << ",std,"
        << std::get<2>(key) << ',' << format_metric(sd) << '\n';
  }
}

void write_audit_csv(const std::filesystem::path& path,
                     const std::vector<AuditRow>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Err::parse_error, "cannot write '" + path.string() + "'");
  }
  out << "train_size,seed,instance_id,strategy,y_star,selected,cost,"
         "fused_label,correct\n";
  for (const AuditRow& r : rows) {
    out << r.train_size << ',' << r.seed << ',' << r.instance_id << ','
        << strategy_name(r.strategy) << ',' << r.y_star << ',';
    for (std::size_t i = 0; i < r.selected.size(); ++i) {
      if (i > 0) out << ';';
      out << r.selected[i];
    }
    out << ',' << format_metric(r.cost) << ',' << r.fused << ','
        << (r.correct ? 1 : 0) << '\n';
  }
}

}  // namespace

RunMetrics run_experiment(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) {
    throw Error(Err::invalid_argument, "config needs at least one seed");
  }
  if (cfg.strategies.empty()) {
    throw Error(Err::invalid_argument, "config needs at least one strategy");
  }
  if (!(cfg.budget_fraction > 0.0)) {
    throw Error(Err::invalid_argument, "budget fraction must be positive");
  }
  Dataset ds = load_dataset(cfg.dataset_path, cfg.k);
  const std::size_t k = ds.k;
  const std::size_t n_records = ds.records.size();
  for (const InstanceRecord& rec : ds.records) {
    if (!rec.ground_truth) {
      throw Error(Err::missing_field, "record '" + rec.id + "' lacks ground_truth");
    }
    if (!rec.annotation_freqs) {
      throw Error(Err::missing_field,
                  "record '" + rec.id + "' lacks annotation_freqs");
    }
  }

  const std::vector<double> accs =
      cfg.accuracies.empty() ? preset_by_name(cfg.preset) : cfg.accuracies;
  const std::size_t n_humans = accs.size();
  const double budget = cfg.budget_fraction * static_cast<double>(n_humans) *
                        static_cast<double>(k);
  const ValueParams params(cfg.v_max, cfg.epsilon);
  const DirichletPrior prior(cfg.prior_beta, cfg.prior_gamma);

  std::vector<std::size_t> sizes;
  for (std::size_t t : cfg.train_sizes) {
    if (t > 0 && t < n_records) sizes.push_back(t);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.empty()) {
    throw Error(Err::invalid_train_size,
                "no training size fits a dataset of " +
                    std::to_string(n_records) + " records");
  }

  RunMetrics out;
  for (std::uint64_t seed : cfg.seeds) {
    const std::vector<std::vector<Label>> labels =
        synth_pool_labels(ds.records, accs, seed);
    Rng cost_rng = derive_rng(seed, "costs");
    const std::vector<double> costs = sample_costs(n_humans, k, cost_rng);

    for (std::size_t ts : sizes) {
      auto [train_idx, test_idx] = split(n_records, ts, seed);
      const std::vector<HumanProfile> pool =
          train_pool(ds.records, labels, train_idx, prior, costs, k);

      std::vector<Label> maxmax(n_humans);
      for (std::size_t i = 0; i < n_humans; ++i) {
        maxmax[i] = max_max_estimate(pool[i].phi);
      }

      CellAccum match[4];
      CellAccum model_acc;
      std::vector<CellAccum> strat_acc(cfg.strategies.size());
      std::vector<CellAccum> strat_cost(cfg.strategies.size());

      std::vector<Label> h_rand(n_humans), h_topk(n_humans);
      for (std::size_t idx : test_idx) {
        const InstanceRecord& rec = ds.records[idx];
        const Label truth = *rec.ground_truth;
        const std::uint64_t id_hash = hash_str(rec.id);
        const EstimatedLabels est = estimate_pool_labels(pool, rec.model_probs);
        for (std::size_t i = 0; i < n_humans; ++i) {
          Rng rng_r = derive_rng(seed, "est-random", id_hash, i);
          h_rand[i] = random_estimate(k, rng_r);
          Rng rng_t = derive_rng(seed, "est-topk", id_hash, i);
          h_topk[i] = top_k_estimate(pool[i].phi, rec.model_probs, cfg.top_k,
                                     rng_t);
        }
        const std::vector<Label>& t = labels[idx];
        match[0].add(estimation_match(est.labels, t));
        match[1].add(estimation_match(maxmax, t));
        match[2].add(estimation_match(h_rand, t));
        match[3].add(estimation_match(h_topk, t));
        model_acc.add(rec.model_probs.argmax() == truth ? 1.0 : 0.0);

        for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
          StrategyOutcome so = run_instance_strategy(
              pool, est.labels, rec.model_probs, cfg.strategies[s], params,
              budget, [&](std::size_t i) { return labels[idx][i]; });
          bool correct = so.prediction.label == truth;
          strat_acc[s].add(correct ? 1.0 : 0.0);
          strat_cost[s].add(so.selection.total_cost);
          out.audit_rows.push_back(AuditRow{
              ts, seed, rec.id, cfg.strategies[s], so.selection.y_star,
              so.selection.selected, so.selection.total_cost,
              so.prediction.label, correct});
        }
      }

      for (std::size_t e = 0; e < 4; ++e) {
        out.estimation_rows.push_back(MetricRow{
            estimator_name(kEstimators[e]), ts, seed, "estimation_match",
            match[e].mean()});
      }
      out.curve_rows.push_back(
          MetricRow{"model", ts, seed, "accuracy", model_acc.mean()});
      for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
        const char* name = strategy_name(cfg.strategies[s]);
        out.curve_rows.push_back(
            MetricRow{name, ts, seed, "accuracy", strat_acc[s].mean()});
        out.tradeoff_rows.push_back(
            MetricRow{name, ts, seed, "accuracy", strat_acc[s].mean()});
        out.tradeoff_rows.push_back(
            MetricRow{name, ts, seed, "mean_cost", strat_cost[s].mean()});
      }
    }
  }

  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  write_metric_csv(dir / "estimation_match.csv", "estimator",
                   out.estimation_rows);
  write_metric_csv(dir / "learning_curve.csv", "strategy", out.curve_rows);
  write_metric_csv(dir / "tradeoff.csv", "strategy", out.tradeoff_rows);
  write_audit_csv(dir / "audit_log.csv", out.audit_rows);
  return out;
}

}  // namespace placo
