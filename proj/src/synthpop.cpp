#include "placo/synthpop.hpp"

#include <cmath>
#include <string>

namespace placo {

PopulationConfig::PopulationConfig(std::vector<double> accuracies_,
                                   std::size_t k_, std::uint64_t seed_)
    : accuracies(std::move(accuracies_)), k(k_), seed(seed_) {
  if (k < 2) throw Error(Err::invalid_argument, "population needs k >= 2");
  if (accuracies.empty()) {
    throw Error(Err::empty_pool, "population with no humans");
  }
  for (double a : accuracies) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(Err::invalid_argument, "accuracy outside [0, 1]");
    }
  }
}

std::vector<double> preset_accuracies(std::size_t n_humans) {
  if (n_humans == 0) throw Error(Err::empty_pool, "preset with no humans");
  std::vector<double> a(n_humans);
  if (n_humans == 1) {
    a[0] = 0.6;
    return a;
  }
  for (std::size_t i = 0; i < n_humans; ++i) {
    a[i] = 0.3 + 0.6 * static_cast<double>(i) /
                     static_cast<double>(n_humans - 1);
  }
  return a;
}

std::vector<double> preset_by_name(const std::string& name) {
  if (name == "h5") return preset_accuracies(5);
  if (name == "h7") return preset_accuracies(7);
  if (name == "h10") return preset_accuracies(10);
  if (name == "h15") return preset_accuracies(15);
  throw Error(Err::invalid_argument,
              "unknown preset '" + name + "' (expected h5, h7, h10 or h15)");
}

ProbVector error_distribution(const ProbVector& g, Label y) {
  const std::size_t k = g.size();
  if (k < 2) throw Error(Err::invalid_argument, "error distribution needs k >= 2");
  if (y < 0 || static_cast<std::size_t>(y) >= k) {
    throw Error(Err::label_out_of_range, "truth " + std::to_string(y));
  }
  double rest = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (static_cast<Label>(i) != y) rest += g[i];
  }
  std::vector<double> p(k, 0.0);
  if (rest > 0.0) {
    for (std::size_t i = 0; i < k; ++i) {
      if (static_cast<Label>(i) != y) p[i] = g[i] / rest;
    }
  } else {
    // all annotators agreed with the truth; spread errors uniformly
    for (std::size_t i = 0; i < k; ++i) {
      if (static_cast<Label>(i) != y) p[i] = 1.0 / static_cast<double>(k - 1);
    }
  }
  return ProbVector::checked(std::move(p));
}

Label synth_label(const ProbVector& g, Label y, double accuracy, Rng& rng) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw Error(Err::invalid_argument, "accuracy outside [0, 1]");
  }
  if (rng.next_unit() < accuracy) return y;
  ProbVector p = error_distribution(g, y);
  double u = rng.next_unit();
  double cum = 0.0;
  Label last_positive = y;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cum += p[i];
    last_positive = static_cast<Label>(i);
    if (u < cum) return last_positive;
  }
  return last_positive;  // rounding pushed the total below u
}

std::vector<double> sample_costs(std::size_t n, std::size_t k, Rng& rng) {
  if (n == 0) throw Error(Err::empty_pool, "costs for no humans");
  std::vector<double> costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    costs[i] = rng.next_open(0.0, static_cast<double>(k));
  }
  return costs;
}

double compute_budget(std::size_t n, std::size_t k) {
  if (n < 1 || k < 2) {
    throw Error(Err::invalid_argument, "budget needs n >= 1 and k >= 2");
  }
  return 0.05 * static_cast<double>(n) * static_cast<double>(k);
}

std::vector<std::vector<Label>> synth_pool_labels(
    std::span<const InstanceRecord> records,
    std::span<const double> accuracies, std::uint64_t seed) {
  std::vector<std::vector<Label>> labels(records.size());
  for (std::size_t x = 0; x < records.size(); ++x) {
    const InstanceRecord& rec = records[x];
    if (!rec.ground_truth) {
      throw Error(Err::missing_field,
                  "record '" + rec.id + "' lacks ground_truth");
    }
    if (!rec.annotation_freqs) {
      throw Error(Err::missing_field,
                  "record '" + rec.id + "' lacks annotation_freqs");
    }
    labels[x].resize(accuracies.size());
    for (std::size_t i = 0; i < accuracies.size(); ++i) {
      Rng rng = derive_rng(seed, "synth-label", hash_str(rec.id), i);
      labels[x][i] = synth_label(*rec.annotation_freqs, *rec.ground_truth,
                                 accuracies[i], rng);
    }
  }
  return labels;
}

namespace {

std::vector<double> uniform_simplex(std::size_t k, Rng& rng) {
  std::vector<double> v(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    v[i] = -std::log(rng.next_unit_open());
    total += v[i];
  }
  for (std::size_t i = 0; i < k; ++i) v[i] /= total;
  return v;
}

}  // namespace

std::vector<InstanceRecord> make_synthetic_dataset(
    const SynthDatasetConfig& cfg) {
  if (cfg.k < 2) throw Error(Err::invalid_argument, "dataset needs k >= 2");
  if (cfg.n_instances == 0) {
    throw Error(Err::invalid_argument, "dataset needs at least one instance");
  }
  if (!(cfg.model_top1 >= 0.0 && cfg.model_top1 <= 1.0)) {
    throw Error(Err::invalid_argument, "model_top1 outside [0, 1]");
  }
  std::vector<InstanceRecord> records;
  records.reserve(cfg.n_instances);
  for (std::size_t x = 0; x < cfg.n_instances; ++x) {
    Rng rng = derive_rng(cfg.seed, "gen-instance", x);
    const std::size_t k = cfg.k;
    Label truth = static_cast<Label>(rng.next_below(k));

    // model vector: a peaked mixture whose argmax hits the truth with
    // probability model_top1, otherwise a uniformly chosen wrong class
    std::size_t intended = static_cast<std::size_t>(truth);
    if (!(rng.next_unit() < cfg.model_top1)) {
      std::size_t wrong = rng.next_below(k - 1);
      intended = (wrong >= intended) ? wrong + 1 : wrong;
    }
    double w = rng.next_open(0.15, 0.75);
    std::vector<double> m = uniform_simplex(k, rng);
    for (std::size_t i = 0; i < k; ++i) m[i] *= (1.0 - w);
    m[intended] += w;
    std::size_t top = argmax_index(m);
    if (top != intended) std::swap(m[top], m[intended]);

    // annotation frequencies lean toward the truth with varying consensus
    double v = rng.next_open(0.3, 0.9);
    std::vector<double> g = uniform_simplex(k, rng);
    for (std::size_t i = 0; i < k; ++i) g[i] *= (1.0 - v);
    g[static_cast<std::size_t>(truth)] += v;

    std::string id = cfg.id_prefix + "_" + std::to_string(x);
    records.push_back(InstanceRecord{std::move(id), truth,
                                     ProbVector::checked(std::move(m)),
                                     std::nullopt,
                                     ProbVector::checked(std::move(g))});
  }
  return records;
}

}  // namespace placo
