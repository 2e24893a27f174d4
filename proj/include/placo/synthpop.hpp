#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "placo/rng.hpp"
#include "placo/types.hpp"

namespace placo {

struct PopulationConfig {
  PopulationConfig(std::vector<double> accuracies_, std::size_t k_,
                   std::uint64_t seed_);

  std::vector<double> accuracies;  // target accuracy per human, in [0, 1]
  std::size_t k;
  std::uint64_t seed;
};

// Named pool presets: n humans with accuracies evenly spaced over [0.3, 0.9].
std::vector<double> preset_accuracies(std::size_t n_humans);
// "h5" | "h7" | "h10" | "h15" -> accuracies; throws on anything else.
std::vector<double> preset_by_name(const std::string& name);

// Distribution an erring annotator draws from: zero mass on the truth,
// annotation frequencies renormalized over the remaining classes, uniform
// when no other class carries mass.
ProbVector error_distribution(const ProbVector& g, Label y);

// Hard label at target accuracy a: the truth with probability a, otherwise a
// draw from error_distribution(g, y).
Label synth_label(const ProbVector& g, Label y, double accuracy, Rng& rng);

// n independent costs uniform on the open interval (0, k).
std::vector<double> sample_costs(std::size_t n, std::size_t k, Rng& rng);

// Elicitation budget 0.05 * n * k.
double compute_budget(std::size_t n, std::size_t k);

// labels[instance][human]; every record needs ground truth and annotation
// frequencies. Draws depend only on (seed, instance id, human index).
std::vector<std::vector<Label>> synth_pool_labels(
    std::span<const InstanceRecord> records,
    std::span<const double> accuracies, std::uint64_t seed);

struct SynthDatasetConfig {
  std::size_t n_instances = 1000;
  std::size_t k = 10;
  double model_top1 = 0.55;  // probability the model vector peaks at the truth
  std::uint64_t seed = 1;
  std::string id_prefix = "inst";
};

// Synthetic benchmark instances: uniform ground truth, model vectors with the
// requested top-1 accuracy, annotation frequencies concentrated on the truth.
std::vector<InstanceRecord> make_synthetic_dataset(const SynthDatasetConfig& cfg);

}  // namespace placo
