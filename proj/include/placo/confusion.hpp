#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "placo/types.hpp"

namespace placo {

// Per-column Dirichlet prior over confusion matrices: gamma on the diagonal,
// beta off it.
struct DirichletPrior {
  DirichletPrior(double beta_, double gamma_);

  double beta;
  double gamma;
};

// Sufficient statistics: counts[given][truth] over a training split.
class CountMatrix {
 public:
  explicit CountMatrix(std::size_t k);

  std::size_t k() const { return k_; }
  std::uint64_t at(Label given, Label truth) const;
  void add(Label given, Label truth);

 private:
  std::size_t index(Label given, Label truth, const char* op) const;
  std::size_t k_;
  std::vector<std::uint64_t> c_;
};

// Posterior mean of Dirichlet(prior + counts), column by column. Strictly
// interior for any positive prior, so downstream odds ratios stay finite.
ConfusionMatrix estimate_confusion(const CountMatrix& counts,
                                   const DirichletPrior& prior);

// Fraction of (human_label, truth) pairs that agree.
double estimate_accuracy(std::span<const std::pair<Label, Label>> pairs);

// Bundles estimation for one annotator. With no pairs the accuracy falls back
// to the mean diagonal of the estimated matrix.
HumanProfile make_profile(int id, const CountMatrix& counts,
                          const DirichletPrior& prior,
                          std::span<const std::pair<Label, Label>> pairs,
                          double cost);

}  // namespace placo
