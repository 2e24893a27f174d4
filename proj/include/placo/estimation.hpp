#pragma once

#include <span>
#include <utility>
#include <vector>

#include "placo/rng.hpp"
#include "placo/types.hpp"

namespace placo {

// Predicted labels for a pool of humans on one instance, with the posterior
// vectors when the posterior method produced them.
struct EstimatedLabels {
  std::vector<Label> labels;
  std::vector<ProbVector> posteriors;  // may be empty for naive estimators
};

// P(human says l | model output) = sum_y phi[l][y] * m[y]; returns the argmax
// label and the full posterior. Ties break toward the smallest label.
std::pair<Label, ProbVector> posterior_estimate(const ConfusionMatrix& phi,
                                                const ProbVector& m);

// Posterior estimates for a whole pool on one instance.
EstimatedLabels estimate_pool_labels(std::span<const HumanProfile> pool,
                                     const ProbVector& m);

// Instance-independent: the row of the largest confusion entry.
Label max_max_estimate(const ConfusionMatrix& phi);

// Uniform draw over {0, ..., k-1}.
Label random_estimate(std::size_t k, Rng& rng);

// Draw y1 uniformly from the k_top most probable model classes (ties by
// index), then take the most likely human response given truth y1.
Label top_k_estimate(const ConfusionMatrix& phi, const ProbVector& m,
                     std::size_t k_top, Rng& rng);

// Fraction of positions where the estimate equals the true human label.
double estimation_match(std::span<const Label> estimated,
                        std::span<const Label> truth);

}  // namespace placo
