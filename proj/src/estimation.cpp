#include "placo/estimation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace placo {

std::pair<Label, ProbVector> posterior_estimate(const ConfusionMatrix& phi,
                                                const ProbVector& m) {
  const std::size_t k = phi.k();
  if (m.size() != k) {
    throw Error(Err::dimension_mismatch,
                "model vector has " + std::to_string(m.size()) +
                    " entries, confusion matrix is " + std::to_string(k) +
                    "-class");
  }
  std::vector<double> post(k, 0.0);
  for (std::size_t l = 0; l < k; ++l) {
    double acc = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      acc += phi.at(static_cast<Label>(l), static_cast<Label>(y)) * m[y];
    }
    post[l] = acc;
  }
  std::size_t best = argmax_index(post);
  return {static_cast<Label>(best), ProbVector::checked(std::move(post))};
}

EstimatedLabels estimate_pool_labels(std::span<const HumanProfile> pool,
                                     const ProbVector& m) {
  EstimatedLabels out;
  out.labels.reserve(pool.size());
  out.posteriors.reserve(pool.size());
  for (const HumanProfile& h : pool) {
    auto [label, post] = posterior_estimate(h.phi, m);
    out.labels.push_back(label);
    out.posteriors.push_back(std::move(post));
  }
  return out;
}

Label max_max_estimate(const ConfusionMatrix& phi) {
  const std::size_t k = phi.k();
  std::vector<double> row_max(k, 0.0);
  for (std::size_t s = 0; s < k; ++s) {
    double m = phi.at(static_cast<Label>(s), 0);
    for (std::size_t t = 1; t < k; ++t) {
      m = std::max(m, phi.at(static_cast<Label>(s), static_cast<Label>(t)));
    }
    row_max[s] = m;
  }
  return static_cast<Label>(argmax_index(row_max));
}

Label random_estimate(std::size_t k, Rng& rng) {
  if (k == 0) throw Error(Err::invalid_argument, "random estimate with k=0");
  return static_cast<Label>(rng.next_below(k));
}

Label top_k_estimate(const ConfusionMatrix& phi, const ProbVector& m,
                     std::size_t k_top, Rng& rng) {
  const std::size_t k = phi.k();
  if (m.size() != k) {
    throw Error(Err::dimension_mismatch, "model vector does not match matrix");
  }
  if (k_top < 1 || k_top > k) {
    throw Error(Err::invalid_k_top,
                "k_top=" + std::to_string(k_top) + " with k=" + std::to_string(k));
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (m[a] != m[b]) return m[a] > m[b];
    return a < b;
  });
  Label y1 = static_cast<Label>(order[rng.next_below(k_top)]);
  std::vector<double> col(k, 0.0);
  for (std::size_t s = 0; s < k; ++s) {
    col[s] = phi.at(static_cast<Label>(s), y1);
  }
  return static_cast<Label>(argmax_index(col));
}

double estimation_match(std::span<const Label> estimated,
                        std::span<const Label> truth) {
  if (estimated.size() != truth.size()) {
    throw Error(Err::length_mismatch,
                std::to_string(estimated.size()) + " estimates vs " +
                    std::to_string(truth.size()) + " truths");
  }
  if (estimated.empty()) {
    throw Error(Err::empty_input, "estimation match of empty sequences");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    if (estimated[i] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(estimated.size());
}

}  // namespace placo
