#include "placo/confusion.hpp"

#include <string>

namespace placo {

DirichletPrior::DirichletPrior(double beta_, double gamma_)
    : beta(beta_), gamma(gamma_) {
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw Error(Err::invalid_argument, "Dirichlet prior requires beta, gamma > 0");
  }
}

CountMatrix::CountMatrix(std::size_t k) : k_(k), c_(k * k, 0) {
  if (k == 0) throw Error(Err::invalid_argument, "count matrix with k=0");
}

std::size_t CountMatrix::index(Label given, Label truth, const char* op) const {
  if (given < 0 || truth < 0 || static_cast<std::size_t>(given) >= k_ ||
      static_cast<std::size_t>(truth) >= k_) {
    throw Error(Err::label_out_of_range,
                std::string(op) + " (" + std::to_string(given) + ", " +
                    std::to_string(truth) + ") with k=" + std::to_string(k_));
  }
  return static_cast<std::size_t>(given) * k_ + static_cast<std::size_t>(truth);
}

std::uint64_t CountMatrix::at(Label given, Label truth) const {
  return c_[index(given, truth, "count lookup")];
}

void CountMatrix::add(Label given, Label truth) {
  ++c_[index(given, truth, "count update")];
}

ConfusionMatrix estimate_confusion(const CountMatrix& counts,
                                   const DirichletPrior& prior) {
  const std::size_t k = counts.k();
  std::vector<double> e(k * k, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    double total = prior.gamma + static_cast<double>(k - 1) * prior.beta;
    for (std::size_t s = 0; s < k; ++s) {
      total += static_cast<double>(
          counts.at(static_cast<Label>(s), static_cast<Label>(t)));
    }
    for (std::size_t s = 0; s < k; ++s) {
      double alpha = (s == t) ? prior.gamma : prior.beta;
      e[s * k + t] =
          (static_cast<double>(
               counts.at(static_cast<Label>(s), static_cast<Label>(t))) +
           alpha) /
          total;
    }
  }
  return ConfusionMatrix(k, std::move(e));
}

double estimate_accuracy(std::span<const std::pair<Label, Label>> pairs) {
  if (pairs.empty()) {
    throw Error(Err::empty_training_data, "no (human, truth) pairs");
  }
  std::size_t hits = 0;
  for (const auto& [human, truth] : pairs) {
    if (human == truth) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

HumanProfile make_profile(int id, const CountMatrix& counts,
                          const DirichletPrior& prior,
                          std::span<const std::pair<Label, Label>> pairs,
                          double cost) {
  ConfusionMatrix phi = estimate_confusion(counts, prior);
  double accuracy;
  if (pairs.empty()) {
    double sum = 0.0;
    for (std::size_t l = 0; l < phi.k(); ++l) {
      sum += phi.at(static_cast<Label>(l), static_cast<Label>(l));
    }
    accuracy = sum / static_cast<double>(phi.k());
  } else {
    accuracy = estimate_accuracy(pairs);
  }
  return HumanProfile(id, std::move(phi), accuracy, cost);
}

}  // namespace placo
