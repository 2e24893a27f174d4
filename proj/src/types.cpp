#include "placo/types.hpp"

#include <cmath>

namespace placo {

const char* err_name(Err code) {
  switch (code) {
    case Err::dimension_mismatch: return "dimension-mismatch";
    case Err::non_simplex_probabilities: return "non-simplex-probabilities";
    case Err::label_out_of_range: return "label-out-of-range";
    case Err::column_not_stochastic: return "column-not-stochastic";
    case Err::empty_training_data: return "empty-training-data";
    case Err::invalid_k_top: return "invalid-k-top";
    case Err::length_mismatch: return "length-mismatch";
    case Err::empty_input: return "empty-input";
    case Err::empty_pool: return "empty-pool";
    case Err::missing_true_labels: return "missing-true-labels";
    case Err::pool_too_large: return "pool-too-large";
    case Err::degenerate_posterior: return "degenerate-posterior";
    case Err::parse_error: return "parse-error";
    case Err::missing_field: return "missing-field";
    case Err::invalid_train_size: return "invalid-train-size";
    case Err::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

Error::Error(Err code, const std::string& msg)
    : std::runtime_error(std::string(err_name(code)) + ": " + msg),
      code_(code) {}

std::size_t argmax_index(std::span<const double> v) {
  if (v.empty()) throw Error(Err::empty_input, "argmax of empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

namespace {

double simplex_sum(const std::vector<double>& p, const char* what) {
  if (p.empty()) throw Error(Err::empty_input, std::string(what) + " is empty");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) {
      throw Error(Err::non_simplex_probabilities,
                  std::string(what) + " has a negative or NaN entry");
    }
    sum += x;
  }
  return sum;
}

}  // namespace

ProbVector ProbVector::checked(std::vector<double> p) {
  double sum = simplex_sum(p, "probability vector");
  if (!(std::abs(sum - 1.0) <= kSimplexTol)) {
    throw Error(Err::non_simplex_probabilities,
                "probability vector sums to " + std::to_string(sum));
  }
  return ProbVector(std::move(p));
}

ProbVector ProbVector::ingest(std::vector<double> p) {
  double sum = simplex_sum(p, "probability vector");
  double dev = std::abs(sum - 1.0);
  if (dev <= kSimplexTol) return ProbVector(std::move(p));
  if (dev < kRenormTol) {
    for (double& x : p) x /= sum;
    return ProbVector(std::move(p));
  }
  throw Error(Err::non_simplex_probabilities,
              "probability vector sums to " + std::to_string(sum));
}

ProbVector ProbVector::uniform(std::size_t k) {
  if (k == 0) throw Error(Err::invalid_argument, "uniform ProbVector with k=0");
  return ProbVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Label ProbVector::argmax() const {
  return static_cast<Label>(argmax_index(p_));
}

ConfusionMatrix::ConfusionMatrix(std::size_t k, std::vector<double> row_major)
    : k_(k), e_(std::move(row_major)) {
  if (k_ == 0 || e_.size() != k_ * k_) {
    throw Error(Err::dimension_mismatch, "confusion matrix must be k*k");
  }
  for (double x : e_) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(Err::column_not_stochastic,
                  "confusion entry outside [0, 1]");
    }
  }
  for (std::size_t t = 0; t < k_; ++t) {
    double sum = 0.0;
    for (std::size_t s = 0; s < k_; ++s) sum += e_[s * k_ + t];
    if (!(std::abs(sum - 1.0) <= kSimplexTol)) {
      throw Error(Err::column_not_stochastic,
                  "column " + std::to_string(t) + " sums to " +
                      std::to_string(sum));
    }
  }
}

ConfusionMatrix ConfusionMatrix::ingest(std::size_t k,
                                        std::vector<double> row_major) {
  if (k == 0 || row_major.size() != k * k) {
    throw Error(Err::dimension_mismatch, "confusion matrix must be k*k");
  }
  for (std::size_t t = 0; t < k; ++t) {
    double sum = 0.0;
    for (std::size_t s = 0; s < k; ++s) sum += row_major[s * k + t];
    double dev = std::abs(sum - 1.0);
    if (dev > kSimplexTol && dev < kRenormTol) {
      for (std::size_t s = 0; s < k; ++s) row_major[s * k + t] /= sum;
    }
  }
  return ConfusionMatrix(k, std::move(row_major));
}

ConfusionMatrix ConfusionMatrix::identity(std::size_t k) {
  std::vector<double> e(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) e[i * k + i] = 1.0;
  return ConfusionMatrix(k, std::move(e));
}

ConfusionMatrix ConfusionMatrix::uniform(std::size_t k) {
  return ConfusionMatrix(k,
                         std::vector<double>(k * k, 1.0 / static_cast<double>(k)));
}

double ConfusionMatrix::at(Label given, Label truth) const {
  if (given < 0 || truth < 0 || static_cast<std::size_t>(given) >= k_ ||
      static_cast<std::size_t>(truth) >= k_) {
    throw Error(Err::label_out_of_range, "confusion index (" +
                                             std::to_string(given) + ", " +
                                             std::to_string(truth) + ")");
  }
  return e_[static_cast<std::size_t>(given) * k_ +
            static_cast<std::size_t>(truth)];
}

double ConfusionMatrix::diag_min() const {
  double m = e_[0];
  for (std::size_t i = 1; i < k_; ++i) m = std::min(m, e_[i * k_ + i]);
  return m;
}

double ConfusionMatrix::diag_max() const {
  double m = e_[0];
  for (std::size_t i = 1; i < k_; ++i) m = std::max(m, e_[i * k_ + i]);
  return m;
}

HumanProfile::HumanProfile(int id_, ConfusionMatrix phi_, double accuracy_,
                           double cost_)
    : id(id_),
      phi(std::move(phi_)),
      accuracy(accuracy_),
      cost(cost_),
      diag_min(phi.diag_min()),
      diag_max(phi.diag_max()) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw Error(Err::invalid_argument, "accuracy must be in [0, 1]");
  }
  if (!(cost > 0.0)) {
    throw Error(Err::invalid_argument, "cost must be positive");
  }
}

void validate_instance(const InstanceRecord& rec, std::size_t k,
                       std::size_t pool_size) {
  if (rec.model_probs.size() != k) {
    throw Error(Err::dimension_mismatch,
                "model_probs has " + std::to_string(rec.model_probs.size()) +
                    " entries, expected " + std::to_string(k));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += rec.model_probs[i];
  if (!(std::abs(sum - 1.0) <= kSimplexTol)) {
    throw Error(Err::non_simplex_probabilities,
                "model_probs sums to " + std::to_string(sum));
  }
  if (rec.ground_truth) {
    Label y = *rec.ground_truth;
    if (y < 0 || static_cast<std::size_t>(y) >= k) {
      throw Error(Err::label_out_of_range,
                  "ground_truth " + std::to_string(y));
    }
  }
  if (rec.true_human_labels) {
    if (rec.true_human_labels->size() != pool_size) {
      throw Error(Err::dimension_mismatch,
                  "true_human_labels has " +
                      std::to_string(rec.true_human_labels->size()) +
                      " entries, expected " + std::to_string(pool_size));
    }
    for (Label t : *rec.true_human_labels) {
      if (t < 0 || static_cast<std::size_t>(t) >= k) {
        throw Error(Err::label_out_of_range,
                    "true_human_labels entry " + std::to_string(t));
      }
    }
  }
  if (rec.annotation_freqs) {
    if (rec.annotation_freqs->size() != k) {
      throw Error(Err::dimension_mismatch,
                  "annotation_freqs has " +
                      std::to_string(rec.annotation_freqs->size()) +
                      " entries, expected " + std::to_string(k));
    }
    double g = 0.0;
    for (std::size_t i = 0; i < k; ++i) g += (*rec.annotation_freqs)[i];
    if (!(std::abs(g - 1.0) <= kSimplexTol)) {
      throw Error(Err::non_simplex_probabilities,
                  "annotation_freqs sums to " + std::to_string(g));
    }
  }
}

}  // namespace placo
