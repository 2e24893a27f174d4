#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace placo {

// Class label, an index in {0, ..., K-1} for the ambient class count K.
using Label = int;

// Probability vectors must sum to 1 within this absolute tolerance.
inline constexpr double kSimplexTol = 1e-9;
// Ingest renormalizes sums that deviate by less than this; larger deviations
// are treated as corrupt data.
inline constexpr double kRenormTol = 1e-6;
// Confusion entries are clamped into [kPhiClamp, 1 - kPhiClamp] wherever odds
// ratios or likelihood products are formed.
inline constexpr double kPhiClamp = 1e-9;

enum class Err {
  dimension_mismatch,
  non_simplex_probabilities,
  label_out_of_range,
  column_not_stochastic,
  empty_training_data,
  invalid_k_top,
  length_mismatch,
  empty_input,
  empty_pool,
  missing_true_labels,
  pool_too_large,
  degenerate_posterior,
  parse_error,
  missing_field,
  invalid_train_size,
  invalid_argument,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg);
  Err code() const { return code_; }

 private:
  Err code_;
};

// Smallest index wins ties.
std::size_t argmax_index(std::span<const double> v);

// Length-K simplex vector of class probabilities.
class ProbVector {
 public:
  // Strict construction: sum within kSimplexTol, entries >= 0.
  static ProbVector checked(std::vector<double> p);
  // File-ingest construction: renormalizes sums off by < kRenormTol.
  static ProbVector ingest(std::vector<double> p);
  static ProbVector uniform(std::size_t k);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }
  Label argmax() const;

 private:
  explicit ProbVector(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

// K x K column-stochastic matrix; entry (given, truth) is the probability the
// human reports `given` when the truth is `truth`. Rows index the given label,
// columns the true label.
class ConfusionMatrix {
 public:
  // row-major entries, k*k of them; every column must sum to 1 within
  // kSimplexTol and entries must lie in [0, 1].
  ConfusionMatrix(std::size_t k, std::vector<double> row_major);
  static ConfusionMatrix ingest(std::size_t k, std::vector<double> row_major);
  static ConfusionMatrix identity(std::size_t k);
  static ConfusionMatrix uniform(std::size_t k);

  std::size_t k() const { return k_; }
  double at(Label given, Label truth) const;
  double diag_min() const;
  double diag_max() const;
  const std::vector<double>& entries() const { return e_; }

 private:
  ConfusionMatrix() : k_(0) {}
  std::size_t k_;
  std::vector<double> e_;
};

// One annotator in the pool.
struct HumanProfile {
  HumanProfile(int id, ConfusionMatrix phi, double accuracy, double cost);

  int id;
  ConfusionMatrix phi;
  double accuracy;  // estimate of P(human label == truth), in [0, 1]
  double cost;      // elicitation cost, > 0
  double diag_min;  // min of phi diagonal
  double diag_max;  // max of phi diagonal
};

// One task instance.
struct InstanceRecord {
  std::string id;
  std::optional<Label> ground_truth;
  ProbVector model_probs;
  std::optional<std::vector<Label>> true_human_labels;  // one per pool member
  std::optional<ProbVector> annotation_freqs;           // fraction per class
};

// Result of a subset-selection strategy on one instance.
struct SelectionOutcome {
  std::vector<std::size_t> selected;  // ascending human indices
  Label y_star = 0;                   // ground-truth surrogate used
  std::vector<double> values;         // per-human value at y_star, full pool
  double total_cost = 0.0;            // cost the strategy's charging rule incurs
};

// Throws Error naming the offending field when an invariant fails.
// pool_size constrains true_human_labels when present.
void validate_instance(const InstanceRecord& rec, std::size_t k,
                       std::size_t pool_size);

}  // namespace placo
