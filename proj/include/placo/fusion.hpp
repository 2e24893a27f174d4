#pragma once

#include <span>
#include <vector>

#include "placo/types.hpp"

namespace placo {

struct CombinedPrediction {
  ProbVector posterior;
  Label label;  // smallest-index argmax of the posterior
};

// One elicited human label with the annotator's confusion matrix.
struct Elicited {
  const ConfusionMatrix* phi;
  Label label;
};

// Bayes combination of the model vector with the elicited labels:
// posterior[j] proportional to m[j] * prod_i phi_i[label_i][j], accumulated in
// log space. An empty sequence returns m unchanged.
CombinedPrediction combine(const ProbVector& m,
                           std::span<const Elicited> elicited);

}  // namespace placo
