#include "placo/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace placo {

CombinedPrediction combine(const ProbVector& m,
                           std::span<const Elicited> elicited) {
  if (elicited.empty()) {
    return {m, m.argmax()};
  }
  const std::size_t k = m.size();
  std::vector<double> logmass(k);
  for (std::size_t j = 0; j < k; ++j) {
    logmass[j] = std::log(m[j]);  // -inf for zero model mass is intended
  }
  for (const Elicited& e : elicited) {
    if (e.phi->k() != k) {
      throw Error(Err::dimension_mismatch,
                  "confusion matrix is " + std::to_string(e.phi->k()) +
                      "-class, model vector has " + std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) {
      double p = e.phi->at(e.label, static_cast<Label>(j));
      p = std::min(1.0 - kPhiClamp, std::max(kPhiClamp, p));
      logmass[j] += std::log(p);
    }
  }
  double shift = *std::max_element(logmass.begin(), logmass.end());
  if (!(shift > -std::numeric_limits<double>::infinity())) {
    throw Error(Err::degenerate_posterior, "all fused class masses are zero");
  }
  std::vector<double> w(k);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    w[j] = std::exp(logmass[j] - shift);
    total += w[j];
  }
  for (std::size_t j = 0; j < k; ++j) w[j] /= total;
  Label label = static_cast<Label>(argmax_index(w));
  return {ProbVector::checked(std::move(w)), label};
}

}  // namespace placo
