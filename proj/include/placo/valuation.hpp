#pragma once

#include <span>
#include <utility>
#include <vector>

#include "placo/types.hpp"

namespace placo {

// Sentinels for the piecewise value function: v_max stands in for an
// unbounded odds lower bound, epsilon for a vanishing one.
struct ValueParams {
  ValueParams(double v_max_, double epsilon_);
  ValueParams() : ValueParams(1e9, 1e-9) {}

  double v_max;
  double epsilon;
};

// Range of phi[true][y] - phi[estimated][y] when the human's label equals the
// ground truth: (2 * diag_min - 1, diag_max).
std::pair<double, double> ideal_gap_bounds(const ConfusionMatrix& phi);

// Piecewise lower bound on the human's odds-ratio contribution, evaluated at
// candidate truth j from the estimated label. With s = phi[h][j] + 2*diag_min:
//   accuracy >= 0.5, s in (1, 2)  ->  (s - 1) / (2 - s)
//   accuracy >= 0.5, s <= 1       ->  epsilon
//   accuracy >= 0.5, s >= 2       ->  v_max
//   accuracy <  0.5               ->  epsilon
double human_value(const HumanProfile& profile, Label h_label, Label j,
                   const ValueParams& params);

// Value of every pool member at candidate truth j.
std::vector<double> value_table(std::span<const HumanProfile> pool,
                                std::span<const Label> h_labels, Label j,
                                const ValueParams& params);

// Ground-truth surrogate: the label maximizing the product of values over the
// full pool, computed as a sum of logs. Ties break to the smallest label.
Label select_y_star(std::span<const HumanProfile> pool,
                    std::span<const Label> h_labels, const ValueParams& params);

}  // namespace placo
