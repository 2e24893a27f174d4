#include "placo/valuation.hpp"

#include <cmath>
#include <string>

namespace placo {

ValueParams::ValueParams(double v_max_, double epsilon_)
    : v_max(v_max_), epsilon(epsilon_) {
  if (!(epsilon > 0.0 && epsilon < 1.0 && v_max > 1.0)) {
    throw Error(Err::invalid_argument,
                "value params require 0 < epsilon < 1 < v_max");
  }
}

std::pair<double, double> ideal_gap_bounds(const ConfusionMatrix& phi) {
  return {2.0 * phi.diag_min() - 1.0, phi.diag_max()};
}

double human_value(const HumanProfile& profile, Label h_label, Label j,
                   const ValueParams& params) {
  if (profile.accuracy < 0.5) return params.epsilon;
  double s = profile.phi.at(h_label, j) + 2.0 * profile.diag_min;
  if (s <= 1.0) return params.epsilon;
  if (s >= 2.0) return params.v_max;
  return (s - 1.0) / (2.0 - s);
}

std::vector<double> value_table(std::span<const HumanProfile> pool,
                                std::span<const Label> h_labels, Label j,
                                const ValueParams& params) {
  if (pool.size() != h_labels.size()) {
    throw Error(Err::length_mismatch,
                std::to_string(pool.size()) + " profiles vs " +
                    std::to_string(h_labels.size()) + " estimated labels");
  }
  std::vector<double> values(pool.size(), 0.0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    values[i] = human_value(pool[i], h_labels[i], j, params);
  }
  return values;
}

Label select_y_star(std::span<const HumanProfile> pool,
                    std::span<const Label> h_labels,
                    const ValueParams& params) {
  if (pool.empty()) throw Error(Err::empty_pool, "y* over an empty pool");
  if (pool.size() != h_labels.size()) {
    throw Error(Err::length_mismatch,
                std::to_string(pool.size()) + " profiles vs " +
                    std::to_string(h_labels.size()) + " estimated labels");
  }
  const std::size_t k = pool.front().phi.k();
  Label best = 0;
  double best_obj = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double obj = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      obj += std::log(
          human_value(pool[i], h_labels[i], static_cast<Label>(j), params));
    }
    if (j == 0 || obj > best_obj) {
      best = static_cast<Label>(j);
      best_obj = obj;
    }
  }
  return best;
}

}  // namespace placo
