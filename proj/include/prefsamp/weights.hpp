#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "prefsamp/kde.hpp"
#include "prefsamp/sample_set.hpp"

namespace prefsamp {

enum class WeightMode { kUnit, kKnown, kKde };

const char* to_string(WeightMode mode);

/// Sampling weights; normalized sums to the sample size.
struct WeightVector {
  Eigen::VectorXd raw;
  Eigen::VectorXd normalized;
  WeightMode mode = WeightMode::kUnit;

  int size() const { return static_cast<int>(raw.size()); }
};

WeightVector make_weight_vector(Eigen::VectorXd raw, WeightMode mode);

// Unit: raw = 1. Known: raw = 1/p_true (requires p_true). KDE: raw = 1/density
// of the sample locations, bandwidths from cfg or the normal-reference default.
WeightVector weights_from_mode(const SampleSet& samples, WeightMode mode,
                               const std::optional<KDEConfig>& cfg = std::nullopt);

struct StratumCell {
  double population = 0.0;   // N_c
  double sample_mean = 0.0;  // mean response of sampled units in the cell
};

struct StratifiedData {
  std::vector<StratumCell> cells;
  double population_total = 0.0;  // N; must equal the sum of cell populations

  void validate() const;
};

/// Population mean estimate sum_c (N_c/N) * cell sample mean.
double poststratified_mean(const StratifiedData& data);

}  // namespace prefsamp
