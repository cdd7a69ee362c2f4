#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "prefsamp/hmc.hpp"

namespace prefsamp {

// Effective sample size by the initial-positive-sequence autocorrelation
// estimator; 0 for a constant trace, capped at the number of draws.
double effective_sample_size(const Eigen::VectorXd& trace);

struct ParamSummary {
  std::string name;
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double ess = 0.0;
};

struct PosteriorSummary {
  std::vector<ParamSummary> params;
  double level = 0.90;

  const ParamSummary& find(const std::string& name) const;
};

/// Mean and equal-tailed quantile interval per parameter at the given level.
PosteriorSummary summarize(const PosteriorDraws& draws, double level = 0.90);

}  // namespace prefsamp
