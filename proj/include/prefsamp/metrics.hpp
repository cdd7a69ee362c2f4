#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "prefsamp/predict.hpp"
#include "prefsamp/sample_set.hpp"

namespace prefsamp {

/// Grid average of (pred.mean - truth)^2; grids must align.
double surface_mse(const PredictionSurface& pred, const TruthSurface& truth);

// Bias averaged over replications per grid cell first, then |.|, then the
// grid average; measures systematic over/under-prediction, not dispersion.
double mean_abs_bias(const std::vector<Eigen::VectorXd>& pred_means,
                     const std::vector<Eigen::VectorXd>& truths);

struct ParamTrack {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct CoverageWidth {
  double coverage = 0.0;
  double mean_width = 0.0;
};

/// Fraction of replications whose interval contains the truth, and mean width.
CoverageWidth coverage_and_width(const std::vector<ParamTrack>& tracks, double truth);

/// Mean runtime per model divided by the mean runtime of the baseline model.
double runtime_ratio(const std::vector<double>& model_seconds,
                     const std::vector<double>& baseline_seconds);

}  // namespace prefsamp
