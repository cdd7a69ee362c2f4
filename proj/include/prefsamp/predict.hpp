#pragma once

#include <Eigen/Core>

#include "prefsamp/basis.hpp"
#include "prefsamp/geometry.hpp"
#include "prefsamp/hmc.hpp"
#include "prefsamp/shared_model.hpp"

namespace prefsamp {

struct PredictionSurface {
  RegularGrid grid;
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

// Per kept draw, evaluate the model mean function at the grid centers, then
// take the pointwise mean and equal-tailed quantiles at the given level.

PredictionSurface predict_surface_linear(const PosteriorDraws& draws, const RegularGrid& grid,
                                         double level = 0.90);

PredictionSurface predict_surface_basis(const PosteriorDraws& draws, const BasisSet& basis,
                                        const RegularGrid& grid, double level = 0.90);

PredictionSurface predict_surface_shared(const PosteriorDraws& draws,
                                         const SharedProcessSpec& spec, const RegularGrid& grid,
                                         double level = 0.90);

/// Pointwise mean/quantile assembly from a (draws x grid) matrix of surfaces.
PredictionSurface summarize_surface_draws(const Eigen::MatrixXd& surfaces, const RegularGrid& grid,
                                          double level);

}  // namespace prefsamp
