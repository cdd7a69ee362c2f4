#pragma once

#include <Eigen/Core>
#include <vector>

#include "prefsamp/geometry.hpp"

namespace prefsamp {

struct KDEConfig {
  double bandwidth1 = 0.0;  // Gaussian kernel sd per axis
  double bandwidth2 = 0.0;
  double eval_floor = 0.0;  // minimum returned density

  void validate() const;
};

// Normal-reference rule 1.06 * min(sd, IQR/1.34) * n^(-1/5), used directly as
// the Gaussian kernel sd. Throws on zero spread.
double default_bandwidth(const std::vector<double>& coords);

/// 1e-6 x (peak kernel height)/n; keeps inverse-density weights finite.
double default_eval_floor(double bandwidth1, double bandwidth2, int n);

KDEConfig default_kde_config(const std::vector<Point2>& points);

/// Product-Gaussian KDE evaluated at eval_at, floored at cfg.eval_floor.
Eigen::VectorXd kde2d_density(const std::vector<Point2>& points, const KDEConfig& cfg,
                              const std::vector<Point2>& eval_at);

}  // namespace prefsamp
