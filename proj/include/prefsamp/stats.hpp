#pragma once

#include <Eigen/Core>
#include <vector>

namespace prefsamp {

double mean(const Eigen::VectorXd& x);

/// Sample standard deviation, n-1 denominator.
double sample_sd(const Eigen::VectorXd& x);

/// Type-7 (linear interpolation) empirical quantile. Reorders x in place.
double quantile_inplace(std::vector<double>& x, double p);

double quantile(const Eigen::VectorXd& x, double p);

double interquartile_range(const Eigen::VectorXd& x);

}  // namespace prefsamp
