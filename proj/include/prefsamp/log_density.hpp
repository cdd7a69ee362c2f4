#pragma once

#include <Eigen/Core>
#include <functional>

namespace prefsamp {

struct LogDensityEval {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

using LogDensityFn = std::function<LogDensityEval(const Eigen::VectorXd&)>;

// Shared density pieces (log scale).
double log_normal_pdf(double x, double mean, double sd);
double log_half_cauchy_pdf(double x, double scale);

}  // namespace prefsamp
