#include "prefsamp/log_density.hpp"

#include <cmath>
#include <numbers>

namespace prefsamp {

double log_normal_pdf(double x, double mean, double sd) {
  const double r = (x - mean) / sd;
  return -0.5 * std::log(2.0 * std::numbers::pi) - std::log(sd) - 0.5 * r * r;
}

double log_half_cauchy_pdf(double x, double scale) {
  if (x < 0.0) return -std::numeric_limits<double>::infinity();
  const double r = x / scale;
  return std::log(2.0 / (std::numbers::pi * scale)) - std::log1p(r * r);
}

}  // namespace prefsamp
