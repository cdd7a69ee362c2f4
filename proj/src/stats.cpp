#include "prefsamp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prefsamp {

double mean(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw std::invalid_argument("mean: empty vector");
  return x.mean();
}

double sample_sd(const Eigen::VectorXd& x) {
  const auto n = x.size();
  if (n < 2) throw std::invalid_argument("sample_sd: need >= 2 values");
  const double m = x.mean();
  return std::sqrt((x.array() - m).square().sum() / static_cast<double>(n - 1));
}

double quantile_inplace(std::vector<double>& x, double p) {
  if (x.empty()) throw std::invalid_argument("quantile: empty vector");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p outside [0,1]");
  const auto n = x.size();
  const double h = (static_cast<double>(n) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(lo), x.end());
  const double xlo = x[lo];
  if (frac == 0.0 || lo + 1 >= n) return xlo;
  const double xhi = *std::min_element(x.begin() + static_cast<std::ptrdiff_t>(lo) + 1, x.end());
  return xlo + frac * (xhi - xlo);
}

double quantile(const Eigen::VectorXd& x, double p) {
  std::vector<double> v(x.data(), x.data() + x.size());
  return quantile_inplace(v, p);
}

double interquartile_range(const Eigen::VectorXd& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  const double q1 = quantile_inplace(v, 0.25);
  const double q3 = quantile_inplace(v, 0.75);
  return q3 - q1;
}

}  // namespace prefsamp
