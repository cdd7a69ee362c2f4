#include "prefsamp/kde.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "prefsamp/stats.hpp"

namespace prefsamp {

void KDEConfig::validate() const {
  if (!(bandwidth1 > 0.0) || !(bandwidth2 > 0.0)) {
    throw std::invalid_argument("KDEConfig: bandwidths must be > 0");
  }
  if (!(eval_floor > 0.0)) throw std::invalid_argument("KDEConfig: eval_floor must be > 0");
}

double default_bandwidth(const std::vector<double>& coords) {
  if (coords.size() < 2) throw std::invalid_argument("default_bandwidth: need >= 2 values");
  Eigen::Map<const Eigen::VectorXd> x(coords.data(), static_cast<Eigen::Index>(coords.size()));
  const double spread = std::min(sample_sd(x), interquartile_range(x) / 1.34);
  if (!(spread > 0.0)) throw std::domain_error("default_bandwidth: zero spread");
  return 1.06 * spread * std::pow(static_cast<double>(coords.size()), -0.2);
}

double default_eval_floor(double bandwidth1, double bandwidth2, int n) {
  return 1e-6 / (2.0 * std::numbers::pi * bandwidth1 * bandwidth2 * n);
}

KDEConfig default_kde_config(const std::vector<Point2>& points) {
  std::vector<double> c1, c2;
  c1.reserve(points.size());
  c2.reserve(points.size());
  for (const auto& p : points) {
    c1.push_back(p.s1);
    c2.push_back(p.s2);
  }
  KDEConfig cfg;
  cfg.bandwidth1 = default_bandwidth(c1);
  cfg.bandwidth2 = default_bandwidth(c2);
  cfg.eval_floor = default_eval_floor(cfg.bandwidth1, cfg.bandwidth2,
                                      static_cast<int>(points.size()));
  return cfg;
}

Eigen::VectorXd kde2d_density(const std::vector<Point2>& points, const KDEConfig& cfg,
                              const std::vector<Point2>& eval_at) {
  cfg.validate();
  if (points.size() < 2) throw std::invalid_argument("kde2d_density: need >= 2 points");

  const double h1 = cfg.bandwidth1;
  const double h2 = cfg.bandwidth2;
  const double norm =
      1.0 / (2.0 * std::numbers::pi * h1 * h2 * static_cast<double>(points.size()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(eval_at.size()));
  for (std::size_t e = 0; e < eval_at.size(); ++e) {
    double acc = 0.0;
    for (const auto& p : points) {
      const double u1 = (eval_at[e].s1 - p.s1) / h1;
      const double u2 = (eval_at[e].s2 - p.s2) / h2;
      acc += std::exp(-0.5 * (u1 * u1 + u2 * u2));
    }
    out[static_cast<Eigen::Index>(e)] = std::max(acc * norm, cfg.eval_floor);
  }
  return out;
}

}  // namespace prefsamp
