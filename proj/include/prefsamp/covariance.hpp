#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "prefsamp/geometry.hpp"

namespace prefsamp {

struct CovSpec {
  double amplitude = 1.0;     // marginal sd scale (variance amplitude^2)
  double length_scale = 0.5;
  double jitter = 1e-8;       // variance added to the diagonal

  void validate() const;
};

/// Squared exponential kernel amplitude^2 * exp(-|a-b|^2 / (2 length_scale^2)).
double sq_exp_cov(const Point2& a, const Point2& b, const CovSpec& spec);

/// Gram matrix of sq_exp_cov with spec.jitter on the diagonal.
Eigen::MatrixXd build_cov_matrix(const std::vector<Point2>& points, const CovSpec& spec);

// Lower Cholesky factor; on failure escalates extra diagonal jitter from
// 1e-8*amplitude^2 by x10 up to 1e-4*amplitude^2, then throws.
Eigen::MatrixXd cholesky_lower_with_escalation(Eigen::MatrixXd cov, double amplitude);

struct GPRealization {
  RegularGrid grid;
  Eigen::VectorXd values;  // one per grid center
  CovSpec spec;
  std::uint64_t seed = 0;
};

/// Factorizes the grid covariance once; repeated seeded draws reuse the factor.
class GpSimulator {
 public:
  GpSimulator(RegularGrid grid, CovSpec spec);

  GPRealization draw(std::uint64_t seed) const;

  const Eigen::MatrixXd& chol_lower() const { return chol_lower_; }

 private:
  RegularGrid grid_;
  CovSpec spec_;
  Eigen::MatrixXd chol_lower_;
};

GPRealization simulate_gp(const RegularGrid& grid, const CovSpec& spec, std::uint64_t seed);

}  // namespace prefsamp
