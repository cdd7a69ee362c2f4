#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "prefsamp/basis.hpp"
#include "prefsamp/log_density.hpp"
#include "prefsamp/sample_set.hpp"
#include "prefsamp/weights.hpp"

namespace prefsamp {

struct BasisSpatialSpec {
  BasisSet basis;
  WeightVector weights;
  double prior_sigma_scale = 10.0;  // half-Cauchy scale for the noise sd

  void validate() const;
};

// Weighted pseudo-posterior for z ~ N(Phi eta, sigma_z^2) with a horseshoe
// prior on the basis coefficients: eta_k ~ N(0, (lambda_k tau)^2),
// lambda_k, tau ~ half-Cauchy(0, 1).
//
// Parameter layout: eta (K), log lambda (K), log tau, log sigma_z.
class BasisSpatialModel {
 public:
  BasisSpatialModel(const BasisSpatialSpec& spec, const SampleSet& samples);

  LogDensityEval operator()(const Eigen::VectorXd& params) const;

  // Same posterior in whitened coordinates eta = (lambda_k tau) eta_raw; the
  // funnel between eta and the shrinkage scales is much better conditioned
  // for HMC when the data are weak.
  LogDensityEval noncentered(const Eigen::VectorXd& params) const;
  /// Map a whitened parameter vector back to (eta, log lambda, log tau, log sigma_z).
  Eigen::VectorXd from_noncentered(const Eigen::VectorXd& params) const;
  Eigen::VectorXd to_noncentered(const Eigen::VectorXd& params) const;

  int n_basis() const { return k_; }
  int dim() const { return 2 * k_ + 2; }
  std::vector<std::string> param_names() const;
  const Eigen::MatrixXd& basis_matrix() const { return phi_; }

 private:
  Eigen::MatrixXd phi_;  // n x K
  Eigen::VectorXd z_;
  Eigen::VectorXd w_;
  int k_ = 0;
  double prior_sigma_scale_;
};

LogDensityEval log_pseudo_posterior_basis(const BasisSpatialSpec& spec, const SampleSet& samples,
                                          const Eigen::VectorXd& params);

}  // namespace prefsamp
