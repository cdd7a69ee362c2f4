#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "prefsamp/log_density.hpp"
#include "prefsamp/sample_set.hpp"
#include "prefsamp/weights.hpp"

namespace prefsamp {

struct PseudoLinearSpec {
  WeightVector weights;
  double prior_beta_var = 3.1622776601683795;  // sqrt(10), prior variance per coefficient
  double prior_sigma_scale = 10.0;             // half-Cauchy scale for the noise sd

  void validate() const;
};

// Weighted pseudo-posterior for z ~ N(s'beta, sigma_z^2) with likelihood
// exponents given by the normalized weights. Parameters (beta1, beta2, log sigma_z).
class PseudoLinearModel {
 public:
  PseudoLinearModel(const PseudoLinearSpec& spec, const SampleSet& samples);

  LogDensityEval operator()(const Eigen::VectorXd& params) const;

  int dim() const { return 3; }
  static std::vector<std::string> param_names() { return {"beta1", "beta2", "log_sigma_z"}; }

 private:
  Eigen::MatrixXd design_;  // n x 2, columns s1 s2
  Eigen::VectorXd z_;
  Eigen::VectorXd w_;       // normalized weights
  double prior_beta_var_;
  double prior_sigma_scale_;
};

LogDensityEval log_pseudo_posterior_linear(const PseudoLinearSpec& spec, const SampleSet& samples,
                                           const Eigen::VectorXd& params);

struct WlsFit {
  Eigen::VectorXd beta;
  double residual_variance = 0.0;  // weighted mean squared residual
};

/// Closed-form solution of the weighted estimating equations, design [s1 s2].
WlsFit wls_solve(const SampleSet& samples, const WeightVector& weights);

/// General weighted least squares with a rank check.
WlsFit wls_solve_design(const Eigen::MatrixXd& design, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& weights);

struct WeightCovariateFit {
  Eigen::VectorXd beta;    // coefficients on s1, s2 (and intercept when requested)
  double weight_coef = 0.0;  // coefficient on the normalized weight column
};

// OLS of z on [s1, s2, w~] (optionally with an intercept column); the weight
// column enters as a covariate that absorbs the selection effect.
WeightCovariateFit weight_covariate_fit(const SampleSet& samples, const WeightVector& weights,
                                        bool include_intercept = false);

}  // namespace prefsamp
