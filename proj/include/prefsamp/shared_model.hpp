#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "prefsamp/geometry.hpp"
#include "prefsamp/sample_set.hpp"

namespace prefsamp {

// Shared-latent-process model: the data locations follow a Poisson process
// with intensity exp(alpha + Y(s)) and the responses follow
// z = mu + Y(s) beta + noise, where Y is a Gaussian kernel convolution of
// iid N(0, sigma_gamma^2) knot coefficients. With linear_covariates the
// response mean gains the coordinate terms, z = mu + s'beta_cov + Y(s) beta.
struct SharedProcessSpec {
  std::vector<Point2> knots;
  RegularGrid fit_grid;        // quadrature and prediction grid
  double kernel_sd = 0.1;      // Gaussian kernel sd; >= grid spacing of the knots
  double prior_scalar_sd = 10.0;    // mu, beta, alpha ~ N(0, sd^2)
  double prior_sigma_scale = 1.0;   // half-Cauchy scale for sigma_z, sigma_gamma
  bool linear_covariates = false;

  int n_knots() const { return static_cast<int>(knots.size()); }
  int n_mean_coefs() const { return linear_covariates ? 4 : 2; }  // mu (, beta1, beta2), beta_ps
  void validate() const;
};

// 15x15 knots on the sampling domain expanded by 20% of its width per side
// ([-0.2, 1.2]^2 for the unit square), kernel sd equal to the knot spacing,
// 41x41 fit grid.
SharedProcessSpec default_shared_spec(const RectDomain& sampling_domain);

// Parameter layout: gamma (J knot coefficients), mu, (beta1, beta2 when
// covariates are on,) beta_ps, alpha, log sigma_z, log sigma_gamma.
class SharedProcessModel {
 public:
  SharedProcessModel(const SharedProcessSpec& spec, const SampleSet& samples);

  double log_posterior(const Eigen::VectorXd& params) const;

  int n_knots() const { return n_knots_; }
  int dim() const { return n_knots_ + spec_.n_mean_coefs() + 3; }
  std::vector<std::string> param_names() const;

  const Eigen::MatrixXd& kernel_obs() const { return kernel_obs_; }
  const Eigen::MatrixXd& kernel_grid() const { return kernel_grid_; }
  const SharedProcessSpec& spec() const { return spec_; }
  const Eigen::VectorXd& z() const { return z_; }
  const Eigen::MatrixXd& covariates() const { return covariates_; }  // n x 0 or n x 2
  double cell_area() const { return spec_.fit_grid.cell_area; }

  // Pieces used by the blocked sampler; Y vectors are the latent field at the
  // observations / grid centers for the proposed knot coefficients.
  double point_process_term(double alpha, const Eigen::VectorXd& y_obs,
                            const Eigen::VectorXd& y_grid) const;
  double point_process_term_cached(double alpha, double sum_y_obs, double int_exp_y) const;
  // mean_coefs = (mu[, beta1, beta2], beta_ps) applied to [1, s1, s2, Y].
  double response_term(const Eigen::VectorXd& mean_coefs, double sigma_z,
                       const Eigen::VectorXd& y_obs) const;
  double scalar_prior(const Eigen::VectorXd& mean_coefs, double alpha, double log_sigma_z,
                      double log_sigma_gamma) const;

 private:
  SharedProcessSpec spec_;
  Eigen::VectorXd z_;
  Eigen::MatrixXd covariates_;   // n x 0 or n x 2
  Eigen::MatrixXd kernel_obs_;   // n x J
  Eigen::MatrixXd kernel_grid_;  // grid x J
  int n_knots_ = 0;
};

double log_posterior_shared(const SharedProcessSpec& spec, const SampleSet& samples,
                            const Eigen::VectorXd& params);

}  // namespace prefsamp
