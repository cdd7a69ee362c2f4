#include "prefsamp/shared_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "prefsamp/log_density.hpp"

namespace prefsamp {

void SharedProcessSpec::validate() const {
  if (knots.empty()) throw std::invalid_argument("SharedProcessSpec: no knots");
  if (fit_grid.size() == 0) throw std::invalid_argument("SharedProcessSpec: empty fit grid");
  if (!(kernel_sd > 0.0)) throw std::invalid_argument("SharedProcessSpec: kernel_sd must be > 0");
  if (!(prior_scalar_sd > 0.0) || !(prior_sigma_scale > 0.0)) {
    throw std::invalid_argument("SharedProcessSpec: prior parameters must be > 0");
  }
}

SharedProcessSpec default_shared_spec(const RectDomain& sampling_domain) {
  sampling_domain.validate();
  SharedProcessSpec spec;
  const RectDomain knot_domain = sampling_domain.expanded(0.20);
  constexpr int kKnotsPerAxis = 15;
  spec.knots = lattice_points(knot_domain, kKnotsPerAxis, kKnotsPerAxis);
  // Kernel sd equal to the knot spacing, the coarsest allowed; 0.1 on the
  // unit square.
  const double spacing = std::max(knot_domain.width1(), knot_domain.width2()) /
                         (kKnotsPerAxis - 1);
  spec.kernel_sd = spacing;
  spec.fit_grid = make_grid(sampling_domain, 41, 41);
  return spec;
}

namespace {

Eigen::MatrixXd gaussian_kernel_matrix(const std::vector<Point2>& points,
                                       const std::vector<Point2>& knots, double kernel_sd) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto j = static_cast<Eigen::Index>(knots.size());
  const double inv2s2 = 1.0 / (2.0 * kernel_sd * kernel_sd);
  Eigen::MatrixXd k(n, j);
  for (Eigen::Index b = 0; b < j; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      k(a, b) = std::exp(-sq_dist(points[a], knots[b]) * inv2s2);
    }
  }
  return k;
}

}  // namespace

SharedProcessModel::SharedProcessModel(const SharedProcessSpec& spec, const SampleSet& samples)
    : spec_(spec), z_(samples.z), n_knots_(spec.n_knots()) {
  spec.validate();
  kernel_obs_ = gaussian_kernel_matrix(samples.locations, spec_.knots, spec_.kernel_sd);
  kernel_grid_ = gaussian_kernel_matrix(spec_.fit_grid.centers, spec_.knots, spec_.kernel_sd);
  covariates_.resize(samples.size(), spec_.linear_covariates ? 2 : 0);
  if (spec_.linear_covariates) {
    for (int i = 0; i < samples.size(); ++i) {
      covariates_(i, 0) = samples.locations[static_cast<std::size_t>(i)].s1;
      covariates_(i, 1) = samples.locations[static_cast<std::size_t>(i)].s2;
    }
  }
}

std::vector<std::string> SharedProcessModel::param_names() const {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(dim()));
  for (int j = 0; j < n_knots_; ++j) names.push_back("gamma_" + std::to_string(j));
  names.push_back("mu");
  if (spec_.linear_covariates) {
    names.push_back("beta1");
    names.push_back("beta2");
  }
  names.push_back("beta_ps");
  names.push_back("alpha");
  names.push_back("log_sigma_z");
  names.push_back("log_sigma_gamma");
  return names;
}

double SharedProcessModel::point_process_term(double alpha, const Eigen::VectorXd& y_obs,
                                              const Eigen::VectorXd& y_grid) const {
  const double int_exp_y = y_grid.array().exp().sum() * spec_.fit_grid.cell_area;
  return point_process_term_cached(alpha, y_obs.sum(), int_exp_y);
}

double SharedProcessModel::point_process_term_cached(double alpha, double sum_y_obs,
                                                     double int_exp_y) const {
  // sum over observed points of log lambda minus the intensity integral,
  // lambda = exp(alpha + Y).
  return static_cast<double>(z_.size()) * alpha + sum_y_obs - std::exp(alpha) * int_exp_y;
}

double SharedProcessModel::response_term(const Eigen::VectorXd& mean_coefs, double sigma_z,
                                         const Eigen::VectorXd& y_obs) const {
  if (mean_coefs.size() != spec_.n_mean_coefs()) {
    throw std::invalid_argument("SharedProcessModel: bad mean coefficient length");
  }
  const double n = static_cast<double>(z_.size());
  Eigen::ArrayXd mean = Eigen::ArrayXd::Constant(z_.size(), mean_coefs[0]);
  if (spec_.linear_covariates) {
    mean += (covariates_ * mean_coefs.segment(1, 2)).array();
  }
  mean += mean_coefs[mean_coefs.size() - 1] * y_obs.array();
  const double ssr = (z_.array() - mean).square().sum();
  return -0.5 * n * std::log(2.0 * std::numbers::pi) - n * std::log(sigma_z) -
         0.5 * ssr / (sigma_z * sigma_z);
}

double SharedProcessModel::scalar_prior(const Eigen::VectorXd& mean_coefs, double alpha,
                                        double log_sigma_z, double log_sigma_gamma) const {
  double value = log_normal_pdf(alpha, 0.0, spec_.prior_scalar_sd);
  for (Eigen::Index i = 0; i < mean_coefs.size(); ++i) {
    value += log_normal_pdf(mean_coefs[i], 0.0, spec_.prior_scalar_sd);
  }
  value += log_half_cauchy_pdf(std::exp(log_sigma_z), spec_.prior_sigma_scale) + log_sigma_z;
  value += log_half_cauchy_pdf(std::exp(log_sigma_gamma), spec_.prior_sigma_scale) +
           log_sigma_gamma;
  return value;
}

double SharedProcessModel::log_posterior(const Eigen::VectorXd& params) const {
  if (params.size() != dim()) {
    throw std::invalid_argument("SharedProcessModel: bad parameter length");
  }
  const int n_mean = spec_.n_mean_coefs();
  const auto gamma = params.head(n_knots_);
  const Eigen::VectorXd mean_coefs = params.segment(n_knots_, n_mean);
  const double alpha = params[n_knots_ + n_mean];
  const double log_sigma_z = params[n_knots_ + n_mean + 1];
  const double log_sigma_gamma = params[n_knots_ + n_mean + 2];
  const double sigma_z = std::exp(log_sigma_z);
  const double sigma_gamma = std::exp(log_sigma_gamma);
  if (!std::isfinite(sigma_z) || sigma_z <= 0.0 || !std::isfinite(sigma_gamma) ||
      sigma_gamma <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }

  const Eigen::VectorXd y_obs = kernel_obs_ * gamma;
  const Eigen::VectorXd y_grid = kernel_grid_ * gamma;

  double value = point_process_term(alpha, y_obs, y_grid);
  value += response_term(mean_coefs, sigma_z, y_obs);
  const double j = static_cast<double>(n_knots_);
  value += -0.5 * j * std::log(2.0 * std::numbers::pi) - j * log_sigma_gamma -
           0.5 * gamma.squaredNorm() / (sigma_gamma * sigma_gamma);
  value += scalar_prior(mean_coefs, alpha, log_sigma_z, log_sigma_gamma);
  return value;
}

double log_posterior_shared(const SharedProcessSpec& spec, const SampleSet& samples,
                            const Eigen::VectorXd& params) {
  return SharedProcessModel(spec, samples).log_posterior(params);
}

}  // namespace prefsamp
