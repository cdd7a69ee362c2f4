#include "prefsamp/linear_model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace prefsamp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

LogDensityEval rejected(Eigen::Index dim) {
  return {kNegInf, Eigen::VectorXd::Zero(dim)};
}

}  // namespace

void PseudoLinearSpec::validate() const {
  if (!(prior_beta_var > 0.0) || !(prior_sigma_scale > 0.0)) {
    throw std::invalid_argument("PseudoLinearSpec: prior parameters must be > 0");
  }
}

PseudoLinearModel::PseudoLinearModel(const PseudoLinearSpec& spec, const SampleSet& samples)
    : prior_beta_var_(spec.prior_beta_var), prior_sigma_scale_(spec.prior_sigma_scale) {
  spec.validate();
  const int n = samples.size();
  if (spec.weights.size() != n) {
    throw std::invalid_argument("PseudoLinearModel: weights/sample size mismatch");
  }
  design_.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    design_(i, 0) = samples.locations[i].s1;
    design_(i, 1) = samples.locations[i].s2;
  }
  z_ = samples.z;
  w_ = spec.weights.normalized;
}

LogDensityEval PseudoLinearModel::operator()(const Eigen::VectorXd& params) const {
  if (params.size() != 3) throw std::invalid_argument("PseudoLinearModel: expected 3 parameters");
  const Eigen::Vector2d beta = params.head<2>();
  const double log_sigma = params[2];
  const double sigma = std::exp(log_sigma);
  if (!std::isfinite(sigma) || sigma <= 0.0) return rejected(3);

  const double sigma2 = sigma * sigma;
  const Eigen::VectorXd resid = z_ - design_ * beta;
  const double w_total = w_.sum();
  const double ssr_w = (w_.array() * resid.array().square()).sum();

  double value = -0.5 * w_total * std::log(2.0 * std::numbers::pi) - w_total * log_sigma -
                 0.5 * ssr_w / sigma2;
  // Priors: beta ~ N(0, prior_beta_var I), sigma ~ half-Cauchy(0, scale),
  // plus the log-sigma Jacobian.
  value += -std::log(2.0 * std::numbers::pi * prior_beta_var_) -
           0.5 * beta.squaredNorm() / prior_beta_var_;
  value += log_half_cauchy_pdf(sigma, prior_sigma_scale_);
  value += log_sigma;
  if (!std::isfinite(value)) return rejected(3);

  Eigen::VectorXd grad(3);
  grad.head<2>() = design_.transpose() * (w_.array() * resid.array()).matrix() / sigma2 -
                   beta / prior_beta_var_;
  const double a2 = prior_sigma_scale_ * prior_sigma_scale_;
  grad[2] = -w_total + ssr_w / sigma2 - 2.0 * sigma2 / (a2 + sigma2) + 1.0;
  if (!grad.allFinite()) return rejected(3);
  return {value, std::move(grad)};
}

LogDensityEval log_pseudo_posterior_linear(const PseudoLinearSpec& spec, const SampleSet& samples,
                                           const Eigen::VectorXd& params) {
  return PseudoLinearModel(spec, samples)(params);
}

WlsFit wls_solve_design(const Eigen::MatrixXd& design, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& weights) {
  const auto n = design.rows();
  const auto p = design.cols();
  if (z.size() != n || weights.size() != n) {
    throw std::invalid_argument("wls_solve_design: dimension mismatch");
  }
  const Eigen::MatrixXd xw = design.array().colwise() * weights.array();
  const Eigen::MatrixXd xtwx = xw.transpose() * design;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtwx);
  if (lu.rank() < p) throw std::runtime_error("wls_solve_design: rank-deficient design");

  WlsFit fit;
  fit.beta = lu.solve(xw.transpose() * z);
  const Eigen::VectorXd resid = z - design * fit.beta;
  fit.residual_variance = (weights.array() * resid.array().square()).sum() / weights.sum();
  return fit;
}

WlsFit wls_solve(const SampleSet& samples, const WeightVector& weights) {
  const int n = samples.size();
  Eigen::MatrixXd design(n, 2);
  for (int i = 0; i < n; ++i) {
    design(i, 0) = samples.locations[i].s1;
    design(i, 1) = samples.locations[i].s2;
  }
  return wls_solve_design(design, samples.z, weights.normalized);
}

WeightCovariateFit weight_covariate_fit(const SampleSet& samples, const WeightVector& weights,
                                        bool include_intercept) {
  const int n = samples.size();
  if (weights.size() != n) {
    throw std::invalid_argument("weight_covariate_fit: weights/sample size mismatch");
  }
  const int p = include_intercept ? 4 : 3;
  Eigen::MatrixXd design(n, p);
  int col = 0;
  if (include_intercept) design.col(col++).setOnes();
  for (int i = 0; i < n; ++i) {
    design(i, col) = samples.locations[i].s1;
    design(i, col + 1) = samples.locations[i].s2;
    design(i, col + 2) = weights.normalized[i];
  }
  const WlsFit ols = wls_solve_design(design, samples.z, Eigen::VectorXd::Ones(n));

  WeightCovariateFit fit;
  fit.beta = ols.beta.head(p - 1);
  fit.weight_coef = ols.beta[p - 1];
  return fit;
}

}  // namespace prefsamp
