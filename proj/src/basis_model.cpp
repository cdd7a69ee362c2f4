#include "prefsamp/basis_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace prefsamp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 + e^x) without overflow.
double log1p_exp(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// 2 e^x / (1 + e^x), the derivative of log(1 + e^x) scaled by 2.
double two_sigmoid(double x) { return 2.0 / (1.0 + std::exp(-x)); }

}  // namespace

void BasisSpatialSpec::validate() const {
  if (basis.size() == 0) throw std::invalid_argument("BasisSpatialSpec: empty basis");
  if (!(prior_sigma_scale > 0.0)) {
    throw std::invalid_argument("BasisSpatialSpec: prior_sigma_scale must be > 0");
  }
}

BasisSpatialModel::BasisSpatialModel(const BasisSpatialSpec& spec, const SampleSet& samples)
    : k_(spec.basis.size()), prior_sigma_scale_(spec.prior_sigma_scale) {
  spec.validate();
  if (spec.weights.size() != samples.size()) {
    throw std::invalid_argument("BasisSpatialModel: weights/sample size mismatch");
  }
  phi_ = evaluate_basis_matrix(samples.locations, spec.basis);
  z_ = samples.z;
  w_ = spec.weights.normalized;
}

std::vector<std::string> BasisSpatialModel::param_names() const {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(dim()));
  for (int k = 0; k < k_; ++k) names.push_back("eta_" + std::to_string(k));
  for (int k = 0; k < k_; ++k) names.push_back("log_lambda_" + std::to_string(k));
  names.push_back("log_tau");
  names.push_back("log_sigma_z");
  return names;
}

LogDensityEval BasisSpatialModel::operator()(const Eigen::VectorXd& params) const {
  const int d = dim();
  if (params.size() != d) throw std::invalid_argument("BasisSpatialModel: bad parameter length");

  const auto eta = params.head(k_);
  const auto log_lambda = params.segment(k_, k_);
  const double log_tau = params[2 * k_];
  const double log_sigma = params[2 * k_ + 1];
  const double sigma = std::exp(log_sigma);
  if (!std::isfinite(sigma) || sigma <= 0.0) return {kNegInf, Eigen::VectorXd::Zero(d)};
  const double sigma2 = sigma * sigma;

  const Eigen::VectorXd resid = z_ - phi_ * eta;
  const double w_total = w_.sum();
  const double ssr_w = (w_.array() * resid.array().square()).sum();

  double value = -0.5 * w_total * std::log(2.0 * std::numbers::pi) - w_total * log_sigma -
                 0.5 * ssr_w / sigma2;

  // Horseshoe: eta_k ~ N(0, (lambda_k tau)^2), lambda_k, tau ~ half-Cauchy(0,1),
  // sampled on the log scale (Jacobians included).
  const double log_two_over_pi = std::log(2.0 / std::numbers::pi);
  Eigen::VectorXd inv_scale2(k_);  // e^{-2(log lambda_k + log tau)}
  for (int k = 0; k < k_; ++k) {
    const double log_scale = log_lambda[k] + log_tau;
    inv_scale2[k] = std::exp(-2.0 * log_scale);
    value += -0.5 * std::log(2.0 * std::numbers::pi) - log_scale -
             0.5 * eta[k] * eta[k] * inv_scale2[k];
    value += log_two_over_pi - log1p_exp(2.0 * log_lambda[k]) + log_lambda[k];
  }
  value += log_two_over_pi - log1p_exp(2.0 * log_tau) + log_tau;
  const double a2 = prior_sigma_scale_ * prior_sigma_scale_;
  value += std::log(2.0 / (std::numbers::pi * prior_sigma_scale_)) -
           std::log1p(sigma2 / a2) + log_sigma;
  if (!std::isfinite(value)) return {kNegInf, Eigen::VectorXd::Zero(d)};

  Eigen::VectorXd grad(d);
  grad.head(k_) = phi_.transpose() * (w_.array() * resid.array()).matrix() / sigma2 -
                  (eta.array() * inv_scale2.array()).matrix();
  double gv = 0.0;
  for (int k = 0; k < k_; ++k) {
    const double pull = eta[k] * eta[k] * inv_scale2[k];
    grad[k_ + k] = pull - two_sigmoid(2.0 * log_lambda[k]);
    gv += pull - 1.0;
  }
  grad[2 * k_] = gv - two_sigmoid(2.0 * log_tau) + 1.0;
  grad[2 * k_ + 1] = -w_total + ssr_w / sigma2 - 2.0 * sigma2 / (a2 + sigma2) + 1.0;
  if (!grad.allFinite()) return {kNegInf, Eigen::VectorXd::Zero(d)};
  return {value, std::move(grad)};
}

LogDensityEval BasisSpatialModel::noncentered(const Eigen::VectorXd& params) const {
  const int d = dim();
  if (params.size() != d) throw std::invalid_argument("BasisSpatialModel: bad parameter length");

  const auto eta_raw = params.head(k_);
  const auto log_lambda = params.segment(k_, k_);
  const double log_tau = params[2 * k_];
  const double log_sigma = params[2 * k_ + 1];
  const double sigma = std::exp(log_sigma);
  if (!std::isfinite(sigma) || sigma <= 0.0) return {kNegInf, Eigen::VectorXd::Zero(d)};
  const double sigma2 = sigma * sigma;

  Eigen::VectorXd scale(k_);
  for (int k = 0; k < k_; ++k) scale[k] = std::exp(log_lambda[k] + log_tau);
  if (!scale.allFinite()) return {kNegInf, Eigen::VectorXd::Zero(d)};
  const Eigen::VectorXd eta = (eta_raw.array() * scale.array()).matrix();

  const Eigen::VectorXd resid = z_ - phi_ * eta;
  const double w_total = w_.sum();
  const double ssr_w = (w_.array() * resid.array().square()).sum();

  double value = -0.5 * w_total * std::log(2.0 * std::numbers::pi) - w_total * log_sigma -
                 0.5 * ssr_w / sigma2;
  value += -0.5 * static_cast<double>(k_) * std::log(2.0 * std::numbers::pi) -
           0.5 * eta_raw.squaredNorm();
  const double log_two_over_pi = std::log(2.0 / std::numbers::pi);
  for (int k = 0; k < k_; ++k) {
    value += log_two_over_pi - log1p_exp(2.0 * log_lambda[k]) + log_lambda[k];
  }
  value += log_two_over_pi - log1p_exp(2.0 * log_tau) + log_tau;
  const double a2 = prior_sigma_scale_ * prior_sigma_scale_;
  value += std::log(2.0 / (std::numbers::pi * prior_sigma_scale_)) -
           std::log1p(sigma2 / a2) + log_sigma;
  if (!std::isfinite(value)) return {kNegInf, Eigen::VectorXd::Zero(d)};

  const Eigen::VectorXd q = phi_.transpose() * (w_.array() * resid.array()).matrix() / sigma2;
  Eigen::VectorXd grad(d);
  grad.head(k_) = (q.array() * scale.array() - eta_raw.array()).matrix();
  double gv = 0.0;
  for (int k = 0; k < k_; ++k) {
    const double pull = q[k] * eta[k];
    grad[k_ + k] = pull - two_sigmoid(2.0 * log_lambda[k]) + 1.0;
    gv += pull;
  }
  grad[2 * k_] = gv - two_sigmoid(2.0 * log_tau) + 1.0;
  grad[2 * k_ + 1] = -w_total + ssr_w / sigma2 - 2.0 * sigma2 / (a2 + sigma2) + 1.0;
  if (!grad.allFinite()) return {kNegInf, Eigen::VectorXd::Zero(d)};
  return {value, std::move(grad)};
}

Eigen::VectorXd BasisSpatialModel::from_noncentered(const Eigen::VectorXd& params) const {
  Eigen::VectorXd out = params;
  for (int k = 0; k < k_; ++k) out[k] = params[k] * std::exp(params[k_ + k] + params[2 * k_]);
  return out;
}

Eigen::VectorXd BasisSpatialModel::to_noncentered(const Eigen::VectorXd& params) const {
  Eigen::VectorXd out = params;
  for (int k = 0; k < k_; ++k) out[k] = params[k] * std::exp(-(params[k_ + k] + params[2 * k_]));
  return out;
}

LogDensityEval log_pseudo_posterior_basis(const BasisSpatialSpec& spec, const SampleSet& samples,
                                          const Eigen::VectorXd& params) {
  return BasisSpatialModel(spec, samples)(params);
}

}  // namespace prefsamp
