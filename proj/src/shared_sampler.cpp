#include "prefsamp/shared_sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "prefsamp/log_density.hpp"
#include "prefsamp/rng.hpp"
#include "prefsamp/stats.hpp"

namespace prefsamp {

PosteriorDraws mwg_sample_shared(const SharedProcessSpec& spec, const SampleSet& samples,
                                 const SamplerConfig& cfg) {
  cfg.validate();
  const SharedProcessModel model(spec, samples);
  const int n_knots = model.n_knots();
  const int n_mean = spec.n_mean_coefs();
  const int n = samples.size();
  if (n == 0) throw std::invalid_argument("mwg_sample_shared: empty sample");

  Rng rng(cfg.seed);

  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n_knots);
  Eigen::VectorXd y_obs = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y_grid = Eigen::VectorXd::Zero(model.kernel_grid().rows());
  double int_exp_y = y_grid.array().exp().sum() * model.cell_area();

  // Scalar state: mean coefficients (mu[, beta1, beta2], beta_ps), then
  // alpha, log sigma_z, log sigma_gamma.
  Eigen::VectorXd mean_coefs = Eigen::VectorXd::Zero(n_mean);
  mean_coefs[0] = mean(samples.z);
  double alpha = std::log(static_cast<double>(n) / spec.fit_grid.domain.area());
  double log_sigma_z = std::log(std::max(sample_sd(samples.z), 1e-3));
  double log_sigma_gamma = 0.0;

  const int n_scalars = n_mean + 3;
  std::vector<double> log_step(static_cast<std::size_t>(n_scalars), std::log(0.5));
  std::vector<long> kept_prop(static_cast<std::size_t>(n_scalars), 0);
  std::vector<long> kept_acc(static_cast<std::size_t>(n_scalars), 0);

  auto gamma_prior = [&](double lsg, double gamma_sq_norm) {
    const double j = static_cast<double>(n_knots);
    return -0.5 * j * std::log(2.0 * std::numbers::pi) - j * lsg -
           0.5 * gamma_sq_norm * std::exp(-2.0 * lsg);
  };

  double ll_pp = model.point_process_term_cached(alpha, y_obs.sum(), int_exp_y);
  double ll_resp = model.response_term(mean_coefs, std::exp(log_sigma_z), y_obs);

  PosteriorDraws out;
  out.names = model.param_names();
  out.draws.resize(cfg.n_keep(), model.dim());
  out.seed = cfg.seed;

  Eigen::VectorXd nu(n_knots), y_nu_obs(n), y_nu_grid(y_grid.size());
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  for (int iter = 0; iter < cfg.n_iter; ++iter) {
    const bool adapting = iter < cfg.n_burn;

    // Elliptical slice move for the knot coefficients under N(0, sigma_gamma^2 I);
    // proposals stay on the ellipse spanned by (gamma, nu), so the latent field
    // updates are linear combinations of two precomputed projections.
    {
      const double sigma_gamma = std::exp(log_sigma_gamma);
      for (int j = 0; j < n_knots; ++j) nu[j] = sigma_gamma * rng.normal();
      y_nu_obs.noalias() = model.kernel_obs() * nu;
      y_nu_grid.noalias() = model.kernel_grid() * nu;

      const double log_y = ll_pp + ll_resp + std::log(1.0 - rng.uniform());
      double theta = rng.uniform(0.0, kTwoPi);
      double theta_min = theta - kTwoPi;
      double theta_max = theta;
      for (int guard = 0; guard < 1000; ++guard) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Eigen::VectorXd yo = c * y_obs + s * y_nu_obs;
        Eigen::VectorXd yg = c * y_grid + s * y_nu_grid;
        const double ie = yg.array().exp().sum() * model.cell_area();
        const double pp = model.point_process_term_cached(alpha, yo.sum(), ie);
        const double rr = model.response_term(mean_coefs, std::exp(log_sigma_z), yo);
        if (pp + rr > log_y) {
          gamma = c * gamma + s * nu;
          y_obs = std::move(yo);
          y_grid = std::move(yg);
          int_exp_y = ie;
          ll_pp = pp;
          ll_resp = rr;
          break;
        }
        if (theta < 0.0) {
          theta_min = theta;
        } else {
          theta_max = theta;
        }
        theta = rng.uniform(theta_min, theta_max);
      }
    }

    // Random-walk Metropolis per scalar, adapted to 0.44 acceptance.
    auto rwm = [&](int which, double& value, auto&& log_target_delta) {
      const double prop = value + std::exp(log_step[static_cast<std::size_t>(which)]) * rng.normal();
      const double delta = log_target_delta(value, prop);
      if (!adapting) ++kept_prop[static_cast<std::size_t>(which)];
      const bool accept = std::isfinite(delta) && std::log(1.0 - rng.uniform()) < delta;
      if (accept) {
        value = prop;
        if (!adapting) ++kept_acc[static_cast<std::size_t>(which)];
      }
      if (adapting) {
        const double rate = std::min(0.1, 1.0 / std::sqrt(static_cast<double>(iter + 1)));
        log_step[static_cast<std::size_t>(which)] += rate * ((accept ? 1.0 : 0.0) - 0.44);
      }
    };

    for (int c = 0; c < n_mean; ++c) {
      rwm(c, mean_coefs[c], [&](double cur, double prop) {
        Eigen::VectorXd coefs = mean_coefs;
        coefs[c] = prop;
        return model.response_term(coefs, std::exp(log_sigma_z), y_obs) - ll_resp +
               log_normal_pdf(prop, 0.0, spec.prior_scalar_sd) -
               log_normal_pdf(cur, 0.0, spec.prior_scalar_sd);
      });
      ll_resp = model.response_term(mean_coefs, std::exp(log_sigma_z), y_obs);
    }

    rwm(n_mean, alpha, [&](double cur, double prop) {
      return model.point_process_term_cached(prop, y_obs.sum(), int_exp_y) - ll_pp +
             log_normal_pdf(prop, 0.0, spec.prior_scalar_sd) -
             log_normal_pdf(cur, 0.0, spec.prior_scalar_sd);
    });
    ll_pp = model.point_process_term_cached(alpha, y_obs.sum(), int_exp_y);

    rwm(n_mean + 1, log_sigma_z, [&](double cur, double prop) {
      return model.response_term(mean_coefs, std::exp(prop), y_obs) - ll_resp +
             log_half_cauchy_pdf(std::exp(prop), spec.prior_sigma_scale) + prop -
             log_half_cauchy_pdf(std::exp(cur), spec.prior_sigma_scale) - cur;
    });
    ll_resp = model.response_term(mean_coefs, std::exp(log_sigma_z), y_obs);

    const double gamma_sq = gamma.squaredNorm();
    rwm(n_mean + 2, log_sigma_gamma, [&](double cur, double prop) {
      return gamma_prior(prop, gamma_sq) - gamma_prior(cur, gamma_sq) +
             log_half_cauchy_pdf(std::exp(prop), spec.prior_sigma_scale) + prop -
             log_half_cauchy_pdf(std::exp(cur), spec.prior_sigma_scale) - cur;
    });

    if (!adapting) {
      const int row = iter - cfg.n_burn;
      out.draws.row(row).head(n_knots) = gamma;
      out.draws.row(row).segment(n_knots, n_mean) = mean_coefs;
      out.draws(row, n_knots + n_mean) = alpha;
      out.draws(row, n_knots + n_mean + 1) = log_sigma_z;
      out.draws(row, n_knots + n_mean + 2) = log_sigma_gamma;
    }
  }

  long total_prop = 0;
  long total_acc = 0;
  for (int c = 0; c < n_scalars; ++c) {
    total_prop += kept_prop[static_cast<std::size_t>(c)];
    total_acc += kept_acc[static_cast<std::size_t>(c)];
    if (kept_prop[static_cast<std::size_t>(c)] > 100 &&
        kept_acc[static_cast<std::size_t>(c)] < 0.01 * kept_prop[static_cast<std::size_t>(c)]) {
      throw std::runtime_error("mwg_sample_shared: stuck scalar chain (acceptance < 1%)");
    }
  }
  out.accept_rate = total_prop > 0 ? static_cast<double>(total_acc) / total_prop : 0.0;
  return out;
}

}  // namespace prefsamp
