#include "prefsamp/hmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prefsamp/rng.hpp"

namespace prefsamp {

void SamplerConfig::validate() const {
  if (n_iter <= 0) throw std::invalid_argument("SamplerConfig: n_iter must be > 0");
  if (n_burn < 0 || n_burn >= n_iter) {
    throw std::invalid_argument("SamplerConfig: need 0 <= n_burn < n_iter");
  }
  if (leapfrog_steps < 1) throw std::invalid_argument("SamplerConfig: leapfrog_steps must be >= 1");
  if (!(target_accept > 0.0 && target_accept < 1.0)) {
    throw std::invalid_argument("SamplerConfig: target_accept must be in (0,1)");
  }
}

int PosteriorDraws::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("PosteriorDraws: no parameter named " + name);
}

namespace {

// Nesterov dual averaging of the log step size (Hoffman & Gelman 2014).
struct DualAveraging {
  double mu;
  double log_eps;
  double log_eps_bar = 0.0;
  double h_bar = 0.0;
  int t = 0;

  explicit DualAveraging(double eps0)
      : mu(std::log(10.0 * eps0)), log_eps(std::log(eps0)), log_eps_bar(std::log(eps0)) {}

  void update(double accept_prob, double target) {
    ++t;
    constexpr double kGamma = 0.05;
    constexpr double kT0 = 10.0;
    constexpr double kKappa = 0.75;
    const double frac = 1.0 / (t + kT0);
    h_bar = (1.0 - frac) * h_bar + frac * (target - accept_prob);
    log_eps = mu - std::sqrt(static_cast<double>(t)) / kGamma * h_bar;
    const double w = std::pow(static_cast<double>(t), -kKappa);
    log_eps_bar = w * log_eps + (1.0 - w) * log_eps_bar;
  }

  double eps() const { return std::exp(log_eps); }
  double eps_averaged() const { return std::exp(log_eps_bar); }
};

struct Welford {
  Eigen::VectorXd mean;
  Eigen::VectorXd m2;
  long count = 0;

  explicit Welford(Eigen::Index dim) : mean(Eigen::VectorXd::Zero(dim)), m2(Eigen::VectorXd::Zero(dim)) {}

  void add(const Eigen::VectorXd& x) {
    ++count;
    const Eigen::VectorXd delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2.array() += delta.array() * (x - mean).array();
  }

  Eigen::VectorXd variance() const { return m2 / std::max<long>(count - 1, 1); }
};

double kinetic(const Eigen::VectorXd& p, const Eigen::VectorXd& inv_mass) {
  return 0.5 * (p.array().square() * inv_mass.array()).sum();
}

bool leapfrog(const LogDensityFn& f, Eigen::VectorXd& theta, Eigen::VectorXd& p,
              LogDensityEval& eval, double eps, int steps, const Eigen::VectorXd& inv_mass) {
  p += 0.5 * eps * eval.gradient;
  for (int l = 0; l < steps; ++l) {
    theta += eps * (p.array() * inv_mass.array()).matrix();
    eval = f(theta);
    if (!std::isfinite(eval.value)) return false;
    if (l + 1 < steps) p += eps * eval.gradient;
  }
  p += 0.5 * eps * eval.gradient;
  return true;
}

double find_reasonable_epsilon(const LogDensityFn& f, const Eigen::VectorXd& theta,
                               const LogDensityEval& eval, const Eigen::VectorXd& inv_mass,
                               Rng& rng) {
  const Eigen::Index dim = theta.size();
  Eigen::VectorXd p0(dim);
  for (Eigen::Index i = 0; i < dim; ++i) p0[i] = rng.normal() / std::sqrt(inv_mass[i]);
  const double h0 = -eval.value + kinetic(p0, inv_mass);

  auto log_accept = [&](double eps) {
    Eigen::VectorXd th = theta;
    Eigen::VectorXd p = p0;
    LogDensityEval ev = eval;
    if (!leapfrog(f, th, p, ev, eps, 1, inv_mass)) return -1e30;
    const double h1 = -ev.value + kinetic(p, inv_mass);
    return std::isfinite(h1) ? h0 - h1 : -1e30;
  };

  double eps = 1.0;
  double la = log_accept(eps);
  int guard = 0;
  while (la < std::log(1e-8) && guard++ < 60) {  // back off until the step is stable
    eps *= 0.1;
    la = log_accept(eps);
  }
  const double dir = (la > std::log(0.5)) ? 1.0 : -1.0;
  guard = 0;
  while (dir * la > -dir * std::log(2.0) && guard++ < 100) {
    eps *= std::pow(2.0, dir);
    if (eps < 1e-10 || eps > 1e4) break;
    la = log_accept(eps);
  }
  return std::clamp(eps, 1e-10, 1e4);
}

}  // namespace

PosteriorDraws hmc_sample(const LogDensityFn& logpost, Eigen::VectorXd init,
                          const SamplerConfig& cfg, std::vector<std::string> names) {
  cfg.validate();
  const Eigen::Index dim = init.size();
  if (dim == 0) throw std::invalid_argument("hmc_sample: empty initial point");
  if (names.empty()) {
    for (Eigen::Index i = 0; i < dim; ++i) names.push_back("p" + std::to_string(i));
  }
  if (static_cast<Eigen::Index>(names.size()) != dim) {
    throw std::invalid_argument("hmc_sample: names/dimension mismatch");
  }

  LogDensityEval eval = logpost(init);
  if (!std::isfinite(eval.value)) {
    throw std::invalid_argument("hmc_sample: log posterior not finite at init");
  }

  Rng rng(cfg.seed);
  Eigen::VectorXd theta = std::move(init);
  Eigen::VectorXd inv_mass = Eigen::VectorXd::Ones(dim);

  DualAveraging da(cfg.n_burn > 0 ? find_reasonable_epsilon(logpost, theta, eval, inv_mass, rng)
                                  : 0.1);
  double eps_frozen = da.eps();

  // Identity metric while the chain finds scale; the diagonal metric comes
  // from the second-quarter draws and drives the second half of burn-in.
  const int metric_start = cfg.n_burn / 4;
  const int metric_switch = cfg.n_burn / 2;
  Welford acc(dim);

  PosteriorDraws out;
  out.names = std::move(names);
  out.draws.resize(cfg.n_keep(), dim);
  out.seed = cfg.seed;

  long accepted_kept = 0;
  long divergent_kept = 0;

  for (int iter = 0; iter < cfg.n_iter; ++iter) {
    const bool adapting = iter < cfg.n_burn;
    const double eps = adapting ? da.eps() : eps_frozen;

    Eigen::VectorXd p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) p[i] = rng.normal() / std::sqrt(inv_mass[i]);
    const double h0 = -eval.value + kinetic(p, inv_mass);

    Eigen::VectorXd theta_prop = theta;
    LogDensityEval eval_prop = eval;
    bool ok = leapfrog(logpost, theta_prop, p, eval_prop, eps, cfg.leapfrog_steps, inv_mass);
    double accept_prob = 0.0;
    bool divergent = !ok;
    if (ok) {
      const double dh = h0 - (-eval_prop.value + kinetic(p, inv_mass));
      if (!std::isfinite(dh) || dh < -1000.0) {
        divergent = true;
      } else {
        accept_prob = std::min(1.0, std::exp(std::min(dh, 0.0)));
        if (rng.uniform() < accept_prob) {
          theta = std::move(theta_prop);
          eval = std::move(eval_prop);
          if (!adapting) ++accepted_kept;
        }
      }
    }

    if (adapting) {
      da.update(accept_prob, cfg.target_accept);
      if (iter >= metric_start && iter < metric_switch) acc.add(theta);
      if (iter + 1 == metric_switch && acc.count >= 10) {
        const Eigen::VectorXd var = acc.variance();
        const double shrink = static_cast<double>(acc.count) / (acc.count + 5.0);
        inv_mass = (shrink * var.array() + (1.0 - shrink) * 1e-3).max(1e-10).matrix();
        da = DualAveraging(find_reasonable_epsilon(logpost, theta, eval, inv_mass, rng));
      }
      if (iter + 1 == cfg.n_burn) eps_frozen = da.eps_averaged();
    } else {
      if (divergent) ++divergent_kept;
      out.draws.row(iter - cfg.n_burn) = theta;
    }
  }

  out.accept_rate = static_cast<double>(accepted_kept) / cfg.n_keep();
  if (divergent_kept > 0.2 * cfg.n_keep()) {
    throw std::runtime_error("hmc_sample: divergence rate above 20% after burn-in");
  }
  return out;
}

}  // namespace prefsamp
