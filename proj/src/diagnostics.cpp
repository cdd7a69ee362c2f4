#include "prefsamp/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "prefsamp/stats.hpp"

namespace prefsamp {

double effective_sample_size(const Eigen::VectorXd& trace) {
  const auto n = trace.size();
  if (n < 100) throw std::invalid_argument("effective_sample_size: need >= 100 draws");
  const double m = trace.mean();
  const Eigen::ArrayXd centered = trace.array() - m;
  const double var0 = centered.square().sum() / static_cast<double>(n);
  if (!(var0 > 0.0) || !std::isfinite(var0)) return 0.0;

  auto rho = [&](Eigen::Index lag) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i + lag < n; ++i) acc += centered[i] * centered[i + lag];
    return acc / (static_cast<double>(n) * var0);
  };

  // Geyer initial positive sequence: sum consecutive autocorrelation pairs
  // while they stay positive.
  double tau = -1.0;
  const Eigen::Index max_lag = n - 1;
  for (Eigen::Index k = 0;; ++k) {
    const Eigen::Index t0 = 2 * k;
    const Eigen::Index t1 = 2 * k + 1;
    if (t1 > max_lag) break;
    const double pair = rho(t0) + rho(t1);
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  if (!(tau > 0.0)) return static_cast<double>(n);
  return std::min(static_cast<double>(n), static_cast<double>(n) / tau);
}

const ParamSummary& PosteriorSummary::find(const std::string& name) const {
  for (const auto& p : params) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("PosteriorSummary: no parameter named " + name);
}

PosteriorSummary summarize(const PosteriorDraws& draws, double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("summarize: bad level");
  const int n = draws.n_draws();
  if (n == 0) throw std::invalid_argument("summarize: no draws");

  const double lo_p = (1.0 - level) / 2.0;
  const double hi_p = 1.0 - lo_p;
  PosteriorSummary out;
  out.level = level;
  out.params.reserve(draws.names.size());
  std::vector<double> buffer;
  for (int j = 0; j < draws.n_params(); ++j) {
    const Eigen::VectorXd col = draws.draws.col(j);
    buffer.assign(col.data(), col.data() + col.size());
    ParamSummary ps;
    ps.name = draws.names[static_cast<std::size_t>(j)];
    ps.mean = col.mean();
    ps.lower = quantile_inplace(buffer, lo_p);
    ps.upper = quantile_inplace(buffer, hi_p);
    ps.ess = n >= 100 ? effective_sample_size(col) : 0.0;
    out.params.push_back(std::move(ps));
  }
  return out;
}

}  // namespace prefsamp
