#include "prefsamp/predict.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

#include "prefsamp/stats.hpp"

namespace prefsamp {

namespace {

// Assemble pointwise mean and quantiles by grid blocks; block_fn(start, cols)
// returns the (draws x cols) surface values for grid columns [start, start+cols).
PredictionSurface reduce_blocks(
    const RegularGrid& grid, double level,
    const std::function<Eigen::MatrixXd(int, int)>& block_fn) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("predict: bad level");
  const int total = grid.size();
  constexpr int kBlock = 256;

  PredictionSurface out;
  out.grid = grid;
  out.mean.resize(total);
  out.lower.resize(total);
  out.upper.resize(total);
  const double lo_p = (1.0 - level) / 2.0;
  const double hi_p = 1.0 - lo_p;

  std::vector<double> buffer;
  for (int start = 0; start < total; start += kBlock) {
    const int cols = std::min(kBlock, total - start);
    const Eigen::MatrixXd block = block_fn(start, cols);
    for (int c = 0; c < cols; ++c) {
      const auto col = block.col(c);
      out.mean[start + c] = col.mean();
      buffer.assign(col.data(), col.data() + col.size());
      out.lower[start + c] = quantile_inplace(buffer, lo_p);
      out.upper[start + c] = quantile_inplace(buffer, hi_p);
    }
  }
  return out;
}

Eigen::MatrixXd grid_design(const RegularGrid& grid, int start, int cols) {
  Eigen::MatrixXd x(cols, 2);
  for (int c = 0; c < cols; ++c) {
    x(c, 0) = grid.centers[static_cast<std::size_t>(start + c)].s1;
    x(c, 1) = grid.centers[static_cast<std::size_t>(start + c)].s2;
  }
  return x;
}

}  // namespace

PredictionSurface summarize_surface_draws(const Eigen::MatrixXd& surfaces,
                                          const RegularGrid& grid, double level) {
  if (surfaces.cols() != grid.size()) {
    throw std::invalid_argument("summarize_surface_draws: grid/draws mismatch");
  }
  return reduce_blocks(grid, level, [&](int start, int cols) -> Eigen::MatrixXd {
    return surfaces.middleCols(start, cols);
  });
}

PredictionSurface predict_surface_linear(const PosteriorDraws& draws, const RegularGrid& grid,
                                         double level) {
  Eigen::MatrixXd beta(draws.n_draws(), 2);
  beta.col(0) = draws.draws.col(draws.column("beta1"));
  beta.col(1) = draws.draws.col(draws.column("beta2"));
  return reduce_blocks(grid, level, [&](int start, int cols) -> Eigen::MatrixXd {
    return beta * grid_design(grid, start, cols).transpose();
  });
}

PredictionSurface predict_surface_basis(const PosteriorDraws& draws, const BasisSet& basis,
                                        const RegularGrid& grid, double level) {
  const int k = basis.size();
  const Eigen::MatrixXd eta = draws.draws.leftCols(k);  // eta block leads the layout
  if (draws.names.empty() || draws.names.front() != "eta_0") {
    throw std::invalid_argument("predict_surface_basis: draws do not start with eta block");
  }
  const Eigen::MatrixXd phi_grid = evaluate_basis_matrix(grid.centers, basis);
  return reduce_blocks(grid, level, [&](int start, int cols) -> Eigen::MatrixXd {
    return eta * phi_grid.middleRows(start, cols).transpose();
  });
}

PredictionSurface predict_surface_shared(const PosteriorDraws& draws,
                                         const SharedProcessSpec& spec, const RegularGrid& grid,
                                         double level) {
  const int j = spec.n_knots();
  if (draws.names.empty() || draws.names.front() != "gamma_0") {
    throw std::invalid_argument("predict_surface_shared: draws do not start with gamma block");
  }
  const Eigen::MatrixXd gamma = draws.draws.leftCols(j);
  const Eigen::VectorXd mu = draws.draws.col(draws.column("mu"));
  const Eigen::VectorXd beta_ps = draws.draws.col(draws.column("beta_ps"));
  Eigen::MatrixXd beta_cov(draws.n_draws(), 2);
  if (spec.linear_covariates) {
    beta_cov.col(0) = draws.draws.col(draws.column("beta1"));
    beta_cov.col(1) = draws.draws.col(draws.column("beta2"));
  }

  // With covariates the estimand is the de-biased population surface
  // mu + s'beta_cov; the shared process then only absorbs the selection
  // effect, mirroring how the weighted linear models predict s'beta. Without
  // covariates the latent field is the surface.
  const double inv2s2 = 1.0 / (2.0 * spec.kernel_sd * spec.kernel_sd);
  return reduce_blocks(grid, level, [&](int start, int cols) -> Eigen::MatrixXd {
    Eigen::MatrixXd block;
    if (spec.linear_covariates) {
      block = beta_cov * grid_design(grid, start, cols).transpose();
    } else {
      Eigen::MatrixXd kernel(cols, j);
      for (int b = 0; b < j; ++b) {
        for (int c = 0; c < cols; ++c) {
          kernel(c, b) = std::exp(
              -sq_dist(grid.centers[static_cast<std::size_t>(start + c)], spec.knots[b]) * inv2s2);
        }
      }
      block = gamma * kernel.transpose();  // draws x cols, Y values
      block.array().colwise() *= beta_ps.array();
    }
    block.array().colwise() += mu.array();
    return block;
  });
}

}  // namespace prefsamp
