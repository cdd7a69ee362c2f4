#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "prefsamp/log_density.hpp"

namespace prefsamp {

struct SamplerConfig {
  int n_iter = 5500;
  int n_burn = 1000;
  int leapfrog_steps = 25;
  double target_accept = 0.8;
  std::uint64_t seed = 1;

  int n_keep() const { return n_iter - n_burn; }
  void validate() const;
};

struct PosteriorDraws {
  std::vector<std::string> names;
  Eigen::MatrixXd draws;  // kept iterations x parameters
  double accept_rate = 0.0;
  std::uint64_t seed = 0;

  int n_draws() const { return static_cast<int>(draws.rows()); }
  int n_params() const { return static_cast<int>(draws.cols()); }
  /// Column index of a named parameter; throws if absent.
  int column(const std::string& name) const;
};

// Fixed-path leapfrog HMC. Step size is tuned by dual averaging during
// burn-in (identity metric for the first half, then a diagonal metric
// estimated from the preceding draws) and frozen afterwards. Throws when the
// post-burn-in divergence rate exceeds 20%.
PosteriorDraws hmc_sample(const LogDensityFn& logpost, Eigen::VectorXd init,
                          const SamplerConfig& cfg, std::vector<std::string> names = {});

}  // namespace prefsamp
