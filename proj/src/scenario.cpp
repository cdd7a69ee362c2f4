#include "prefsamp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prefsamp/errors.hpp"
#include "prefsamp/point_process.hpp"
#include "prefsamp/rng.hpp"
#include "prefsamp/stats.hpp"

namespace prefsamp {

double selection_prob_scn1(const Point2& s) {
  const double d1 = s.s1 - 0.5;
  const double d2 = s.s2 - 0.5;
  const double base = 1.0 - d1 * d1 - d2 * d2;
  double p = base;
  for (int i = 1; i < 8; ++i) p *= base;
  return p;
}

ScenarioDraw simulate_scenario1(int n_candidates, double noise_sd, std::uint64_t seed) {
  if (n_candidates < 10) throw std::invalid_argument("simulate_scenario1: n_candidates < 10");
  if (noise_sd < 0.0) throw std::invalid_argument("simulate_scenario1: noise_sd < 0");

  Rng rng(seed);
  std::vector<Point2> kept;
  std::vector<double> kept_p;
  Eigen::VectorXd cand_p(n_candidates);
  for (int i = 0; i < n_candidates; ++i) {
    const Point2 s{rng.uniform(), rng.uniform()};
    const double p = selection_prob_scn1(s);
    cand_p[i] = p;
    if (rng.uniform() < p) {
      kept.push_back(s);
      kept_p.push_back(p);
    }
  }
  const int n = static_cast<int>(kept.size());
  if (n < 5) throw SimulationRetry("simulate_scenario1: fewer than 5 kept points");

  // Standardization constants come from the candidate sample; among kept
  // points the standardized probability then has a positive mean, which is
  // what couples the response to the selection mechanism.
  const double p_mean = mean(cand_p);
  const double p_sd = sample_sd(cand_p);
  if (!(p_sd > 0.0)) throw SimulationRetry("simulate_scenario1: degenerate candidate spread");

  ScenarioDraw out;
  out.p_standardize_mean = p_mean;
  out.p_standardize_sd = p_sd;
  out.samples.locations = kept;
  out.samples.scenario = ScenarioTag::kScenario1;
  out.samples.z.resize(n);
  Eigen::VectorXd p_true(n);
  for (int i = 0; i < n; ++i) {
    const double p_std = (kept_p[i] - p_mean) / p_sd;
    out.samples.z[i] =
        5.0 * kept[i].s1 + 2.0 * kept[i].s2 + 2.0 * p_std + rng.normal(0.0, noise_sd);
    p_true[i] = kept_p[i];
  }
  out.samples.p_true = std::move(p_true);

  // The estimand is the population regression surface; the selection term is
  // a sampling artifact and is not part of the truth.
  out.truth.grid = make_grid(unit_square(), kTruthGridSize, kTruthGridSize);
  out.truth.values.resize(out.truth.grid.size());
  for (int g = 0; g < out.truth.grid.size(); ++g) {
    const Point2& c = out.truth.grid.centers[g];
    out.truth.values[g] = 5.0 * c.s1 + 2.0 * c.s2;
  }
  return out;
}

double interp_bilinear(const RegularGrid& grid, const Eigen::VectorXd& values, const Point2& s) {
  if (values.size() != grid.size()) throw std::invalid_argument("interp_bilinear: size mismatch");
  if (grid.n1 == 1 && grid.n2 == 1) return values[0];

  const double d1 = grid.spacing1();
  const double d2 = grid.spacing2();
  // Continuous index into the center lattice, clamped so edge regions extend
  // the boundary cells.
  auto locate = [](double coord, double lo, double d, int n) {
    double g = (coord - lo) / d - 0.5;
    int i = static_cast<int>(std::floor(g));
    i = std::clamp(i, 0, std::max(n - 2, 0));
    const double f = std::clamp(g - i, 0.0, 1.0);
    return std::pair<int, double>(i, n == 1 ? 0.0 : f);
  };
  const auto [i1, f1] = locate(s.s1, grid.domain.min1, d1, grid.n1);
  const auto [i2, f2] = locate(s.s2, grid.domain.min2, d2, grid.n2);
  const int j1 = std::min(i1 + 1, grid.n1 - 1);
  const int j2 = std::min(i2 + 1, grid.n2 - 1);
  auto at = [&](int a, int b) { return values[b * grid.n1 + a]; };
  return at(i1, i2) * (1 - f1) * (1 - f2) + at(j1, i2) * f1 * (1 - f2) +
         at(i1, j2) * (1 - f1) * f2 + at(j1, j2) * f1 * f2;
}

ScenarioDraw simulate_scenario2(const GPRealization& gp, int target_n, double noise_sd,
                                std::uint64_t seed, double ps_strength) {
  if (target_n < 10) throw std::invalid_argument("simulate_scenario2: target_n < 10");
  if (noise_sd < 0.0) throw std::invalid_argument("simulate_scenario2: noise_sd < 0");
  if (!(ps_strength > 0.0)) throw std::invalid_argument("simulate_scenario2: ps_strength <= 0");
  if (gp.values.size() != gp.grid.size()) {
    throw std::invalid_argument("simulate_scenario2: GP values/grid mismatch");
  }

  // lambda(s) = gamma * exp(c p(s)) with gamma set so the expected count is
  // target_n; bilinear interpolation keeps p(s) <= max over the grid.
  const double int_exp_p =
      (gp.values.array() * ps_strength).exp().sum() * gp.grid.cell_area;
  const double gamma = static_cast<double>(target_n) / int_exp_p;
  const double bound = gamma * std::exp(ps_strength * gp.values.maxCoeff());

  Rng rng(seed);
  auto intensity = [&](const Point2& s) {
    return gamma * std::exp(ps_strength * interp_bilinear(gp.grid, gp.values, s));
  };
  const std::vector<Point2> locations =
      inhomogeneous_ppp(intensity, gp.grid.domain, bound, rng);
  const int n = static_cast<int>(locations.size());
  if (n == 0) throw SimulationRetry("simulate_scenario2: no points drawn");

  ScenarioDraw out;
  out.samples.locations = locations;
  out.samples.scenario = ScenarioTag::kScenario2;
  out.samples.z.resize(n);
  Eigen::VectorXd p_true(n);
  for (int i = 0; i < n; ++i) {
    const double p = interp_bilinear(gp.grid, gp.values, locations[i]);
    out.samples.z[i] = p + rng.normal(0.0, noise_sd);
    p_true[i] = gamma * std::exp(ps_strength * p);
  }
  out.samples.p_true = std::move(p_true);
  out.truth.grid = gp.grid;
  out.truth.values = gp.values;
  return out;
}

}  // namespace prefsamp
