#pragma once

#include <cstdint>

#include "prefsamp/covariance.hpp"
#include "prefsamp/sample_set.hpp"

namespace prefsamp {

inline constexpr int kTruthGridSize = 41;

/// Keep probability for the spatially implicit scenario on the unit square.
double selection_prob_scn1(const Point2& s);

// Thins uniform candidates by selection_prob_scn1 and builds the response
// 5*s1 + 2*s2 + 2*p~ + noise, where p~ standardizes the selection probability
// by the candidate-sample mean and sd. Throws SimulationRetry when fewer than
// 5 points survive.
ScenarioDraw simulate_scenario1(int n_candidates, double noise_sd, std::uint64_t seed);

/// Bilinear interpolation over grid cell centers, clamped to edge values outside.
double interp_bilinear(const RegularGrid& grid, const Eigen::VectorXd& values, const Point2& s);

// Draws locations from a Poisson process with intensity proportional to
// exp(ps_strength * p(s)), scaled so the expected count is target_n;
// responses are p(s) + noise. ps_strength is the preferentiality coefficient
// of the log-linear intensity (1 = the plain exponential link). Throws
// SimulationRetry when no points are drawn.
ScenarioDraw simulate_scenario2(const GPRealization& gp, int target_n, double noise_sd,
                                std::uint64_t seed, double ps_strength = 1.0);

}  // namespace prefsamp
