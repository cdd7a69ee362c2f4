#pragma once

#include "prefsamp/hmc.hpp"
#include "prefsamp/sample_set.hpp"
#include "prefsamp/shared_model.hpp"

namespace prefsamp {

// Metropolis-within-Gibbs for the shared-process model: the knot coefficients
// move by elliptical slice sampling under their N(0, sigma_gamma^2 I) prior,
// the five scalars by random-walk Metropolis with step sizes adapted to 0.44
// acceptance during burn-in. Throws when a scalar chain is stuck
// (acceptance < 1% after burn-in).
PosteriorDraws mwg_sample_shared(const SharedProcessSpec& spec, const SampleSet& samples,
                                 const SamplerConfig& cfg);

}  // namespace prefsamp
