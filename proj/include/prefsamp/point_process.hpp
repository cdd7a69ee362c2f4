#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "prefsamp/geometry.hpp"
#include "prefsamp/rng.hpp"

namespace prefsamp {

using IntensityFn = std::function<double(const Point2&)>;

// Lewis-Shedler thinning: Poisson(bound * area) uniform candidates, each kept
// with probability intensity/bound. Throws if the bound is violated at a
// candidate.
std::vector<Point2> inhomogeneous_ppp(const IntensityFn& intensity, const RectDomain& domain,
                                      double bound, Rng& rng);

std::vector<Point2> inhomogeneous_ppp(const IntensityFn& intensity, const RectDomain& domain,
                                      double bound, std::uint64_t seed);

}  // namespace prefsamp
