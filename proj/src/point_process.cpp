#include "prefsamp/point_process.hpp"

#include <stdexcept>
#include <string>

namespace prefsamp {

std::vector<Point2> inhomogeneous_ppp(const IntensityFn& intensity, const RectDomain& domain,
                                      double bound, Rng& rng) {
  domain.validate();
  if (!(bound > 0.0)) throw std::invalid_argument("inhomogeneous_ppp: bound must be > 0");

  const long n_cand = rng.poisson(bound * domain.area());
  std::vector<Point2> kept;
  kept.reserve(static_cast<std::size_t>(n_cand / 4 + 8));
  for (long i = 0; i < n_cand; ++i) {
    const Point2 s{rng.uniform(domain.min1, domain.max1), rng.uniform(domain.min2, domain.max2)};
    const double lambda = intensity(s);
    if (lambda > bound) {
      throw std::runtime_error("inhomogeneous_ppp: intensity " + std::to_string(lambda) +
                               " exceeds bound " + std::to_string(bound));
    }
    if (rng.uniform() < lambda / bound) kept.push_back(s);
  }
  return kept;
}

std::vector<Point2> inhomogeneous_ppp(const IntensityFn& intensity, const RectDomain& domain,
                                      double bound, std::uint64_t seed) {
  Rng rng(seed);
  return inhomogeneous_ppp(intensity, domain, bound, rng);
}

}  // namespace prefsamp
