#include "prefsamp/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace prefsamp {

double bisquare(const Point2& s, const Point2& center, double aperture) {
  if (!(aperture > 0.0)) throw std::invalid_argument("bisquare: aperture must be > 0");
  const double d = dist(s, center);
  if (d >= aperture) return 0.0;
  const double r = d / aperture;
  const double t = 1.0 - r * r;
  return t * t;
}

BasisSet build_basis_set(const RectDomain& domain, int resolutions) {
  if (resolutions < 1) throw std::invalid_argument("build_basis_set: resolutions must be >= 1");
  const RectDomain expanded = domain.expanded(0.10);

  BasisSet basis;
  basis.resolutions = resolutions;
  for (int r = 0; r < resolutions; ++r) {
    const int k = 4 << r;  // 4x4, 8x8, ...
    const double spacing1 = expanded.width1() / (k - 1);
    const double spacing2 = expanded.width2() / (k - 1);
    const double aperture = 1.5 * std::max(spacing1, spacing2);
    for (const Point2& c : lattice_points(expanded, k, k)) {
      basis.centers.push_back(c);
      basis.apertures.push_back(aperture);
    }
  }
  return basis;
}

Eigen::MatrixXd evaluate_basis_matrix(const std::vector<Point2>& points, const BasisSet& basis) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto k = static_cast<Eigen::Index>(basis.centers.size());
  Eigen::MatrixXd phi(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      phi(i, j) = bisquare(points[i], basis.centers[j], basis.apertures[j]);
    }
  }
  return phi;
}

}  // namespace prefsamp
