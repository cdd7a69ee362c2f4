#pragma once

#include <Eigen/Core>
#include <vector>

#include "prefsamp/geometry.hpp"

namespace prefsamp {

/// Compactly supported radial basis functions on regular lattices, coarse to fine.
struct BasisSet {
  std::vector<Point2> centers;
  std::vector<double> apertures;  // support radius per center
  int resolutions = 0;

  int size() const { return static_cast<int>(centers.size()); }
};

/// (1 - (d/aperture)^2)^2 inside the aperture, 0 outside.
double bisquare(const Point2& s, const Point2& center, double aperture);

// Lattices of 4x4, 8x8, ... centers over the domain expanded by 10% per side;
// aperture = 1.5 x the center spacing of that resolution.
BasisSet build_basis_set(const RectDomain& domain, int resolutions);

/// Entry (i, k) = bisquare(points[i], center_k, aperture_k).
Eigen::MatrixXd evaluate_basis_matrix(const std::vector<Point2>& points, const BasisSet& basis);

}  // namespace prefsamp
