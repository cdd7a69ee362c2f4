#include "prefsamp/geometry.hpp"

#include <stdexcept>

namespace prefsamp {

void RectDomain::validate() const {
  if (!(max1 > min1) || !(max2 > min2)) {
    throw std::invalid_argument("RectDomain: max must exceed min on both axes");
  }
  if (!std::isfinite(min1) || !std::isfinite(max1) || !std::isfinite(min2) ||
      !std::isfinite(max2)) {
    throw std::invalid_argument("RectDomain: bounds must be finite");
  }
}

RegularGrid make_grid(const RectDomain& domain, int n1, int n2) {
  domain.validate();
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("make_grid: cell counts must be >= 1");

  RegularGrid grid;
  grid.domain = domain;
  grid.n1 = n1;
  grid.n2 = n2;
  const double d1 = domain.width1() / n1;
  const double d2 = domain.width2() / n2;
  grid.cell_area = d1 * d2;
  grid.centers.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i2 = 0; i2 < n2; ++i2) {
    for (int i1 = 0; i1 < n1; ++i1) {
      grid.centers.push_back({domain.min1 + (i1 + 0.5) * d1, domain.min2 + (i2 + 0.5) * d2});
    }
  }
  return grid;
}

std::vector<Point2> lattice_points(const RectDomain& domain, int k1, int k2) {
  domain.validate();
  if (k1 < 2 || k2 < 2) throw std::invalid_argument("lattice_points: need >= 2 points per axis");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(k1) * k2);
  for (int i2 = 0; i2 < k2; ++i2) {
    for (int i1 = 0; i1 < k1; ++i1) {
      pts.push_back({domain.min1 + domain.width1() * i1 / (k1 - 1),
                     domain.min2 + domain.width2() * i2 / (k2 - 1)});
    }
  }
  return pts;
}

}  // namespace prefsamp
