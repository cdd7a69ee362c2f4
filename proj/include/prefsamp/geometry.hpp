#pragma once

#include <cmath>
#include <vector>

namespace prefsamp {

struct Point2 {
  double s1 = 0.0;
  double s2 = 0.0;
};

inline double sq_dist(const Point2& a, const Point2& b) {
  const double d1 = a.s1 - b.s1;
  const double d2 = a.s2 - b.s2;
  return d1 * d1 + d2 * d2;
}

inline double dist(const Point2& a, const Point2& b) { return std::sqrt(sq_dist(a, b)); }

struct RectDomain {
  double min1 = 0.0;
  double max1 = 1.0;
  double min2 = 0.0;
  double max2 = 1.0;

  double width1() const { return max1 - min1; }
  double width2() const { return max2 - min2; }
  double area() const { return width1() * width2(); }

  bool contains(const Point2& p) const {
    return p.s1 >= min1 && p.s1 <= max1 && p.s2 >= min2 && p.s2 <= max2;
  }

  // Same center, each side pushed out by frac * width of that axis.
  RectDomain expanded(double frac) const {
    return {min1 - frac * width1(), max1 + frac * width1(),
            min2 - frac * width2(), max2 + frac * width2()};
  }

  void validate() const;
};

inline RectDomain unit_square() { return {0.0, 1.0, 0.0, 1.0}; }

/// Lattice of n1 x n2 cell centers; centers[i2 * n1 + i1], first axis fastest.
struct RegularGrid {
  RectDomain domain;
  int n1 = 0;
  int n2 = 0;
  std::vector<Point2> centers;
  double cell_area = 0.0;

  int size() const { return n1 * n2; }
  double spacing1() const { return domain.width1() / n1; }
  double spacing2() const { return domain.width2() / n2; }
};

RegularGrid make_grid(const RectDomain& domain, int n1, int n2);

/// Inclusive k1 x k2 lattice (endpoints included), used for knot and basis layouts.
std::vector<Point2> lattice_points(const RectDomain& domain, int k1, int k2);

}  // namespace prefsamp
