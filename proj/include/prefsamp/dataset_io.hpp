#pragma once

#include <string>

#include "prefsamp/predict.hpp"
#include "prefsamp/sample_set.hpp"

namespace prefsamp {

/// Format with 6 significant digits (CSV precision).
std::string format_sig6(double x);

/// Per-axis map between raw data coordinates and the unit square.
struct AffineRescale {
  double offset1 = 0.0;
  double scale1 = 1.0;  // unit = (raw - offset) / scale
  double offset2 = 0.0;
  double scale2 = 1.0;

  Point2 to_unit(const Point2& raw) const {
    return {(raw.s1 - offset1) / scale1, (raw.s2 - offset2) / scale2};
  }
  Point2 from_unit(const Point2& unit) const {
    return {offset1 + scale1 * unit.s1, offset2 + scale2 * unit.s2};
  }
  bool is_identity() const {
    return offset1 == 0.0 && scale1 == 1.0 && offset2 == 0.0 && scale2 == 1.0;
  }
};

struct ExternalDataset {
  SampleSet samples;  // locations rescaled to [0,1]^2
  AffineRescale transform;
};

// Reads header `x,y,z` plus decimal-point rows; coordinates are rescaled so
// the per-axis min/max map to 0/1. Malformed rows are reported with their
// line number; fewer than 10 rows is an error.
ExternalDataset ingest_csv(const std::string& path);

/// Writes dir/surface_<tag>.csv as x,y,mean,lower,upper rows, one per grid center.
void emit_surface(const PredictionSurface& surface, const std::string& dir,
                  const std::string& tag, const AffineRescale& back = {});

void write_samples_csv(const SampleSet& samples, const std::string& path);

void write_truth_csv(const TruthSurface& truth, const std::string& path);

}  // namespace prefsamp
