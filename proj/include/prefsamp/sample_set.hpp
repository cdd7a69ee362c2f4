#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "prefsamp/geometry.hpp"

namespace prefsamp {

enum class ScenarioTag { kScenario1, kScenario2, kExternal };

const char* to_string(ScenarioTag tag);

/// One spatial dataset: locations, responses, and (when the generating
/// mechanism is known) the selection probability or intensity at each point.
struct SampleSet {
  std::vector<Point2> locations;
  Eigen::VectorXd z;
  std::optional<Eigen::VectorXd> p_true;
  ScenarioTag scenario = ScenarioTag::kExternal;

  int size() const { return static_cast<int>(locations.size()); }
  void validate() const;
};

struct TruthSurface {
  RegularGrid grid;
  Eigen::VectorXd values;
};

/// A simulated replication: the sample plus the surface it is scored against.
struct ScenarioDraw {
  SampleSet samples;
  TruthSurface truth;
  // Standardization constants applied to the selection probability in the
  // Scenario 1 response model (candidate-sample moments).
  double p_standardize_mean = 0.0;
  double p_standardize_sd = 1.0;
};

}  // namespace prefsamp
