#include "prefsamp/sample_set.hpp"

#include <cmath>
#include <stdexcept>

namespace prefsamp {

const char* to_string(ScenarioTag tag) {
  switch (tag) {
    case ScenarioTag::kScenario1: return "scenario1";
    case ScenarioTag::kScenario2: return "scenario2";
    case ScenarioTag::kExternal: return "external";
  }
  return "unknown";
}

void SampleSet::validate() const {
  const auto n = static_cast<Eigen::Index>(locations.size());
  if (z.size() != n) throw std::invalid_argument("SampleSet: z length mismatch");
  for (const auto& p : locations) {
    if (!std::isfinite(p.s1) || !std::isfinite(p.s2)) {
      throw std::invalid_argument("SampleSet: non-finite coordinate");
    }
  }
  if (p_true) {
    if (p_true->size() != n) throw std::invalid_argument("SampleSet: p_true length mismatch");
    if ((p_true->array() <= 0.0).any()) {
      throw std::invalid_argument("SampleSet: p_true must be > 0");
    }
    if (scenario == ScenarioTag::kScenario1 && (p_true->array() > 1.0).any()) {
      throw std::invalid_argument("SampleSet: scenario 1 selection probabilities must be <= 1");
    }
  } else if (scenario == ScenarioTag::kScenario1) {
    throw std::invalid_argument("SampleSet: scenario 1 requires p_true");
  }
}

}  // namespace prefsamp
