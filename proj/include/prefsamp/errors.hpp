#pragma once

#include <stdexcept>
#include <string>

namespace prefsamp {

// A pathological draw (too few kept points, empty point process); the caller
// retries with a bumped seed.
class SimulationRetry : public std::runtime_error {
 public:
  explicit SimulationRetry(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prefsamp
