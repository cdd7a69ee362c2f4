#include "prefsamp/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace prefsamp {

const char* to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::kUnit: return "unit";
    case WeightMode::kKnown: return "known";
    case WeightMode::kKde: return "kde";
  }
  return "unknown";
}

WeightVector make_weight_vector(Eigen::VectorXd raw, WeightMode mode) {
  const auto n = raw.size();
  if (n == 0) throw std::invalid_argument("make_weight_vector: empty weights");
  if (!(raw.array() > 0.0).all() || !raw.allFinite()) {
    throw std::invalid_argument("make_weight_vector: raw weights must be positive and finite");
  }
  WeightVector wv;
  wv.normalized = raw * (static_cast<double>(n) / raw.sum());
  wv.raw = std::move(raw);
  wv.mode = mode;
  return wv;
}

WeightVector weights_from_mode(const SampleSet& samples, WeightMode mode,
                               const std::optional<KDEConfig>& cfg) {
  const int n = samples.size();
  if (n == 0) throw std::invalid_argument("weights_from_mode: empty sample");

  switch (mode) {
    case WeightMode::kUnit:
      return make_weight_vector(Eigen::VectorXd::Ones(n), mode);
    case WeightMode::kKnown: {
      if (!samples.p_true) {
        throw std::invalid_argument("weights_from_mode: known mode requires p_true");
      }
      return make_weight_vector(samples.p_true->cwiseInverse(), mode);
    }
    case WeightMode::kKde: {
      const KDEConfig kde_cfg = cfg ? *cfg : default_kde_config(samples.locations);
      const Eigen::VectorXd density =
          kde2d_density(samples.locations, kde_cfg, samples.locations);
      return make_weight_vector(density.cwiseInverse(), mode);
    }
  }
  throw std::logic_error("weights_from_mode: unhandled mode");
}

void StratifiedData::validate() const {
  if (cells.empty()) throw std::invalid_argument("StratifiedData: no cells");
  double total = 0.0;
  for (const auto& c : cells) {
    if (!(c.population > 0.0)) throw std::invalid_argument("StratifiedData: N_c must be > 0");
    total += c.population;
  }
  if (std::abs(total - population_total) > 1e-9 * std::max(1.0, population_total)) {
    throw std::invalid_argument("StratifiedData: cell populations must sum to total");
  }
}

double poststratified_mean(const StratifiedData& data) {
  data.validate();
  double acc = 0.0;
  for (const auto& c : data.cells) acc += (c.population / data.population_total) * c.sample_mean;
  return acc;
}

}  // namespace prefsamp
