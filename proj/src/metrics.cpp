#include "prefsamp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace prefsamp {

namespace {

void check_aligned(const RegularGrid& a, const RegularGrid& b) {
  const bool same = a.n1 == b.n1 && a.n2 == b.n2 &&
                    std::abs(a.domain.min1 - b.domain.min1) < 1e-12 &&
                    std::abs(a.domain.max1 - b.domain.max1) < 1e-12 &&
                    std::abs(a.domain.min2 - b.domain.min2) < 1e-12 &&
                    std::abs(a.domain.max2 - b.domain.max2) < 1e-12;
  if (!same) throw std::invalid_argument("surface grids are not aligned");
}

}  // namespace

double surface_mse(const PredictionSurface& pred, const TruthSurface& truth) {
  check_aligned(pred.grid, truth.grid);
  if (pred.mean.size() != truth.values.size()) {
    throw std::invalid_argument("surface_mse: value length mismatch");
  }
  return (pred.mean - truth.values).squaredNorm() / static_cast<double>(truth.values.size());
}

double mean_abs_bias(const std::vector<Eigen::VectorXd>& pred_means,
                     const std::vector<Eigen::VectorXd>& truths) {
  if (pred_means.empty() || pred_means.size() != truths.size()) {
    throw std::invalid_argument("mean_abs_bias: replication lists must be nonempty and equal");
  }
  Eigen::VectorXd bias = Eigen::VectorXd::Zero(pred_means.front().size());
  for (std::size_t r = 0; r < pred_means.size(); ++r) {
    if (pred_means[r].size() != bias.size() || truths[r].size() != bias.size()) {
      throw std::invalid_argument("mean_abs_bias: grid size mismatch across replications");
    }
    bias += pred_means[r] - truths[r];
  }
  bias /= static_cast<double>(pred_means.size());
  return bias.array().abs().mean();
}

CoverageWidth coverage_and_width(const std::vector<ParamTrack>& tracks, double truth) {
  if (tracks.empty()) throw std::invalid_argument("coverage_and_width: no replications");
  long hits = 0;
  double width = 0.0;
  for (const auto& t : tracks) {
    if (t.lower <= truth && truth <= t.upper) ++hits;
    width += t.upper - t.lower;
  }
  return {static_cast<double>(hits) / static_cast<double>(tracks.size()),
          width / static_cast<double>(tracks.size())};
}

double runtime_ratio(const std::vector<double>& model_seconds,
                     const std::vector<double>& baseline_seconds) {
  if (model_seconds.empty() || baseline_seconds.empty()) {
    throw std::invalid_argument("runtime_ratio: empty runtime lists");
  }
  double ms = 0.0;
  double bs = 0.0;
  for (double s : model_seconds) ms += s;
  for (double s : baseline_seconds) bs += s;
  ms /= static_cast<double>(model_seconds.size());
  bs /= static_cast<double>(baseline_seconds.size());
  if (!(bs > 0.0)) throw std::invalid_argument("runtime_ratio: baseline runtime must be > 0");
  return ms / bs;
}

}  // namespace prefsamp
