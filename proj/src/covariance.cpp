#include "prefsamp/covariance.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

#include "prefsamp/rng.hpp"

namespace prefsamp {

void CovSpec::validate() const {
  if (!(amplitude > 0.0)) throw std::invalid_argument("CovSpec: amplitude must be > 0");
  if (!(length_scale > 0.0)) throw std::invalid_argument("CovSpec: length_scale must be > 0");
  if (jitter < 0.0) throw std::invalid_argument("CovSpec: jitter must be >= 0");
}

double sq_exp_cov(const Point2& a, const Point2& b, const CovSpec& spec) {
  spec.validate();
  const double ls2 = spec.length_scale * spec.length_scale;
  return spec.amplitude * spec.amplitude * std::exp(-sq_dist(a, b) / (2.0 * ls2));
}

Eigen::MatrixXd build_cov_matrix(const std::vector<Point2>& points, const CovSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) throw std::invalid_argument("build_cov_matrix: need >= 1 point");

  const double var = spec.amplitude * spec.amplitude;
  const double inv2ls2 = 1.0 / (2.0 * spec.length_scale * spec.length_scale);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cov(i, i) = var + spec.jitter;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double c = var * std::exp(-sq_dist(points[i], points[j]) * inv2ls2);
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  return cov;
}

Eigen::MatrixXd cholesky_lower_with_escalation(Eigen::MatrixXd cov, double amplitude) {
  const double var = amplitude * amplitude;
  double extra = 0.0;
  for (;;) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    const double next = (extra == 0.0) ? 1e-8 * var : extra * 10.0;
    if (next > 1e-4 * var) {
      throw std::runtime_error(
          "cholesky_lower_with_escalation: factorization failed after jitter escalation "
          "(numerically degenerate point set)");
    }
    cov.diagonal().array() += next - extra;
    extra = next;
  }
}

GpSimulator::GpSimulator(RegularGrid grid, CovSpec spec)
    : grid_(std::move(grid)), spec_(spec) {
  if (grid_.size() == 0) throw std::invalid_argument("GpSimulator: empty grid");
  chol_lower_ = cholesky_lower_with_escalation(build_cov_matrix(grid_.centers, spec_),
                                               spec_.amplitude);
}

GPRealization GpSimulator::draw(std::uint64_t seed) const {
  Rng rng(seed);
  Eigen::VectorXd xi(chol_lower_.rows());
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi[i] = rng.normal();
  GPRealization out;
  out.grid = grid_;
  out.values = chol_lower_ * xi;
  out.spec = spec_;
  out.seed = seed;
  return out;
}

GPRealization simulate_gp(const RegularGrid& grid, const CovSpec& spec, std::uint64_t seed) {
  return GpSimulator(grid, spec).draw(seed);
}

}  // namespace prefsamp
