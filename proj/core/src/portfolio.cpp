#include "wavecorr/portfolio.hpp"

#include <cmath>

#include "wavecorr/modwt.hpp"
#include "wavecorr/wavestats.hpp"

namespace wavecorr {

namespace {

constexpr double kConditionLimit = 1e-10;

}  // namespace

ScaleCovariance build_covariance(const Eigen::MatrixXd& correlation,
                                 const Eigen::VectorXd& vols, int scale) {
  const Eigen::Index n = correlation.rows();
  if (correlation.cols() != n) {
    throw ConfigError("correlation matrix must be square");
  }
  if (vols.size() != n) {
    throw ConfigError("vols length " + std::to_string(vols.size()) +
                      " does not match correlation order " + std::to_string(n));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(vols[i] > 0.0)) {
      throw ConfigError("non-positive vol at index " + std::to_string(i));
    }
  }
  ScaleCovariance cov;
  cov.scale = scale;
  cov.covariance = vols.asDiagonal() * correlation * vols.asDiagonal();
  cov.covariance = ((cov.covariance + cov.covariance.transpose()) * 0.5).eval();
  return cov;
}

Frontier min_variance_frontier(const ScaleCovariance& cov,
                               const Eigen::VectorXd& mu,
                               std::span<const double> targets) {
  const Eigen::MatrixXd& sigma = cov.covariance;
  const Eigen::Index n = sigma.rows();
  if (mu.size() != n) {
    throw ConfigError("expected-return vector length " +
                      std::to_string(mu.size()) +
                      " does not match covariance order " + std::to_string(n));
  }

  // Conditioning guard before any solve; ill-conditioned matrices are
  // refused rather than regularised.
  const EigenRecord eig = spectrum(sigma);
  const double eig_min = eig.eigenvalues[0];
  const double eig_max = eig.eigenvalues[n - 1];
  if (!(eig_min > kConditionLimit * eig_max)) {
    throw NumericalError(
        "covariance at scale " + scale_label(cov.scale) +
        " is singular or ill-conditioned (min eig " + std::to_string(eig_min) +
        ", max eig " + std::to_string(eig_max) + ")");
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
  if (ldlt.info() != Eigen::Success) {
    throw NumericalError("covariance factorisation failed at scale " +
                         scale_label(cov.scale));
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd sigma_inv_ones = ldlt.solve(ones);
  const Eigen::VectorXd sigma_inv_mu = ldlt.solve(mu);

  const double a = ones.dot(sigma_inv_ones);
  const double b = ones.dot(sigma_inv_mu);
  const double c = mu.dot(sigma_inv_mu);
  const double d = a * c - b * b;
  if (!(d > 1e-12 * std::abs(a * c))) {
    throw NumericalError(
        "degenerate expected returns (proportional to ones): D = " +
        std::to_string(d));
  }

  Frontier frontier;
  frontier.scale = cov.scale;
  frontier.gmv.target_return = b / a;
  frontier.gmv.weights = sigma_inv_ones / a;
  frontier.gmv.stdev = std::sqrt(
      frontier.gmv.weights.dot(sigma * frontier.gmv.weights));

  frontier.points.reserve(targets.size());
  for (double m : targets) {
    FrontierPoint point;
    point.target_return = m;
    point.weights =
        ((c - b * m) * sigma_inv_ones + (a * m - b) * sigma_inv_mu) / d;
    point.stdev = std::sqrt(point.weights.dot(sigma * point.weights));
    frontier.points.push_back(std::move(point));
  }
  return frontier;
}

std::vector<double> target_grid(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) {
    throw ConfigError("target grid needs count >= 2 and hi > lo");
  }
  std::vector<double> targets(static_cast<std::size_t>(count));
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    targets[static_cast<std::size_t>(i)] = lo + step * i;
  }
  return targets;
}

std::map<int, Frontier> frontier_by_scale(const ReturnsPanel& panel,
                                          Eigen::Index window_start,
                                          Eigen::Index window_length,
                                          const WaveletFilter& filter,
                                          int levels, const Eigen::VectorXd& mu,
                                          std::span<const double> targets) {
  panel.validate();
  if (window_start < 0 || window_length < 2 ||
      window_start + window_length > panel.n_obs()) {
    throw ConfigError("window [" + std::to_string(window_start) + ", " +
                      std::to_string(window_start + window_length) +
                      ") outside panel of length " +
                      std::to_string(panel.n_obs()));
  }
  const int admissible = max_level(window_length, filter, kDefaultMinUnbiased);
  if (levels < 1 || levels > admissible) {
    throw ConfigError("levels " + std::to_string(levels) +
                      " outside 1..max_level " + std::to_string(admissible) +
                      " for window length " + std::to_string(window_length));
  }

  const Eigen::Index n = panel.n_assets();
  // Full-sample expected returns and risks, fixed across scales.
  Eigen::VectorXd expected = mu;
  if (expected.size() == 0) {
    expected = panel.returns.rowwise().mean();
  } else if (expected.size() != n) {
    throw ConfigError("mu length " + std::to_string(expected.size()) +
                      " does not match panel assets " + std::to_string(n));
  }
  Eigen::VectorXd vols(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = panel.returns.row(i).mean();
    const double var = (panel.returns.row(i).array() - mean).square().sum() /
                       static_cast<double>(panel.n_obs());
    if (!(var > 0.0)) {
      throw DataError("zero full-sample variance for asset '" +
                      panel.asset_ids[static_cast<std::size_t>(i)] + "'");
    }
    vols[i] = std::sqrt(var);
  }

  std::vector<double> default_targets;
  if (targets.empty()) {
    const double lo = expected.minCoeff();
    const double hi = expected.maxCoeff();
    if (!(hi > lo)) {
      throw NumericalError("expected returns are constant; no target range");
    }
    default_targets = target_grid(lo, hi, 21);
    targets = default_targets;
  }

  const auto ids = std::span<const std::string>(panel.asset_ids);
  const Eigen::MatrixXd window =
      panel.returns.middleCols(window_start, window_length);

  std::vector<WaveletDecomposition> decs;
  decs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    decs.push_back(decompose(window.row(i).transpose(), filter, levels));
  }

  std::map<int, Frontier> frontiers;
  auto add = [&](int scale, const Eigen::MatrixXd& corr) {
    ScaleCovariance cov = build_covariance(corr, vols, scale);
    cov.window_start = window_start;
    cov.window_length = window_length;
    frontiers[scale] = min_variance_frontier(cov, expected, targets);
  };
  add(kRawScale, raw_correlation(window, ids).correlation);
  for (int j = 1; j <= levels; ++j) {
    add(j, wavelet_correlation_matrix(decs, j, ids).correlation);
  }
  return frontiers;
}

}  // namespace wavecorr
