#pragma once

#include <map>
#include <span>
#include <vector>

#include "wavecorr/modwt.hpp"
#include "wavecorr/panel.hpp"
#include "wavecorr/spectrum.hpp"

namespace wavecorr {

/// Covariance matrix assembled from one scale's correlation structure and
/// fixed per-asset risks.
struct ScaleCovariance {
  int scale = kRawScale;
  Eigen::MatrixXd covariance;
  Eigen::Index window_start = 0;
  Eigen::Index window_length = 0;
};

/// Sigma_ik = vol_i * vol_k * rho_ik. Vols must be strictly positive.
ScaleCovariance build_covariance(const Eigen::MatrixXd& correlation,
                                 const Eigen::VectorXd& vols,
                                 int scale = kRawScale);

/// One point of an efficient frontier: minimum-risk weights for a target
/// return. Weights sum to 1; negative entries are short positions.
struct FrontierPoint {
  double target_return = 0.0;
  double stdev = 0.0;
  Eigen::VectorXd weights;
};

struct Frontier {
  int scale = kRawScale;
  std::vector<FrontierPoint> points;  // one per requested target
  FrontierPoint gmv;                  // global minimum-variance portfolio
};

/// Unconstrained two-constraint mean-variance optimisation (short selling
/// allowed), closed form: with A = 1' S^-1 1, B = 1' S^-1 mu, C = mu' S^-1 mu,
/// D = AC - B^2,
///   w(m) = [(C - B m) S^-1 1 + (A m - B) S^-1 mu] / D,
///   var(m) = (A m^2 - 2 B m + C) / D,  GMV: w = S^-1 1 / A, var = 1 / A.
/// Solves use an LDLT factorisation; the explicit inverse is never formed.
/// Refuses ill-conditioned covariances (min eig <= 1e-10 * max eig) and
/// degenerate expected returns (mu proportional to ones => D = 0) with
/// NumericalError.
Frontier min_variance_frontier(const ScaleCovariance& cov,
                               const Eigen::VectorXd& mu,
                               std::span<const double> targets);

/// Per-scale frontiers on one window of a panel: correlation matrices are
/// estimated per scale (raw + 1..levels) on the window, while expected returns
/// and risks stay fixed across scales (full-sample means and standard
/// deviations unless mu is supplied), so frontier differences isolate the
/// correlation structure. Empty targets select an evenly spaced grid over
/// [min(mu), max(mu)].
std::map<int, Frontier> frontier_by_scale(const ReturnsPanel& panel,
                                          Eigen::Index window_start,
                                          Eigen::Index window_length,
                                          const WaveletFilter& filter,
                                          int levels,
                                          const Eigen::VectorXd& mu = {},
                                          std::span<const double> targets = {});

/// Evenly spaced target grid over [lo, hi].
std::vector<double> target_grid(double lo, double hi, int count);

}  // namespace wavecorr
