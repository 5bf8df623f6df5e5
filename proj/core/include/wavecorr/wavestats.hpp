#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "wavecorr/modwt.hpp"

namespace wavecorr {

/// Equal-time correlation matrix of an (unfiltered) return window.
struct RawCorrelationMatrix {
  Eigen::MatrixXd correlation;  // N x N, symmetric, unit diagonal
  Eigen::Index window_length = 0;
};

/// Per-scale wavelet covariance/correlation matrices built from level-j detail
/// crystals with boundary coefficients removed.
struct ScaleCorrelationSet {
  int scale = 0;
  double tau = 0.0;             // unitless scale 2^(j-1)
  Eigen::MatrixXd correlation;  // N x N, clipped to [-1, 1], unit diagonal
  Eigen::MatrixXd covariance;   // N x N wavelet covariances
  Eigen::Index m_j = 0;         // effective sample count T - L_j + 1
  int clipped = 0;              // entries nudged back into [-1, 1]
};

/// Rescales each row to mean 0 and standard deviation 1 (population, 1/T).
/// Throws DataError naming the offending row (by asset id when given) if a row
/// has zero variance.
Eigen::MatrixXd normalize_window(const Eigen::MatrixXd& returns,
                                 std::span<const std::string> asset_ids = {});

/// Equal-time correlation C = (1/T) R R^t of the normalised window.
RawCorrelationMatrix raw_correlation(const Eigen::MatrixXd& returns,
                                     std::span<const std::string> asset_ids = {});

struct WaveletCovariance {
  double nu = 0.0;
  Eigen::Index m_j = 0;
};

/// Unbiased wavelet covariance of two same-length crystals:
/// nu = (1/M_j) * sum_{t = L_j - 1}^{T-1} dx_t * dy_t, M_j = T - L_j + 1.
/// boundary_width is the level's equivalent filter width L_j. Throws
/// ConfigError when M_j < 1.
WaveletCovariance wavelet_covariance(const Eigen::VectorXd& dx,
                                     const Eigen::VectorXd& dy,
                                     Eigen::Index boundary_width);

/// Pairwise wavelet correlation matrix at one scale,
/// rho_fg = nu_fg / (nu_f * nu_g), from the level-j detail crystals of N
/// decompositions sharing length, levels >= scale, and filter. Entries that
/// exceed [-1, 1] by floating-point noise are clipped and counted. Throws
/// DataError (asset, scale) on zero wavelet variance.
ScaleCorrelationSet wavelet_correlation_matrix(
    std::span<const WaveletDecomposition> decompositions, int scale,
    std::span<const std::string> asset_ids = {});

/// Mean of the off-diagonal entries (the "average correlation" of a window).
double mean_offdiagonal(const Eigen::MatrixXd& matrix);

}  // namespace wavecorr
