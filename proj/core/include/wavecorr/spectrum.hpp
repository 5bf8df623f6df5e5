#pragma once

#include <Eigen/Dense>
#include <string>

#include "wavecorr/errors.hpp"

namespace wavecorr {

/// Scale identifier used throughout: 0 means the raw (unfiltered) series,
/// j >= 1 the level-j wavelet scale.
inline constexpr int kRawScale = 0;

std::string scale_label(int scale);  // "raw", "1", "2", ...

/// Eigen-decomposition of one correlation (or covariance) matrix.
struct EigenRecord {
  Eigen::Index window_index = 0;
  int scale = kRawScale;
  Eigen::VectorXd eigenvalues;   // ascending: lambda_1 <= ... <= lambda_N
  Eigen::MatrixXd eigenvectors;  // column i pairs with eigenvalues[i]; empty
                                 // unless vectors were requested

  double lambda_max() const { return eigenvalues[eigenvalues.size() - 1]; }
  /// k-th largest eigenvalue, 1-based (1 = largest).
  double lambda_from_top(int k) const {
    return eigenvalues[eigenvalues.size() - k];
  }
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations (at most 100
/// sweeps, off-diagonal norm threshold 1e-12 relative to the matrix norm).
/// Eigenvalues ascend; eigenvector signs are fixed so each column's
/// largest-magnitude component is positive. Throws NumericalError when the
/// input is not symmetric within 1e-10 or the sweep cap is exceeded.
EigenRecord spectrum(const Eigen::MatrixXd& matrix, bool want_vectors = false);

/// Eigenvalue series rescaled to standard-deviation units over a reference
/// period (Eq: subtract the reference mean, divide by the reference sd).
struct SduSeries {
  Eigen::VectorXd values;
  double reference_mean = 0.0;
  double reference_sd = 0.0;
  int eigen_index = 1;  // 1-based from the top (1 = largest eigenvalue)
  int scale = kRawScale;
};

/// Normalises a series to SDU. The reference period is [ref_begin,
/// ref_begin + ref_length); ref_length < 0 selects the whole series (the
/// default reference). Mean and sd (population) are computed over the
/// reference only. Throws ConfigError on an invalid range, DataError when the
/// reference has zero variance.
SduSeries to_sdu(const Eigen::VectorXd& series, Eigen::Index ref_begin = 0,
                 Eigen::Index ref_length = -1, int eigen_index = 1,
                 int scale = kRawScale);

}  // namespace wavecorr
