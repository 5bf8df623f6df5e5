#include "wavecorr/wavestats.hpp"

#include <cmath>

namespace wavecorr {

namespace {

std::string row_name(std::span<const std::string> asset_ids, Eigen::Index i) {
  if (i >= 0 && static_cast<std::size_t>(i) < asset_ids.size()) {
    return "asset '" + asset_ids[static_cast<std::size_t>(i)] + "'";
  }
  return "row " + std::to_string(i);
}

}  // namespace

Eigen::MatrixXd normalize_window(const Eigen::MatrixXd& returns,
                                 std::span<const std::string> asset_ids) {
  const Eigen::Index n = returns.rows();
  const Eigen::Index t_len = returns.cols();
  if (t_len < 2) {
    throw DataError("normalize_window needs at least 2 observations, got " +
                    std::to_string(t_len));
  }
  Eigen::MatrixXd out(n, t_len);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = returns.row(i).mean();
    const double var = (returns.row(i).array() - mean).square().sum() /
                       static_cast<double>(t_len);
    if (!(var > 0.0)) {
      throw DataError("zero variance in window for " + row_name(asset_ids, i));
    }
    out.row(i) = (returns.row(i).array() - mean) / std::sqrt(var);
  }
  return out;
}

RawCorrelationMatrix raw_correlation(const Eigen::MatrixXd& returns,
                                     std::span<const std::string> asset_ids) {
  if (returns.rows() < 2) {
    throw DataError("correlation needs at least 2 assets, got " +
                    std::to_string(returns.rows()));
  }
  Eigen::MatrixXd normalized = normalize_window(returns, asset_ids);
  const double t_len = static_cast<double>(returns.cols());
  Eigen::MatrixXd c = (normalized * normalized.transpose()) / t_len;
  c = ((c + c.transpose()) * 0.5).eval();
  c.diagonal().setOnes();
  return RawCorrelationMatrix{std::move(c), returns.cols()};
}

WaveletCovariance wavelet_covariance(const Eigen::VectorXd& dx,
                                     const Eigen::VectorXd& dy,
                                     Eigen::Index boundary_width) {
  const Eigen::Index t_len = dx.size();
  if (dy.size() != t_len) {
    throw ConfigError("wavelet_covariance: crystal lengths differ (" +
                      std::to_string(t_len) + " vs " + std::to_string(dy.size()) +
                      ")");
  }
  const Eigen::Index m_j = t_len - boundary_width + 1;
  if (m_j < 1) {
    throw ConfigError("wavelet_covariance: no boundary-free coefficients (T = " +
                      std::to_string(t_len) + ", L_j = " +
                      std::to_string(boundary_width) + ")");
  }
  // Sum over t = L_j - 1 .. T - 1, the boundary-free coefficients.
  const double nu = dx.tail(m_j).dot(dy.tail(m_j)) / static_cast<double>(m_j);
  return WaveletCovariance{nu, m_j};
}

ScaleCorrelationSet wavelet_correlation_matrix(
    std::span<const WaveletDecomposition> decompositions, int scale,
    std::span<const std::string> asset_ids) {
  const Eigen::Index n = static_cast<Eigen::Index>(decompositions.size());
  if (n < 2) {
    throw ConfigError("wavelet correlation needs at least 2 decompositions");
  }
  const auto& first = decompositions[0];
  if (scale < 1 || scale > first.levels) {
    throw ConfigError("scale " + std::to_string(scale) +
                      " outside decomposition levels 1.." +
                      std::to_string(first.levels));
  }
  for (const auto& dec : decompositions) {
    if (dec.length() != first.length() || dec.levels < scale ||
        dec.filter_name != first.filter_name) {
      throw ConfigError("decompositions disagree in length, levels, or filter");
    }
  }

  const std::size_t level_idx = static_cast<std::size_t>(scale - 1);
  const Eigen::Index l_j = first.boundary_width[level_idx];

  ScaleCorrelationSet set;
  set.scale = scale;
  set.tau = std::pow(2.0, scale - 1);
  set.covariance.resize(n, n);
  set.correlation.resize(n, n);

  Eigen::VectorXd variances(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto cov = wavelet_covariance(decompositions[static_cast<std::size_t>(i)]
                                      .details[level_idx],
                                  decompositions[static_cast<std::size_t>(i)]
                                      .details[level_idx],
                                  l_j);
    set.m_j = cov.m_j;
    variances[i] = cov.nu;
    if (!(cov.nu > 0.0)) {
      throw DataError("zero wavelet variance at scale " + std::to_string(scale) +
                      " for " + row_name(asset_ids, i));
    }
    set.covariance(i, i) = cov.nu;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      auto cov = wavelet_covariance(decompositions[static_cast<std::size_t>(i)]
                                        .details[level_idx],
                                    decompositions[static_cast<std::size_t>(k)]
                                        .details[level_idx],
                                    l_j);
      set.covariance(i, k) = cov.nu;
      set.covariance(k, i) = cov.nu;
      double rho = cov.nu / std::sqrt(variances[i] * variances[k]);
      if (rho > 1.0) {
        rho = 1.0;
        ++set.clipped;
      } else if (rho < -1.0) {
        rho = -1.0;
        ++set.clipped;
      }
      set.correlation(i, k) = rho;
      set.correlation(k, i) = rho;
    }
    set.correlation(i, i) = 1.0;
  }
  return set;
}

double mean_offdiagonal(const Eigen::MatrixXd& matrix) {
  const Eigen::Index n = matrix.rows();
  if (n < 2) {
    throw ConfigError("mean_offdiagonal needs a matrix of order >= 2");
  }
  const double sum = matrix.sum() - matrix.trace();
  return sum / static_cast<double>(n * (n - 1));
}

}  // namespace wavecorr
