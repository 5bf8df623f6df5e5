#pragma once

#include <map>
#include <span>
#include <string>

#include "wavecorr/analysis.hpp"
#include "wavecorr/dynamics.hpp"
#include "wavecorr/modwt.hpp"
#include "wavecorr/portfolio.hpp"

namespace wavecorr {

/// Crystal dump for one asset: columns t, d1..dJ, sJ.
void write_crystals_csv(const std::string& path,
                        const WaveletDecomposition& decomposition);

/// Square matrix with asset ids as row/column headers.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      std::span<const std::string> asset_ids);

/// Long-format dynamics export: window_start, scale, metric, value. Metrics
/// are avg_corr and lambda_1..lambda_N (ascending; lambda_N is the largest),
/// trimmed to the top_k largest when top_k > 0.
void write_dynamics_long_csv(const std::string& path,
                             const DynamicsResult& result, int top_k = 0);

/// Wide-format eigenvalue series for one scale: window_start, lambda_1.. (or
/// the top_k largest), plus avg_corr.
void write_eigenvalue_series_csv(const std::string& path,
                                 const DynamicsResult& result, int scale,
                                 int top_k = 0);

/// Full-sample summary rows: scale, tau, avg_correlation, lambda1..lambda3.
void write_epps_csv(const std::string& path, std::span<const EppsRow> rows);

/// Partition table: one row per report with counts and mean/total aggregated
/// index returns (in percent) for the >high and <low sides. Empty sides leave
/// the return cells blank.
void write_partition_csv(const std::string& path,
                         std::span<const PartitionReport> reports);

/// Frontier export: scale, point ("gmv" or target index), target_return,
/// stdev, w_1..w_N.
void write_frontier_csv(const std::string& path,
                        const std::map<int, Frontier>& frontiers,
                        std::span<const std::string> asset_ids);

/// Returns panel in the panel CSV layout (timestamp column + one column per
/// asset), re-loadable with load_returns.
void write_returns_csv(const std::string& path, const ReturnsPanel& panel);

}  // namespace wavecorr
