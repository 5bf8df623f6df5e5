#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wavecorr/panel.hpp"
#include "wavecorr/spectrum.hpp"

namespace wavecorr {

/// Per-observation index return: weighted average of the panel's asset
/// returns. Empty weights mean equal weighting. Weights must have length N
/// and sum to 1 (within 1e-10); throws ConfigError otherwise.
Eigen::VectorXd index_returns(const ReturnsPanel& panel,
                              const Eigen::VectorXd& weights = {});

/// Aggregates a per-observation return series over each window: sum for log
/// returns, compounded product minus 1 for simple returns.
Eigen::VectorXd window_aggregate(const Eigen::VectorXd& series,
                                 std::span<const Eigen::Index> window_starts,
                                 Eigen::Index window_length, ReturnKind kind);

/// One side of an SDU partition (windows beyond a threshold).
struct PartitionSide {
  std::vector<Eigen::Index> windows;
  /// Mean/total of the per-window aggregated index returns over the member
  /// windows; unset when the side is empty.
  std::optional<double> mean_return;
  double total_return = 0.0;

  std::size_t count() const { return windows.size(); }
};

/// Index-return behaviour when a normalised eigenvalue exceeds +1 SDU (above)
/// or falls below -1 SDU (below). The two sets are disjoint by construction.
struct PartitionReport {
  int scale = kRawScale;
  int eigen_index = 1;  // 1-based from the top
  double threshold_high = 1.0;
  double threshold_low = -1.0;
  PartitionSide above;
  PartitionSide below;
};

/// Partitions windows by the SDU value of an eigenvalue series and aggregates
/// index returns over each side. Windows with NaN SDU values (skipped windows)
/// belong to neither side. Series must be aligned by window index; throws
/// ConfigError on a length mismatch.
PartitionReport partition_by_sdu(const SduSeries& sdu,
                                 const Eigen::VectorXd& window_returns,
                                 double threshold_high = 1.0,
                                 double threshold_low = -1.0);

/// One-factor consistency check: an exact equicorrelation matrix has
/// lambda_max = 1 + (N-1) * rho_mean; the gap to the actual largest eigenvalue
/// measures departure from the one-factor structure.
struct OneFactorCheck {
  double lambda_max_predicted = 0.0;
  double lambda_max_actual = 0.0;
  double gap = 0.0;  // actual - predicted
};

OneFactorCheck one_factor_check(const Eigen::MatrixXd& correlation);

}  // namespace wavecorr
