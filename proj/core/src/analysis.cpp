#include "wavecorr/analysis.hpp"

#include <cmath>

#include "wavecorr/wavestats.hpp"

namespace wavecorr {

Eigen::VectorXd index_returns(const ReturnsPanel& panel,
                              const Eigen::VectorXd& weights) {
  panel.validate();
  const Eigen::Index n = panel.n_assets();
  if (weights.size() == 0) {
    return panel.returns.colwise().mean().transpose();
  }
  if (weights.size() != n) {
    throw ConfigError("index weights have length " +
                      std::to_string(weights.size()) + ", panel has " +
                      std::to_string(n) + " assets");
  }
  const double total = weights.sum();
  if (std::abs(total - 1.0) > 1e-10) {
    throw ConfigError("index weights sum to " + std::to_string(total) +
                      ", expected 1");
  }
  return panel.returns.transpose() * weights;
}

Eigen::VectorXd window_aggregate(const Eigen::VectorXd& series,
                                 std::span<const Eigen::Index> window_starts,
                                 Eigen::Index window_length, ReturnKind kind) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(window_starts.size()));
  for (std::size_t w = 0; w < window_starts.size(); ++w) {
    const Eigen::Index start = window_starts[w];
    if (start < 0 || start + window_length > series.size()) {
      throw ConfigError("window [" + std::to_string(start) + ", " +
                        std::to_string(start + window_length) +
                        ") outside series of length " +
                        std::to_string(series.size()));
    }
    const auto segment = series.segment(start, window_length);
    if (kind == ReturnKind::Log) {
      out[static_cast<Eigen::Index>(w)] = segment.sum();
    } else {
      out[static_cast<Eigen::Index>(w)] =
          (segment.array() + 1.0).prod() - 1.0;
    }
  }
  return out;
}

PartitionReport partition_by_sdu(const SduSeries& sdu,
                                 const Eigen::VectorXd& window_returns,
                                 double threshold_high, double threshold_low) {
  if (sdu.values.size() != window_returns.size()) {
    throw ConfigError("SDU series (" + std::to_string(sdu.values.size()) +
                      ") and window returns (" +
                      std::to_string(window_returns.size()) +
                      ") are not aligned");
  }
  if (!(threshold_low < threshold_high)) {
    throw ConfigError("partition thresholds must satisfy low < high");
  }
  PartitionReport report;
  report.scale = sdu.scale;
  report.eigen_index = sdu.eigen_index;
  report.threshold_high = threshold_high;
  report.threshold_low = threshold_low;

  auto accumulate = [&](PartitionSide& side, Eigen::Index w) {
    side.windows.push_back(w);
    side.total_return += window_returns[w];
  };
  for (Eigen::Index w = 0; w < sdu.values.size(); ++w) {
    const double v = sdu.values[w];
    if (std::isnan(v)) continue;
    if (v > threshold_high) accumulate(report.above, w);
    else if (v < threshold_low) accumulate(report.below, w);
  }
  if (!report.above.windows.empty()) {
    report.above.mean_return =
        report.above.total_return / static_cast<double>(report.above.count());
  }
  if (!report.below.windows.empty()) {
    report.below.mean_return =
        report.below.total_return / static_cast<double>(report.below.count());
  }
  return report;
}

OneFactorCheck one_factor_check(const Eigen::MatrixXd& correlation) {
  const Eigen::Index n = correlation.rows();
  OneFactorCheck check;
  check.lambda_max_predicted =
      1.0 + static_cast<double>(n - 1) * mean_offdiagonal(correlation);
  check.lambda_max_actual = spectrum(correlation).lambda_max();
  check.gap = check.lambda_max_actual - check.lambda_max_predicted;
  return check;
}

}  // namespace wavecorr
